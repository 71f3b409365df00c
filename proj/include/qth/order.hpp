#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qth/monomial.hpp"

namespace qth {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using WeightVector = std::vector<std::int64_t>;

/// Lexicographic comparison of weight vectors of equal length.
std::strong_ordering compare_weights(const WeightVector& a, const WeightVector& b);
WeightVector operator+(const WeightVector& a, const WeightVector& b);
WeightVector operator-(const WeightVector& a, const WeightVector& b);
std::string to_string(const WeightVector& w);

/// Rank of an integer matrix, computed exactly.
std::size_t integer_rank(const IntMatrix& rows);

/// Non-negative integer matrix W, one column per variable. wt(x^a) = W a.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(IntMatrix rows);

  bool empty() const { return rows_.empty(); }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const IntMatrix& matrix() const { return rows_; }

  WeightVector weight(const Monomial& m) const;
  WeightVector column(std::size_t var) const;

  bool operator==(const WeightMatrix&) const = default;

 private:
  IntMatrix rows_;
};

enum class OrderKind { Grevlex, WeightOverGrevlex, GrevlexOverWeight, PositionUpBlock };

/// Monomial order given by a nonsingular integer matrix: a < b iff M a <_lex M b.
///
/// For PositionUpBlock the matrix is the block order (dependent block grevlex
/// dominating independent block grevlex); the position part lives in the module
/// code that consumes it.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  /// Throws ConstructionError unless `rows` is square of full rank.
  MonomialOrder(OrderKind kind, IntMatrix rows, std::size_t ndep);

  OrderKind kind() const { return kind_; }
  const IntMatrix& matrix() const { return rows_; }
  std::size_t nvars() const { return rows_.size(); }
  std::size_t ndep() const { return ndep_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (a.size() != nvars() || b.size() != nvars()) {
      throw DimensionError("monomial length does not match the order");
    }
    for (const auto& row : rows_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * (a[i] - b[i]);
      if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  bool operator==(const MonomialOrder&) const = default;

 private:
  OrderKind kind_ = OrderKind::Grevlex;
  IntMatrix rows_;
  std::size_t ndep_ = 0;
};

MonomialOrder grevlex_order(std::size_t nvars);

/// Builds the order matrix of the given kind over `nvars` variables of which
/// the first `ndep` are dependent. `weights` is ignored for Grevlex and
/// PositionUpBlock.
MonomialOrder build_order(OrderKind kind, const WeightMatrix& weights, std::size_t nvars, std::size_t ndep);

}  // namespace qth
