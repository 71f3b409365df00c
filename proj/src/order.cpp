#include "qth/order.hpp"

#include <gmpxx.h>

#include <sstream>

namespace qth {

std::strong_ordering compare_weights(const WeightVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw DimensionError("weight vectors of different length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

WeightVector operator+(const WeightVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw DimensionError("weight vectors of different length");
  WeightVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

WeightVector operator-(const WeightVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw DimensionError("weight vectors of different length");
  WeightVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

std::string to_string(const WeightVector& w) {
  std::ostringstream os;
  if (w.size() != 1) os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  if (w.size() != 1) os << ')';
  return os.str();
}

namespace {

// Incremental row echelon basis over Q, used to pick independent rows.
class RowBasis {
 public:
  explicit RowBasis(std::size_t ncols) : ncols_(ncols) {}

  // Adds the row if it is independent of the rows kept so far.
  bool add(const std::vector<std::int64_t>& row) {
    std::vector<mpq_class> v(row.begin(), row.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const auto p = pivots_[k];
      if (sgn(v[p]) == 0) continue;
      mpq_class f = v[p] / basis_[k][p];
      for (std::size_t j = 0; j < ncols_; ++j) v[j] -= f * basis_[k][j];
    }
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (sgn(v[j]) != 0) {
        basis_.push_back(std::move(v));
        pivots_.push_back(j);
        return true;
      }
    }
    return false;
  }
  std::size_t rank() const { return basis_.size(); }

 private:
  std::size_t ncols_;
  std::vector<std::vector<mpq_class>> basis_;
  std::vector<std::size_t> pivots_;
};

std::vector<std::int64_t> unit_row(std::size_t n, std::size_t i, std::int64_t v) {
  std::vector<std::int64_t> r(n, 0);
  r[i] = v;
  return r;
}

std::vector<std::int64_t> ones_row(std::size_t n, std::size_t begin, std::size_t end) {
  std::vector<std::int64_t> r(n, 0);
  for (std::size_t i = begin; i < end; ++i) r[i] = 1;
  return r;
}

// Grevlex rows restricted to variables [begin, end): total degree, then the
// negated unit vectors from the last variable backwards.
IntMatrix grevlex_rows(std::size_t n, std::size_t begin, std::size_t end) {
  IntMatrix rows;
  if (begin >= end) return rows;
  rows.push_back(ones_row(n, begin, end));
  for (std::size_t i = end - 1; i > begin; --i) rows.push_back(unit_row(n, i, -1));
  return rows;
}

IntMatrix select_independent(const IntMatrix& candidates, std::size_t n) {
  RowBasis basis(n);
  IntMatrix rows;
  for (const auto& r : candidates) {
    if (rows.size() == n) break;
    if (basis.add(r)) rows.push_back(r);
  }
  if (rows.size() != n) throw ConstructionError("cannot complete the order matrix to full rank");
  return rows;
}

}  // namespace

std::size_t integer_rank(const IntMatrix& rows) {
  if (rows.empty()) return 0;
  RowBasis basis(rows.front().size());
  for (const auto& r : rows) basis.add(r);
  return basis.rank();
}

WeightMatrix::WeightMatrix(IntMatrix rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.front().size()) throw DimensionError("weight matrix rows of unequal length");
    for (auto v : r) {
      if (v < 0) throw InputError("weight matrix entries must be non-negative");
    }
  }
}

WeightVector WeightMatrix::weight(const Monomial& m) const {
  if (m.size() != cols()) throw DimensionError("monomial length does not match the weight matrix");
  WeightVector w(rows_.size(), 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t i = 0; i < m.size(); ++i) w[r] += rows_[r][i] * m[i];
  }
  return w;
}

WeightVector WeightMatrix::column(std::size_t var) const {
  WeightVector w;
  for (const auto& r : rows_) w.push_back(r.at(var));
  return w;
}

MonomialOrder::MonomialOrder(OrderKind kind, IntMatrix rows, std::size_t ndep)
    : kind_(kind), rows_(std::move(rows)), ndep_(ndep) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw ConstructionError("order matrix must be square");
  }
  if (integer_rank(rows_) != rows_.size()) throw ConstructionError("order matrix is singular");
}

MonomialOrder grevlex_order(std::size_t nvars) {
  return MonomialOrder(OrderKind::Grevlex, grevlex_rows(nvars, 0, nvars), 0);
}

MonomialOrder build_order(OrderKind kind, const WeightMatrix& weights, std::size_t nvars, std::size_t ndep) {
  if (ndep > nvars) throw DimensionError("more dependent variables than variables");
  const bool needs_weights = kind == OrderKind::WeightOverGrevlex || kind == OrderKind::GrevlexOverWeight;
  if (needs_weights && weights.cols() != nvars) {
    throw DimensionError("weight matrix has " + std::to_string(weights.cols()) + " columns, expected " +
                         std::to_string(nvars));
  }
  IntMatrix candidates;
  auto append = [&candidates](const IntMatrix& m) { candidates.insert(candidates.end(), m.begin(), m.end()); };
  switch (kind) {
    case OrderKind::Grevlex:
      return grevlex_order(nvars);
    case OrderKind::WeightOverGrevlex: {
      // The weight rows replace the top rows of the grevlex matrix; the
      // replaced rows are only used if the result would be singular.
      const IntMatrix g = grevlex_rows(nvars, 0, nvars);
      const std::size_t r = std::min(weights.rows(), g.size());
      append(weights.matrix());
      append(IntMatrix(g.begin() + static_cast<std::ptrdiff_t>(r), g.end()));
      append(IntMatrix(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(r)));
      if (nvars > 0) candidates.push_back(unit_row(nvars, 0, -1));
      break;
    }
    case OrderKind::GrevlexOverWeight:
      append(grevlex_rows(nvars, 0, ndep));
      append(weights.matrix());
      append(grevlex_rows(nvars, ndep, nvars));
      for (std::size_t i = 0; i < nvars; ++i) candidates.push_back(unit_row(nvars, i, -1));
      break;
    case OrderKind::PositionUpBlock:
      append(grevlex_rows(nvars, 0, ndep));
      append(grevlex_rows(nvars, ndep, nvars));
      break;
  }
  return MonomialOrder(kind, select_independent(candidates, nvars), ndep);
}

}  // namespace qth
