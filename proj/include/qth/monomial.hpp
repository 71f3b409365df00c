#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "qth/error.hpp"

namespace qth {

/// Exponent vector over a ring's variables: dependent block first, then the
/// independent block x_n, ..., x_1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  explicit Monomial(std::vector<std::int32_t> exps) : exp_(std::move(exps)) {}
  Monomial(std::initializer_list<std::int32_t> exps) : exp_(exps) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::int32_t power = 1) {
    Monomial m(nvars);
    m.exp_[index] = power;
    return m;
  }

  std::size_t size() const { return exp_.size(); }
  std::int32_t operator[](std::size_t i) const { return exp_[i]; }
  std::int32_t& operator[](std::size_t i) { return exp_[i]; }
  const std::vector<std::int32_t>& exponents() const { return exp_; }

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (auto e : exp_) d += e;
    return d;
  }
  /// Degree over the variables [begin, end).
  std::int64_t degree(std::size_t begin, std::size_t end) const {
    std::int64_t d = 0;
    for (std::size_t i = begin; i < end; ++i) d += exp_[i];
    return d;
  }
  bool is_one() const {
    for (auto e : exp_) {
      if (e != 0) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    check(a, b);
    Monomial r(a);
    for (std::size_t i = 0; i < r.exp_.size(); ++i) r.exp_[i] += b.exp_[i];
    return r;
  }
  /// True when this monomial divides b.
  bool divides(const Monomial& b) const {
    check(*this, b);
    for (std::size_t i = 0; i < exp_.size(); ++i) {
      if (exp_[i] > b.exp_[i]) return false;
    }
    return true;
  }
  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    check(a, b);
    Monomial r(a);
    for (std::size_t i = 0; i < r.exp_.size(); ++i) {
      r.exp_[i] -= b.exp_[i];
      if (r.exp_[i] < 0) throw DomainError("monomial quotient with negative exponent");
    }
    return r;
  }
  Monomial pow(std::int32_t k) const {
    Monomial r(*this);
    for (auto& e : r.exp_) e *= k;
    return r;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    check(a, b);
    Monomial r(a);
    for (std::size_t i = 0; i < r.exp_.size(); ++i) r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    return r;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.exp_.size(); ++i) {
      if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
    }
    return true;
  }

  bool operator==(const Monomial&) const = default;

 private:
  static void check(const Monomial& a, const Monomial& b) {
    if (a.exp_.size() != b.exp_.size()) throw DimensionError("monomials over different variable counts");
  }

  std::vector<std::int32_t> exp_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto e : m.exponents()) h ^= std::hash<std::int32_t>{}(e) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace qth
