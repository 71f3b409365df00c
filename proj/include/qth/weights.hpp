#pragma once

#include <string>
#include <vector>

#include "qth/polynomial.hpp"

namespace qth {

/// Lexicographically largest weight vector among the monomials of f.
template <class K>
WeightVector weight_of(const Polynomial<K>& f, const WeightMatrix& w) {
  if (f.is_zero()) throw DomainError("weight of the zero polynomial is undefined");
  WeightVector best = w.weight(f.terms().front().mono);
  for (const auto& t : f.terms()) {
    WeightVector v = w.weight(t.mono);
    if (compare_weights(v, best) > 0) best = std::move(v);
  }
  return best;
}

/// Monomials of f attaining the maximal weight, in f's term order.
template <class K>
std::vector<Monomial> max_weight_monomials(const Polynomial<K>& f, const WeightMatrix& w) {
  const WeightVector top = weight_of(f, w);
  std::vector<Monomial> out;
  for (const auto& t : f.terms()) {
    if (compare_weights(w.weight(t.mono), top) == 0) out.push_back(t.mono);
  }
  return out;
}

struct WeightCheck {
  bool accepted = false;
  std::string reason;                 // empty when accepted
  std::vector<Monomial> top_monomials;  // the maximal-weight monomials of f
};

/// Accepts iff the maximal-weight monomials of f are exactly {dep^d, m} with
/// m free of dependent variables, where dep = variable `dep_index` and d is
/// the degree of f in it. Throws InputError unless f is monic in dep.
template <class K>
WeightCheck validate_weight_function(const Polynomial<K>& f, const WeightMatrix& w, std::size_t dep_index) {
  const auto& ring = *f.ring();
  if (f.is_zero()) throw InputError("relation is zero");
  if (dep_index >= ring.nvars()) throw DimensionError("dependent variable index out of range");
  if (w.cols() != ring.nvars()) throw DimensionError("weight matrix does not match the variable count");
  const std::int32_t d = f.degree_in(dep_index);
  if (d <= 0) throw InputError("relation does not involve " + ring.names()[dep_index]);
  const Monomial pure = Monomial::variable(ring.nvars(), dep_index, d);
  for (const auto& t : f.terms()) {
    if (t.mono[dep_index] == d && !(t.mono == pure && t.coef.is_one())) {
      throw InputError("relation is not monic in " + ring.names()[dep_index]);
    }
  }
  WeightCheck out;
  out.top_monomials = max_weight_monomials(f, w);
  auto is_base = [&](const Monomial& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != dep_index && i < ring.ndep() && m[i] != 0) return false;
    }
    return m[dep_index] == 0;
  };
  auto show = [&](const std::vector<Monomial>& ms) {
    std::string s;
    for (const auto& m : ms) s += (s.empty() ? "" : ", ") + Polynomial<K>::format_monomial(m, ring.names());
    return s;
  };
  if (out.top_monomials.size() != 2) {
    out.reason = "expected exactly two monomials of maximal weight, found {" + show(out.top_monomials) + "}";
    return out;
  }
  const Monomial& a = out.top_monomials[0];
  const Monomial& b = out.top_monomials[1];
  const bool ok = (a == pure && is_base(b)) || (b == pure && is_base(a));
  if (!ok) {
    out.reason = "maximal-weight monomials {" + show(out.top_monomials) + "} are not " +
                 Polynomial<K>::format_monomial(pure, ring.names()) + " and a monomial in independent variables";
    return out;
  }
  out.accepted = true;
  return out;
}

}  // namespace qth
