#pragma once

#include <vector>

#include "qth/polynomial.hpp"

namespace qth {

template <class K>
using PolyList = std::vector<Polynomial<K>>;

template <class K>
struct Division {
  PolyList<K> quotients;  // one per divisor
  Polynomial<K> remainder;
};

/// Full division: always reduces the largest reducible monomial, using the
/// first divisor (in list order) whose leading monomial divides it.
/// f = sum quotients[i] * G[i] + remainder.
template <class K>
Division<K> divide(const Polynomial<K>& f, const PolyList<K>& G);

template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const PolyList<K>& G);

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t skipped_coprime = 0;
  std::size_t skipped_chain = 0;
};

/// Gröbner basis of <gens> (not necessarily reduced). Normal pair selection
/// with the coprime and chain criteria.
template <class K>
PolyList<K> buchberger(const PolyList<K>& gens, BuchbergerStats* stats = nullptr);

/// Minimal reduced basis of the ideal generated by a Gröbner basis G:
/// monic, interreduced, sorted descending by leading monomial.
template <class K>
PolyList<K> minimal_reduced_gb(const PolyList<K>& G);

/// buchberger followed by minimal_reduced_gb.
template <class K>
PolyList<K> reduced_gb(const PolyList<K>& gens);

template <class K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g);

/// True iff every S-polynomial of G reduces to zero by G.
template <class K>
bool is_groebner_basis(const PolyList<K>& G);

/// Gröbner basis check plus: no zero element, all monic, and no monomial of
/// any element is divisible by the leading monomial of another.
template <class K>
bool is_minimal_reduced_gb(const PolyList<K>& G);

/// Requires G to be a Gröbner basis.
template <class K>
bool ideal_contains(const PolyList<K>& G, const Polynomial<K>& f) {
  return normal_form(f, G).is_zero();
}

/// Monic gcd of two polynomials over a field. Univariate inputs use Euclid;
/// otherwise gcd = a*b / lcm with the lcm found by elimination.
template <class K>
Polynomial<K> poly_gcd(const Polynomial<K>& a, const Polynomial<K>& b);

/// a / b when b divides a; throws ArithmeticError otherwise.
template <class K>
Polynomial<K> exact_divide(const Polynomial<K>& a, const Polynomial<K>& b);

/// Element of a free module R^K. Position-up: the highest nonzero component
/// carries the leading term.
template <class K>
struct ModuleVector {
  std::vector<Polynomial<K>> comps;

  std::size_t size() const { return comps.size(); }
  bool is_zero() const;
  /// Index of the leading component; requires a nonzero vector.
  std::size_t lead_pos() const;
  const Term<K>& lt() const { return comps[lead_pos()].lt(); }
  bool operator==(const ModuleVector&) const = default;
};

/// Compares (position, monomial) pairs: higher position first, then the ring order.
std::strong_ordering compare_module_terms(const MonomialOrder& order, std::size_t pa, const Monomial& a,
                                          std::size_t pb, const Monomial& b);

/// Reduced Gröbner basis of the submodule spanned by `columns`, under
/// position-up over the ring's order, sorted ascending.
template <class K>
std::vector<ModuleVector<K>> module_gb(const std::vector<ModuleVector<K>>& columns);

template <class K>
ModuleVector<K> module_normal_form(const ModuleVector<K>& v, const std::vector<ModuleVector<K>>& G);

}  // namespace qth
