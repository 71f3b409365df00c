#pragma once

#include <string>
#include <vector>

#include "qth/groebner.hpp"

namespace qth {

/// Numerators of a P-module of fractions g/Δ inside Q(S), S = P[y]/<f>, with
/// a single independent variable. `gens` is the canonical interreduced
/// generating set of the numerator module, one generator per power of y,
/// sorted descending by leading monomial. Once the module is ring-closed the
/// generator lying in P is Δ itself (g_0).
template <class K>
struct FractionSet {
  RingPtr<K> ring;
  Polynomial<K> delta;
  PolyList<K> gens;

  /// The generator whose leading monomial lies in P.
  const Polynomial<K>& g0() const;
  /// The generators other than g0, in descending order (g_J, ..., g_1).
  PolyList<K> numerators() const;
  /// wt(g_j) - wt(Δ) for each numerator, in numerators() order.
  std::vector<WeightVector> induced_weights() const;

  bool operator==(const FractionSet& o) const { return delta == o.delta && gens == o.gens; }
};

template <class K>
struct ModuleReduction {
  Polynomial<K> remainder;
  PolyList<K> coefficients;  // elements of P, one per generator
};

/// Reduces h by the P-module spanned by scale*gens[j]: a term is reducible
/// only if it equals x^a * LM(scale*gens[j]) with x^a free of dependent
/// variables. h = sum coefficients[j]*scale*gens[j] + remainder.
template <class K>
ModuleReduction<K> module_reduce(const Polynomial<K>& h, const PolyList<K>& gens, const Polynomial<K>& scale);

/// NormalForm(g^q, I) in characteristic q, via the Frobenius expansion
/// (sum c_i m_i)^q = sum c_i m_i^q.
Polynomial<ModP> frobenius_nf(const Polynomial<ModP>& g, const PolyList<ModP>& I);

/// U_0 = S, the numerator module of (1/Δ)S.
template <class K>
FractionSet<K> initial_fraction_set(const Polynomial<K>& f, const Polynomial<K>& delta);

/// One Qth-power step: the numerators g of U with NF(g^q, f) in Δ^(q-1) U.
FractionSet<ModP> qth_power_step(const FractionSet<ModP>& U, const Polynomial<ModP>& f);

struct ClosureTrace {
  std::size_t iterations = 0;
  std::vector<std::size_t> kernel_dims;  // dim of U_(i+1)/ΔS per step
};

/// Iterates qth_power_step from U_0 until it is stationary.
FractionSet<ModP> qth_closure(const Polynomial<ModP>& f, const Polynomial<ModP>& delta, std::size_t max_iter = 64,
                              ClosureTrace* trace = nullptr);

/// Divides Δ and every generator by the monic gcd of Δ and the P-contents
/// of the generators.
template <class K>
FractionSet<K> minimize_denominator(const FractionSet<K>& U);

/// Monic gcd of the coefficients of g written as a polynomial in the
/// dependent variable over P.
template <class K>
Polynomial<K> p_content(const Polynomial<K>& g);

/// Strict affine presentation P[ybar_J..ybar_1]/<relations> of a ring-closed
/// fraction set, with the image psi(y) of the dependent variable.
template <class K>
struct ClosurePresentation {
  RingPtr<K> ring;                        // ybar_J, ..., ybar_1, then the independent variables
  PolyList<K> relations;                  // minimal reduced Gröbner basis
  Polynomial<K> psi;                      // image of y
  FractionSet<K> source;
  PolyList<K> numerators;                 // numerator of ybar_J, ..., ybar_1
  std::vector<WeightVector> induced;      // weights of ybar_J, ..., ybar_1
  /// Induced weights followed by the weights of the independent variables.
  std::vector<WeightVector> all_weights() const;
};

/// Variable names of the new generators: "ybar" for one, ybarJ..ybar1 otherwise.
std::vector<std::string> ybar_names(std::size_t count, const std::string& base = "ybar");

template <class K>
ClosurePresentation<K> induce_presentation(const FractionSet<K>& U, const Polynomial<K>& f);

/// Coefficients of g in powers of the dependent variable (index 0): entry k
/// is the P-part multiplying y^k.
template <class K>
PolyList<K> dependent_coefficients(const Polynomial<K>& g);

/// Throws DimensionError unless the ring has exactly one dependent and one
/// independent variable, and InputError unless f is monic in y with LM(f) = y^d.
template <class K>
void require_simple_extension(const Polynomial<K>& f);

}  // namespace qth
