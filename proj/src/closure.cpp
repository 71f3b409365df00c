#include "qth/closure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "qth/dense.hpp"
#include "qth/weights.hpp"

namespace qth {

namespace {

template <class K>
struct Descending {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) > 0; }
};

template <class K>
void sort_descending(PolyList<K>& gens) {
  if (gens.empty()) return;
  const auto& order = gens.front().ring()->order();
  std::sort(gens.begin(), gens.end(),
            [&](const Polynomial<K>& a, const Polynomial<K>& b) { return order.compare(a.lm(), b.lm()) > 0; });
}

// x^e as a monomial of the ring, x being the single independent variable.
template <class K>
Monomial x_power(const RingPtr<K>& ring, std::int32_t e) {
  return Monomial::variable(ring->nvars(), 1, e);
}

std::int32_t delta_degree(const Polynomial<ModP>& delta) {
  if (delta.is_zero() || !delta.in_base()) throw InputError("denominator must be a nonzero element of P");
  return delta.degree_in(1);
}

// y^(q k) mod f for k < d, the images of the basis y^k under Frobenius.
struct FrobeniusCache {
  PolyList<ModP> y_powers;

  FrobeniusCache(const Polynomial<ModP>& f, std::uint64_t q) {
    const PolyList<ModP> I{f};
    const std::int32_t d = f.lm()[0];
    const auto& ring = f.ring();
    Polynomial<ModP> yq = Polynomial<ModP>::one(ring);
    Polynomial<ModP> base = Polynomial<ModP>::variable(ring, 0);
    for (std::uint64_t k = q; k > 0; k >>= 1U) {
      if (k & 1U) yq = normal_form(yq * base, I);
      if (k > 1) base = normal_form(base * base, I);
    }
    y_powers.push_back(Polynomial<ModP>::one(ring));
    for (std::int32_t k = 1; k < d; ++k) y_powers.push_back(normal_form(y_powers.back() * yq, I));
  }

  Polynomial<ModP> apply(const Polynomial<ModP>& g, std::uint64_t q) const {
    const auto coeffs = dependent_coefficients(g);
    Polynomial<ModP> out(g.ring());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      std::vector<Term<ModP>> ts;
      for (const auto& t : coeffs[k].terms()) ts.push_back({t.coef, t.mono.pow(static_cast<std::int32_t>(q))});
      out += Polynomial<ModP>::from_terms(g.ring(), std::move(ts)) * y_powers.at(k);
    }
    return out;
  }
};

FractionSet<ModP> power_step(const FractionSet<ModP>& U, const Polynomial<ModP>& f, const FrobeniusCache& cache,
                             std::size_t* kernel_dim) {
  const auto& ring = f.ring();
  const std::uint64_t q = ring->domain().modulus;
  const std::int32_t D = delta_degree(U.delta);
  const std::int32_t d = f.lm()[0];

  // Δ^(q-1) U, one generator per component.
  const Polynomial<ModP> dq = U.delta.pow(static_cast<unsigned>(q - 1));
  PolyList<ModP> target;
  for (const auto& g : U.gens) target.push_back(dq * g);
  const Polynomial<ModP> one = Polynomial<ModP>::one(ring);

  // Columns: x^(q α) φ(g_j) mod Δ^(q-1) U for the basis x^α g_j of U/ΔS.
  struct Column {
    std::size_t gen;
    std::int32_t alpha;
    Polynomial<ModP> image;
  };
  std::vector<Column> columns;
  const Monomial xq = x_power(ring, static_cast<std::int32_t>(q));
  for (std::size_t j = 0; j < U.gens.size(); ++j) {
    const std::int32_t a = U.gens[j].lm()[1];
    if (a > D) throw InconsistencyError("numerator module does not contain Δ S");
    Polynomial<ModP> r = module_reduce(cache.apply(U.gens[j], q), target, one).remainder;
    for (std::int32_t alpha = 0; alpha < D - a; ++alpha) {
      if (alpha > 0) r = module_reduce(r.mul_term(ring->unit(), xq), target, one).remainder;
      columns.push_back({j, alpha, r});
    }
  }

  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  for (const auto& c : columns) {
    for (const auto& t : c.image.terms()) row_of.try_emplace(t.mono, row_of.size());
  }
  DenseMatrix<ModP> A(row_of.size(), columns.size(), ring->zero());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& t : columns[c].image.terms()) A(row_of.at(t.mono), c) = t.coef;
  }
  const auto kernel = A.nullspace();
  if (kernel_dim) *kernel_dim = kernel.size();

  // Kernel elements of U/ΔS, reduced componentwise modulo Δ.
  PolyList<ModP> delta_s;
  for (std::int32_t k = 0; k < d; ++k) delta_s.push_back(U.delta * Polynomial<ModP>::variable(ring, 0, k));
  PolyList<ModP> elements;
  for (const auto& v : kernel) {
    Polynomial<ModP> e(ring);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (v[c].is_zero()) continue;
      e += U.gens[columns[c].gen].mul_term(v[c], x_power(ring, columns[c].alpha));
    }
    e = module_reduce(e, delta_s, one).remainder;
    if (!e.is_zero()) elements.push_back(std::move(e));
  }

  // Echelon form over the monomials y^k x^b (b < D), largest first; the
  // smallest pivot of each component is the new generator.
  std::vector<Monomial> monos;
  for (std::int32_t k = 0; k < d; ++k) {
    for (std::int32_t b = 0; b < D; ++b) monos.push_back(Monomial{k, b});
  }
  std::sort(monos.begin(), monos.end(), Descending<ModP>{&ring->order()});
  std::unordered_map<Monomial, std::size_t, MonomialHash> col_of;
  for (std::size_t i = 0; i < monos.size(); ++i) col_of.emplace(monos[i], i);
  DenseMatrix<ModP> E(elements.size(), monos.size(), ring->zero());
  for (std::size_t r = 0; r < elements.size(); ++r) {
    for (const auto& t : elements[r].terms()) E(r, col_of.at(t.mono)) = t.coef;
  }
  const auto pivots = E.rref();
  std::vector<std::optional<std::size_t>> best(static_cast<std::size_t>(d));
  for (std::size_t r = 0; r < pivots.size(); ++r) best[static_cast<std::size_t>(monos[pivots[r]][0])] = r;

  FractionSet<ModP> next{ring, U.delta, {}};
  for (std::int32_t k = 0; k < d; ++k) {
    const auto& row = best[static_cast<std::size_t>(k)];
    if (!row) {
      next.gens.push_back(delta_s[static_cast<std::size_t>(k)]);
      continue;
    }
    std::vector<Term<ModP>> ts;
    for (std::size_t c = 0; c < monos.size(); ++c) {
      if (!E(*row, c).is_zero()) ts.push_back({E(*row, c), monos[c]});
    }
    next.gens.push_back(Polynomial<ModP>::from_sorted_terms(ring, std::move(ts)));
  }
  sort_descending(next.gens);
  return next;
}

}  // namespace

template <class K>
const Polynomial<K>& FractionSet<K>::g0() const {
  for (const auto& g : gens) {
    if (ring->in_base(g.lm())) return g;
  }
  throw InconsistencyError("fraction set has no generator in P");
}

template <class K>
PolyList<K> FractionSet<K>::numerators() const {
  PolyList<K> out;
  for (const auto& g : gens) {
    if (!ring->in_base(g.lm())) out.push_back(g);
  }
  return out;
}

template <class K>
std::vector<WeightVector> FractionSet<K>::induced_weights() const {
  std::vector<WeightVector> out;
  const WeightVector wd = weight_of(delta, ring->weights());
  for (const auto& g : numerators()) out.push_back(weight_of(g, ring->weights()) - wd);
  return out;
}

template <class K>
ModuleReduction<K> module_reduce(const Polynomial<K>& h, const PolyList<K>& gens, const Polynomial<K>& scale) {
  const auto& ring = h.ring();
  PolyList<K> divisors;
  for (const auto& g : gens) {
    if (g.is_zero()) throw DomainError("zero generator in module reduction");
    divisors.push_back(scale * g);
  }
  std::map<Monomial, K, Descending<K>> work(Descending<K>{&ring->order()});
  for (const auto& t : h.terms()) work.emplace(t.mono, t.coef);
  std::vector<std::vector<Term<K>>> coeffs(gens.size());
  std::vector<Term<K>> rem;
  while (!work.empty()) {
    auto it = work.begin();
    const Monomial m = it->first;
    const K c = it->second;
    std::size_t j = 0;
    for (; j < divisors.size(); ++j) {
      const Monomial& lm = divisors[j].lm();
      if (lm.divides(m) && ring->in_base(m / lm)) break;
    }
    if (j == divisors.size()) {
      rem.push_back({c, m});
      work.erase(it);
      continue;
    }
    const K factor = c / divisors[j].lc();
    const Monomial shift = m / divisors[j].lm();
    coeffs[j].push_back({factor, shift});
    work.erase(it);
    const auto& terms = divisors[j].terms();
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const Monomial mm = terms[i].mono * shift;
      auto [pos, inserted] = work.try_emplace(mm, ring->zero());
      pos->second -= factor * terms[i].coef;
      if (pos->second.is_zero()) work.erase(pos);
    }
  }
  ModuleReduction<K> out{Polynomial<K>::from_sorted_terms(ring, std::move(rem)), {}};
  for (auto& ts : coeffs) out.coefficients.push_back(Polynomial<K>::from_terms(ring, std::move(ts)));
  return out;
}

Polynomial<ModP> frobenius_nf(const Polynomial<ModP>& g, const PolyList<ModP>& I) {
  const auto q = static_cast<std::int32_t>(g.ring()->domain().modulus);
  std::vector<Term<ModP>> ts;
  for (const auto& t : g.terms()) ts.push_back({t.coef, t.mono.pow(q)});
  return normal_form(Polynomial<ModP>::from_terms(g.ring(), std::move(ts)), I);
}

template <class K>
PolyList<K> dependent_coefficients(const Polynomial<K>& g) {
  const auto& ring = g.ring();
  std::vector<std::vector<Term<K>>> parts(static_cast<std::size_t>(g.degree_in(0)) + 1);
  for (const auto& t : g.terms()) {
    Monomial m = t.mono;
    const auto k = static_cast<std::size_t>(m[0]);
    m[0] = 0;
    parts[k].push_back({t.coef, std::move(m)});
  }
  PolyList<K> out;
  for (auto& p : parts) out.push_back(Polynomial<K>::from_terms(ring, std::move(p)));
  return out;
}

template <class K>
void require_simple_extension(const Polynomial<K>& f) {
  const auto& ring = f.ring();
  if (ring->ndep() != 1 || ring->nindep() != 1) {
    throw DimensionError("closure computation supports one dependent and one independent variable");
  }
  if (f.is_zero() || !f.is_monic() || f.lm()[0] < 1 || f.lm()[1] != 0) {
    throw InputError("relation must be monic in the dependent variable with leading monomial a power of it");
  }
}

template <class K>
FractionSet<K> initial_fraction_set(const Polynomial<K>& f, const Polynomial<K>& delta) {
  require_simple_extension(f);
  FractionSet<K> U{f.ring(), delta, {}};
  for (std::int32_t k = f.lm()[0] - 1; k >= 0; --k) U.gens.push_back(Polynomial<K>::variable(f.ring(), 0, k));
  sort_descending(U.gens);
  return U;
}

FractionSet<ModP> qth_power_step(const FractionSet<ModP>& U, const Polynomial<ModP>& f) {
  require_simple_extension(f);
  return power_step(U, f, FrobeniusCache(f, f.ring()->domain().modulus), nullptr);
}

FractionSet<ModP> qth_closure(const Polynomial<ModP>& f, const Polynomial<ModP>& delta, std::size_t max_iter,
                              ClosureTrace* trace) {
  require_simple_extension(f);
  if (f.ring()->domain().kind != CoefficientDomain::Kind::ModP) throw DomainError("closure requires a prime field");
  if (!delta.is_monic()) throw InputError("denominator must be monic");
  const FrobeniusCache cache(f, f.ring()->domain().modulus);
  FractionSet<ModP> U = initial_fraction_set(f, delta);
  for (std::size_t i = 0; i < max_iter; ++i) {
    std::size_t dim = 0;
    FractionSet<ModP> next = power_step(U, f, cache, &dim);
    if (trace) {
      trace->iterations = i + 1;
      trace->kernel_dims.push_back(dim);
    }
    if (next == U) {
      if (!(U.g0() == U.delta)) throw InconsistencyError("stationary module does not contain 1 with denominator Δ");
      return U;
    }
    U = std::move(next);
  }
  throw IterationLimitError("Qth-power iteration did not stabilise within " + std::to_string(max_iter) + " steps");
}

template <class K>
Polynomial<K> p_content(const Polynomial<K>& g) {
  Polynomial<K> c(g.ring());
  for (const auto& part : dependent_coefficients(g)) c = poly_gcd(c, part);
  return c;
}

template <class K>
FractionSet<K> minimize_denominator(const FractionSet<K>& U) {
  Polynomial<K> c = U.delta.monic();
  for (const auto& g : U.gens) c = poly_gcd(c, p_content(g));
  if (c.is_one()) return U;
  FractionSet<K> out{U.ring, exact_divide(U.delta, c), {}};
  for (const auto& g : U.gens) out.gens.push_back(exact_divide(g, c));
  return out;
}

std::vector<std::string> ybar_names(std::size_t count, const std::string& base) {
  if (count == 1) return {base};
  std::vector<std::string> out;
  for (std::size_t j = count; j >= 1; --j) out.push_back(base + std::to_string(j));
  return out;
}

template <class K>
std::vector<WeightVector> ClosurePresentation<K>::all_weights() const {
  std::vector<WeightVector> out = induced;
  const auto& src = source.ring;
  if (src->weights().empty()) return out;
  for (std::size_t i = src->ndep(); i < src->nvars(); ++i) out.push_back(src->weights().column(i));
  return out;
}

template <class K>
ClosurePresentation<K> induce_presentation(const FractionSet<K>& U, const Polynomial<K>& f) {
  require_simple_extension(f);
  const auto& src = U.ring;
  if (!(U.g0() == U.delta)) throw InconsistencyError("fraction set is not ring-closed: g0 differs from Δ");

  const PolyList<K> nums = U.numerators();
  const auto weights = src->weights().empty() ? std::vector<WeightVector>(nums.size()) : U.induced_weights();
  std::vector<std::size_t> idx(nums.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto c = compare_weights(weights[a], weights[b]);
    if (c != 0) return c > 0;
    return src->order().compare(nums[a].lm(), nums[b].lm()) > 0;
  });

  ClosurePresentation<K> out;
  out.source = U;
  for (auto i : idx) {
    out.numerators.push_back(nums[i]);
    out.induced.push_back(weights[i]);
  }
  const std::size_t J = nums.size();
  std::vector<std::string> names = ybar_names(J);
  const std::size_t nindep = src->nindep();
  for (std::size_t i = 0; i < nindep; ++i) names.push_back(src->names()[src->ndep() + i]);
  if (src->weights().empty()) {
    out.ring = make_ring<K>(names, J, OrderKind::Grevlex, WeightMatrix(), src->unit());
  } else {
    IntMatrix rows;
    for (std::size_t r = 0; r < src->weights().rows(); ++r) {
      std::vector<std::int64_t> row;
      for (const auto& w : out.induced) row.push_back(w[r]);
      for (std::size_t i = 0; i < nindep; ++i) row.push_back(src->weights().matrix()[r][src->ndep() + i]);
      rows.push_back(std::move(row));
    }
    out.ring = make_ring<K>(names, J, OrderKind::GrevlexOverWeight, WeightMatrix(std::move(rows)), src->unit());
  }
  const auto& R = out.ring;

  auto from_base = [&](const Polynomial<K>& c) {
    std::vector<Term<K>> ts;
    for (const auto& t : c.terms()) {
      std::vector<std::int32_t> e(J, 0);
      for (std::size_t i = src->ndep(); i < src->nvars(); ++i) e.push_back(t.mono[i]);
      ts.push_back({t.coef, Monomial(std::move(e))});
    }
    return Polynomial<K>::from_terms(R, std::move(ts));
  };
  // Position of each source generator among the new variables; g0 maps to 1.
  std::vector<std::optional<std::size_t>> var_of(U.gens.size());
  for (std::size_t g = 0; g < U.gens.size(); ++g) {
    for (std::size_t v = 0; v < J; ++v) {
      if (U.gens[g] == out.numerators[v]) var_of[g] = v;
    }
  }
  auto combine = [&](const ModuleReduction<K>& red) {
    if (!red.remainder.is_zero()) throw InconsistencyError("product leaves the numerator module");
    Polynomial<K> p(R);
    for (std::size_t g = 0; g < U.gens.size(); ++g) {
      Polynomial<K> c = from_base(red.coefficients[g]);
      if (var_of[g]) c = c * Polynomial<K>::variable(R, *var_of[g]);
      p += c;
    }
    return p;
  };

  const PolyList<K> I{f};
  PolyList<K> rels;
  for (std::size_t a = 0; a < J; ++a) {
    for (std::size_t b = a; b < J; ++b) {
      const auto prod = normal_form(out.numerators[a] * out.numerators[b], I);
      const auto rhs = combine(module_reduce(prod, U.gens, U.delta));
      rels.push_back(Polynomial<K>::variable(R, a) * Polynomial<K>::variable(R, b) - rhs);
    }
  }
  out.relations = minimal_reduced_gb(rels);
  const auto ydelta = normal_form(Polynomial<K>::variable(src, 0) * U.delta, I);
  out.psi = combine(module_reduce(ydelta, U.gens, Polynomial<K>::one(src)));
  return out;
}

#define QTH_INSTANTIATE(K)                                                                                    \
  template struct FractionSet<K>;                                                                             \
  template struct ClosurePresentation<K>;                                                                     \
  template ModuleReduction<K> module_reduce(const Polynomial<K>&, const PolyList<K>&, const Polynomial<K>&); \
  template PolyList<K> dependent_coefficients(const Polynomial<K>&);                                          \
  template void require_simple_extension(const Polynomial<K>&);                                               \
  template FractionSet<K> initial_fraction_set(const Polynomial<K>&, const Polynomial<K>&);                  \
  template Polynomial<K> p_content(const Polynomial<K>&);                                                     \
  template FractionSet<K> minimize_denominator(const FractionSet<K>&);                                        \
  template ClosurePresentation<K> induce_presentation(const FractionSet<K>&, const Polynomial<K>&);

QTH_INSTANTIATE(Rational)
QTH_INSTANTIATE(ModP)

#undef QTH_INSTANTIATE

}  // namespace qth
