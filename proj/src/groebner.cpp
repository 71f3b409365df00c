#include "qth/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace qth {

namespace {

template <class K>
const Polynomial<K>* first_divisor(const Monomial& m, const PolyList<K>& G, std::size_t* index) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (!G[i].is_zero() && G[i].lm().divides(m)) {
      if (index) *index = i;
      return &G[i];
    }
  }
  return nullptr;
}

}  // namespace

template <class K>
Division<K> divide(const Polynomial<K>& f, const PolyList<K>& G) {
  Division<K> out;
  out.quotients.assign(G.size(), Polynomial<K>(f.ring()));
  Polynomial<K> p = f;
  std::vector<Term<K>> rem;
  while (!p.is_zero()) {
    const Term<K>& lt = p.lt();
    std::size_t i = 0;
    if (const auto* g = first_divisor(lt.mono, G, &i)) {
      const K c = lt.coef * g->lc().inverse();
      const Monomial m = lt.mono / g->lm();
      out.quotients[i] += Polynomial<K>::term(f.ring(), c, m);
      p -= g->mul_term(c, m);
    } else {
      rem.push_back(lt);
      p.drop_lead();
    }
  }
  out.remainder = Polynomial<K>::from_sorted_terms(f.ring(), std::move(rem));
  return out;
}

template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const PolyList<K>& G) {
  if (G.empty()) return f;
  Polynomial<K> p = f;
  std::vector<Term<K>> rem;
  while (!p.is_zero()) {
    const Term<K>& lt = p.lt();
    if (const auto* g = first_divisor(lt.mono, G, static_cast<std::size_t*>(nullptr))) {
      const K c = lt.coef * g->lc().inverse();
      p -= g->mul_term(c, lt.mono / g->lm());
    } else {
      rem.push_back(lt);
      p.drop_lead();
    }
  }
  return Polynomial<K>::from_sorted_terms(f.ring(), std::move(rem));
}

template <class K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g) {
  const Monomial l = lcm(f.lm(), g.lm());
  return f.mul_term(f.lc().inverse(), l / f.lm()) - g.mul_term(g.lc().inverse(), l / g.lm());
}

template <class K>
PolyList<K> buchberger(const PolyList<K>& gens, BuchbergerStats* stats) {
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;
  PolyList<K> G;
  for (const auto& g : gens) {
    if (!g.is_zero()) G.push_back(g.monic());
  }
  if (G.empty()) return G;
  const MonomialOrder& ord = G.front().ring()->order();

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> done;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) pending.push_back({i, j, lcm(G[i].lm(), G[j].lm())});
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);
  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pending.begin(), pending.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
  };

  while (!pending.empty()) {
    auto best = pending.begin();
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      const auto c = ord.compare(it->lcm, best->lcm);
      if (c < 0 || (c == 0 && std::make_pair(it->j, it->i) < std::make_pair(best->j, best->i))) best = it;
    }
    const Pair p = *best;
    pending.erase(best);
    done.insert({p.i, p.j});
    ++st.pairs_considered;
    if (coprime(G[p.i].lm(), G[p.j].lm())) {
      ++st.skipped_coprime;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      chain = G[k].lm().divides(p.lcm) && !is_pending(p.i, k) && !is_pending(p.j, k);
    }
    if (chain) {
      ++st.skipped_chain;
      continue;
    }
    ++st.pairs_reduced;
    Polynomial<K> h = normal_form(s_polynomial(G[p.i], G[p.j]), G);
    if (h.is_zero()) continue;
    G.push_back(h.monic());
    add_pairs(G.size() - 1);
  }
  return G;
}

template <class K>
PolyList<K> minimal_reduced_gb(const PolyList<K>& G) {
  PolyList<K> sorted;
  for (const auto& g : G) {
    if (!g.is_zero()) sorted.push_back(g.monic());
  }
  if (sorted.empty()) return sorted;
  const MonomialOrder& ord = sorted.front().ring()->order();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&ord](const Polynomial<K>& a, const Polynomial<K>& b) { return ord.less(a.lm(), b.lm()); });
  PolyList<K> kept;
  for (auto& g : sorted) {
    const bool redundant =
        std::any_of(kept.begin(), kept.end(), [&g](const Polynomial<K>& k) { return k.lm().divides(g.lm()); });
    if (!redundant) kept.push_back(std::move(g));
  }
  PolyList<K> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    PolyList<K> others;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(kept[j]);
    }
    out.push_back(normal_form(kept[i], others).monic());
  }
  std::sort(out.begin(), out.end(),
            [&ord](const Polynomial<K>& a, const Polynomial<K>& b) { return ord.less(b.lm(), a.lm()); });
  return out;
}

template <class K>
PolyList<K> reduced_gb(const PolyList<K>& gens) {
  return minimal_reduced_gb(buchberger(gens));
}

template <class K>
bool is_groebner_basis(const PolyList<K>& G) {
  PolyList<K> nz;
  for (const auto& g : G) {
    if (!g.is_zero()) nz.push_back(g);
  }
  for (std::size_t i = 0; i < nz.size(); ++i) {
    for (std::size_t j = i + 1; j < nz.size(); ++j) {
      if (coprime(nz[i].lm(), nz[j].lm())) continue;
      if (!normal_form(s_polynomial(nz[i], nz[j]), nz).is_zero()) return false;
    }
  }
  return true;
}

template <class K>
bool is_minimal_reduced_gb(const PolyList<K>& G) {
  for (const auto& g : G) {
    if (g.is_zero() || !g.is_monic()) return false;
  }
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : G[i].terms()) {
        if (G[j].lm().divides(t.mono)) return false;
      }
    }
  }
  return is_groebner_basis(G);
}

template <class K>
Polynomial<K> exact_divide(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (b.is_zero()) throw ArithmeticError("division by the zero polynomial");
  Division<K> d = divide(a, PolyList<K>{b});
  if (!d.remainder.is_zero()) throw ArithmeticError("polynomial division is not exact");
  return d.quotients.front();
}

template <class K>
Polynomial<K> poly_gcd(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto& ring = a.ring();
  std::vector<bool> used(ring->nvars(), false);
  for (const auto* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      for (std::size_t i = 0; i < t.mono.size(); ++i) used[i] = used[i] || t.mono[i] != 0;
    }
  }
  if (std::count(used.begin(), used.end(), true) <= 1) {
    Polynomial<K> u = a, v = b;
    while (!v.is_zero()) {
      Polynomial<K> r = normal_form(u, PolyList<K>{v});
      u = std::move(v);
      v = std::move(r);
    }
    return u.monic();
  }
  // lcm(a, b) generates <t*a, (1-t)*b> ∩ R; t is eliminated by a block order.
  std::vector<std::string> names{"_t"};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  const std::size_t n = names.size();
  auto ext = make_ring<K>(names, 1, build_order(OrderKind::PositionUpBlock, WeightMatrix(), n, 1), WeightMatrix(),
                          ring->unit());
  auto lift = [&](const Polynomial<K>& p) {
    std::vector<Term<K>> ts;
    for (const auto& t : p.terms()) {
      std::vector<std::int32_t> e{0};
      e.insert(e.end(), t.mono.exponents().begin(), t.mono.exponents().end());
      ts.push_back({t.coef, Monomial(std::move(e))});
    }
    return Polynomial<K>::from_terms(ext, std::move(ts));
  };
  const auto t = Polynomial<K>::variable(ext, 0);
  const auto one = Polynomial<K>::one(ext);
  const PolyList<K> gb = reduced_gb(PolyList<K>{t * lift(a), (one - t) * lift(b)});
  for (const auto& g : gb) {
    if (g.degree_in(0) > 0) continue;
    std::vector<Term<K>> ts;
    for (const auto& term : g.terms()) {
      std::vector<std::int32_t> e(term.mono.exponents().begin() + 1, term.mono.exponents().end());
      ts.push_back({term.coef, Monomial(std::move(e))});
    }
    const auto l = Polynomial<K>::from_terms(ring, std::move(ts));
    return exact_divide(a * b, l).monic();
  }
  throw InconsistencyError("elimination produced no least common multiple");
}

template <class K>
bool ModuleVector<K>::is_zero() const {
  return std::all_of(comps.begin(), comps.end(), [](const Polynomial<K>& p) { return p.is_zero(); });
}

template <class K>
std::size_t ModuleVector<K>::lead_pos() const {
  for (std::size_t i = comps.size(); i-- > 0;) {
    if (!comps[i].is_zero()) return i;
  }
  throw DomainError("leading term of the zero module vector");
}

std::strong_ordering compare_module_terms(const MonomialOrder& order, std::size_t pa, const Monomial& a,
                                          std::size_t pb, const Monomial& b) {
  if (pa != pb) return pa <=> pb;
  return order.compare(a, b);
}

namespace {

template <class K>
ModuleVector<K> scaled(const ModuleVector<K>& v, const K& c, const Monomial& m) {
  ModuleVector<K> r;
  r.comps.reserve(v.size());
  for (const auto& p : v.comps) r.comps.push_back(p.mul_term(c, m));
  return r;
}

template <class K>
ModuleVector<K> monic(const ModuleVector<K>& v) {
  if (v.is_zero()) return v;
  return scaled(v, v.lt().coef.inverse(), v.comps.front().ring()->one_monomial());
}

template <class K>
void check_shape(const std::vector<ModuleVector<K>>& vs) {
  for (const auto& v : vs) {
    if (v.size() != vs.front().size()) throw DimensionError("module vectors with different component counts");
  }
}

}  // namespace

template <class K>
ModuleVector<K> module_normal_form(const ModuleVector<K>& v, const std::vector<ModuleVector<K>>& G) {
  ModuleVector<K> work = v;
  ModuleVector<K> out;
  for (const auto& p : v.comps) out.comps.emplace_back(p.ring());
  for (std::size_t k = work.size(); k-- > 0;) {
    std::vector<Term<K>> rem;
    while (!work.comps[k].is_zero()) {
      const Term<K> lt = work.comps[k].lt();
      const ModuleVector<K>* div = nullptr;
      for (const auto& g : G) {
        if (g.size() != v.size()) throw DimensionError("module vectors with different component counts");
        if (!g.is_zero() && g.lead_pos() == k && g.lt().mono.divides(lt.mono)) {
          div = &g;
          break;
        }
      }
      if (!div) {
        rem.push_back(lt);
        work.comps[k].drop_lead();
        continue;
      }
      const K c = lt.coef * div->lt().coef.inverse();
      const Monomial m = lt.mono / div->lt().mono;
      for (std::size_t l = 0; l <= k; ++l) {
        if (!div->comps[l].is_zero()) work.comps[l] -= div->comps[l].mul_term(c, m);
      }
    }
    out.comps[k] = Polynomial<K>::from_sorted_terms(v.comps[k].ring(), std::move(rem));
  }
  return out;
}

template <class K>
std::vector<ModuleVector<K>> module_gb(const std::vector<ModuleVector<K>>& columns) {
  check_shape(columns);
  std::vector<ModuleVector<K>> G;
  for (const auto& c : columns) {
    if (!c.is_zero()) G.push_back(monic(c));
  }
  if (G.empty()) return G;
  const MonomialOrder& ord = G.front().comps.front().ring()->order();
  auto less = [&ord](const ModuleVector<K>& a, const ModuleVector<K>& b) {
    return compare_module_terms(ord, a.lead_pos(), a.lt().mono, b.lead_pos(), b.lt().mono) < 0;
  };

  struct Pair {
    std::size_t i, j, pos;
    Monomial lcm;
  };
  std::vector<Pair> pending;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (G[i].lead_pos() == G[j].lead_pos()) {
        pending.push_back({i, j, G[j].lead_pos(), lcm(G[i].lt().mono, G[j].lt().mono)});
      }
    }
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);
  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pending.begin(), pending.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
  };
  while (!pending.empty()) {
    auto best = pending.begin();
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      if (compare_module_terms(ord, it->pos, it->lcm, best->pos, best->lcm) < 0) best = it;
    }
    const Pair p = *best;
    pending.erase(best);
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == p.i || k == p.j || G[k].lead_pos() != p.pos) continue;
      chain = G[k].lt().mono.divides(p.lcm) && !is_pending(p.i, k) && !is_pending(p.j, k);
    }
    if (chain) continue;
    const auto& a = G[p.i];
    const auto& b = G[p.j];
    ModuleVector<K> s = scaled(a, a.lt().coef.inverse(), p.lcm / a.lt().mono);
    const ModuleVector<K> t = scaled(b, b.lt().coef.inverse(), p.lcm / b.lt().mono);
    for (std::size_t l = 0; l < s.size(); ++l) s.comps[l] -= t.comps[l];
    ModuleVector<K> h = module_normal_form(s, G);
    if (h.is_zero()) continue;
    G.push_back(monic(h));
    add_pairs(G.size() - 1);
  }

  std::stable_sort(G.begin(), G.end(), less);
  std::vector<ModuleVector<K>> kept;
  for (auto& g : G) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&g](const ModuleVector<K>& k) {
      return k.lead_pos() == g.lead_pos() && k.lt().mono.divides(g.lt().mono);
    });
    if (!redundant) kept.push_back(std::move(g));
  }
  std::vector<ModuleVector<K>> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<ModuleVector<K>> others;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(kept[j]);
    }
    out.push_back(monic(module_normal_form(kept[i], others)));
  }
  std::sort(out.begin(), out.end(), less);
  return out;
}

#define QTH_INSTANTIATE(K)                                                                              \
  template Division<K> divide(const Polynomial<K>&, const PolyList<K>&);                                 \
  template Polynomial<K> normal_form(const Polynomial<K>&, const PolyList<K>&);                          \
  template Polynomial<K> s_polynomial(const Polynomial<K>&, const Polynomial<K>&);                       \
  template PolyList<K> buchberger(const PolyList<K>&, BuchbergerStats*);                                 \
  template PolyList<K> minimal_reduced_gb(const PolyList<K>&);                                           \
  template PolyList<K> reduced_gb(const PolyList<K>&);                                                   \
  template bool is_groebner_basis(const PolyList<K>&);                                                   \
  template bool is_minimal_reduced_gb(const PolyList<K>&);                                               \
  template Polynomial<K> exact_divide(const Polynomial<K>&, const Polynomial<K>&);                       \
  template Polynomial<K> poly_gcd(const Polynomial<K>&, const Polynomial<K>&);                           \
  template struct ModuleVector<K>;                                                                       \
  template ModuleVector<K> module_normal_form(const ModuleVector<K>&, const std::vector<ModuleVector<K>>&); \
  template std::vector<ModuleVector<K>> module_gb(const std::vector<ModuleVector<K>>&);

QTH_INSTANTIATE(Rational)
QTH_INSTANTIATE(ModP)

#undef QTH_INSTANTIATE

}  // namespace qth
