#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

#include "qth/closure.hpp"
#include "qth/conductor.hpp"
#include "qth/weights.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace qth;
using namespace qth::test;

namespace {

const char* kExample7 = "y^8 - y^2*x^3 + 2*y*x^6 - x^9";
const char* kExample16 = "y^3 + x^7 + 8*y*x";
const char* kAppendix = "(y^2-3/4*y-15/17*x)^3-9*y*x^4*(y^2-3/4*y-15/17*x)-27*x^11";

RingPtr<ModP> ring_mod(std::uint64_t q, IntMatrix w) { return zq(q, {"y", "x"}, 1, OrderKind::WeightOverGrevlex, std::move(w)); }

struct Closed {
  Polynomial<ModP> f;
  FractionSet<ModP> U;
};

Closed close(std::uint64_t q, IntMatrix w, const char* text) {
  const auto ring = ring_mod(q, std::move(w));
  const auto f = poly(ring, text);
  const auto delta = canonical_conductor(PolyList<ModP>{f}).delta;
  return {f, qth_closure(f, delta)};
}

std::multiset<WeightVector> weight_set(const FractionSet<ModP>& U) {
  auto ws = U.induced_weights();
  return {ws.begin(), ws.end()};
}

bool module_contains(const FractionSet<ModP>& U, const Polynomial<ModP>& g) {
  return module_reduce(g, U.gens, Polynomial<ModP>::one(U.ring)).remainder.is_zero();
}

}  // namespace

TEST(Frobenius, SubstitutionOracleOverZ3) {
  const auto ring = ring_mod(3, {{7, 3}});
  const auto f = poly(ring, kExample16);
  EXPECT_EQ(frobenius_nf(poly(ring, "y"), {f}), poly(ring, "-x^7 + y*x"));
}

TEST(Frobenius, AgreesWithRepeatedMultiplication) {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2u, 3u, 5u, 7u}) {
    const auto ring = ring_mod(q, {{7, 3}});
    const PolyList<ModP> I{poly(ring, kExample16)};
    for (int i = 0; i < 10; ++i) {
      const auto g = normal_form(random_poly(rng, ring, 4, 4), I);
      EXPECT_EQ(frobenius_nf(g, I), normal_form(g.pow(static_cast<unsigned>(q)), I));
    }
  }
}

TEST(ModuleReduce, TermsOutsideEveryPMultipleStay) {
  const auto ring = ring_mod(7, {{7, 3}});
  const auto one = Polynomial<ModP>::one(ring);
  const auto r = module_reduce(poly(ring, "y"), polys(ring, {"y^2", "y*x"}), one);
  EXPECT_EQ(r.remainder, poly(ring, "y"));
  EXPECT_TRUE(r.coefficients[0].is_zero());
  EXPECT_TRUE(r.coefficients[1].is_zero());
}

TEST(ModuleReduce, DecompositionIdentityWithPCoefficients) {
  std::mt19937_64 rng(11);
  const auto ring = qq({"y", "x"}, 1, OrderKind::WeightOverGrevlex, {{7, 3}});
  const auto gens = polys(ring, {"y^2*x + x^2", "y*x^2 - 3*x", "x^3 + y"});
  const auto scale = poly(ring, "x - 2");
  for (int i = 0; i < 30; ++i) {
    const auto h = random_poly(rng, ring, 6, 6);
    const auto r = module_reduce(h, gens, scale);
    Polynomial<Rational> sum = r.remainder;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      EXPECT_TRUE(r.coefficients[j].in_base());
      sum += r.coefficients[j] * scale * gens[j];
    }
    EXPECT_EQ(sum, h);
    for (const auto& t : r.remainder.terms()) {
      for (const auto& g : gens) {
        const auto lm = (scale * g).lm();
        EXPECT_FALSE(lm.divides(t.mono) && ring->in_base(t.mono / lm));
      }
    }
  }
}

TEST(QthClosure, Example16OverZ7HasWeights7And11) {
  const auto c = close(7, {{7, 3}}, kExample16);
  EXPECT_EQ(c.U.g0(), c.U.delta);
  EXPECT_EQ(weight_set(c.U), (std::multiset<WeightVector>{{7}, {11}}));
}

TEST(QthClosure, Example7OverZ7HasTheListedWeights) {
  const auto c = close(7, {{9, 8}}, kExample7);
  std::multiset<WeightVector> expected;
  for (std::int64_t w : {4, 5, 9, 10, 14, 15, 19}) expected.insert({w});
  EXPECT_EQ(weight_set(c.U), expected);
}

TEST(QthClosure, AppendixModulo23MatchesTheListedNumerators) {
  const auto c = close(23, {{11, 6}}, kAppendix);
  const auto ring = c.f.ring();
  EXPECT_EQ(c.U.delta, poly(ring, "x^9"));
  const auto m = minimize_denominator(c.U);
  const auto listed = polys(ring, split_polys(read_file(fixture("appendix_numerators.txt"))));
  EXPECT_EQ(m.delta, listed[0]);
  EXPECT_EQ(sorted_strs(m.gens), sorted_strs(listed));
  std::multiset<WeightVector> expected;
  for (std::int64_t w : {10, 11, 20, 21, 25}) expected.insert({w});
  EXPECT_EQ(weight_set(c.U), expected);
}

TEST(QthClosure, ParabolaIsAlreadyClosed) {
  const auto ring = ring_mod(5, {{1, 2}});
  const auto f = poly(ring, "y^2 - x");
  const auto delta = canonical_conductor(PolyList<ModP>{f}).delta;
  ASSERT_TRUE(delta.is_one());
  const auto U = qth_closure(f, delta);
  EXPECT_EQ(U.gens, polys(ring, {"y", "1"}));
  const auto P = induce_presentation(U, f);
  ASSERT_EQ(P.relations.size(), 1u);
  EXPECT_EQ(P.relations[0], poly(P.ring, "ybar^2 - x"));
  EXPECT_EQ(P.psi, poly(P.ring, "ybar"));
}

TEST(QthClosure, DegreeOneExtensionHasNoNewVariables) {
  const auto ring = ring_mod(5, {{2, 1}});
  const auto f = poly(ring, "y - x^2");
  const auto U = qth_closure(f, Polynomial<ModP>::one(ring));
  const auto P = induce_presentation(U, f);
  EXPECT_TRUE(P.relations.empty());
  EXPECT_EQ(P.ring->names(), (std::vector<std::string>{"x"}));
  EXPECT_EQ(P.psi, poly(P.ring, "x^2"));
}

TEST(QthClosure, StationaryModuleIsAFixpoint) {
  for (std::uint64_t q : {3u, 5u, 7u}) {
    const auto c = close(q, {{7, 3}}, kExample16);
    EXPECT_EQ(qth_power_step(c.U, c.f), c.U) << "q = " << q;
  }
}

TEST(QthClosure, IteratesAreNested) {
  const auto ring = ring_mod(7, {{9, 8}});
  const auto f = poly(ring, kExample7);
  const auto delta = canonical_conductor(PolyList<ModP>{f}).delta;
  auto U = initial_fraction_set(f, delta);
  for (int i = 0; i < 10; ++i) {
    const auto next = qth_power_step(U, f);
    for (const auto& g : next.gens) EXPECT_TRUE(module_contains(U, g));
    if (next == U) break;
    U = next;
  }
}

TEST(QthClosure, ResultIsClosedUnderMultiplication) {
  for (const auto& c : {close(7, {{7, 3}}, kExample16), close(7, {{9, 8}}, kExample7)}) {
    const PolyList<ModP> I{c.f};
    for (const auto& a : c.U.gens) {
      for (const auto& b : c.U.gens) {
        const auto prod = normal_form(a * b, I);
        EXPECT_TRUE(module_reduce(prod, c.U.gens, c.U.delta).remainder.is_zero());
      }
    }
  }
}

TEST(QthClosure, IterationGuard) {
  const auto ring = ring_mod(7, {{9, 8}});
  const auto f = poly(ring, kExample7);
  const auto delta = canonical_conductor(PolyList<ModP>{f}).delta;
  EXPECT_THROW((void)qth_closure(f, delta, 1), IterationLimitError);
  ClosureTrace trace;
  (void)qth_closure(f, delta, 64, &trace);
  EXPECT_EQ(trace.kernel_dims.size(), trace.iterations);
  EXPECT_GE(trace.iterations, 2u);
}

TEST(QthClosure, RejectsUnsupportedShapes) {
  const auto r3 = zq(7, {"y", "x", "z"}, 1);
  EXPECT_THROW((void)qth_closure(poly(r3, "y^2 - x*z"), poly(r3, "x")), DimensionError);
  const auto ring = ring_mod(7, {{7, 3}});
  EXPECT_THROW((void)qth_closure(poly(ring, "2*y^3 + x^7"), poly(ring, "x")), InputError);
}

// The step's kernel, checked by enumerating S/ΔS over a tiny field.
TEST(QthPowerStep, MatchesBruteForceKernelOverSmallFields) {
  const auto cases = kernel_oracle(2024, 24);
  EXPECT_GE(cases.size(), 20u);
  for (const auto& c : cases) {
    EXPECT_TRUE(c.generators_pass) << c.instance;
    EXPECT_EQ(c.passing, c.expected) << c.instance;
  }
}

TEST(MinimizeDenominator, AppendixDividesOutX4) {
  const auto c = close(23, {{11, 6}}, kAppendix);
  EXPECT_EQ(minimize_denominator(c.U).delta, poly(c.f.ring(), "x^5"));
}

TEST(MinimizeDenominator, Example7) {
  const auto c7 = close(7, {{9, 8}}, kExample7);
  EXPECT_EQ(c7.U.delta, poly(c7.f.ring(), "x^24"));
  EXPECT_EQ(minimize_denominator(c7.U).delta, poly(c7.f.ring(), "x^13"));
  const auto c5 = close(5, {{9, 8}}, kExample7);
  EXPECT_EQ(minimize_denominator(c5.U).delta, poly(c5.f.ring(), "x^13*(x^3 + 1)^2"));
}

TEST(MinimizeDenominator, KeepsTheFractions) {
  const auto c = close(7, {{9, 8}}, kExample7);
  const auto m = minimize_denominator(c.U);
  ASSERT_EQ(m.gens.size(), c.U.gens.size());
  for (std::size_t i = 0; i < m.gens.size(); ++i) EXPECT_EQ(m.gens[i] * c.U.delta, c.U.gens[i] * m.delta);
  EXPECT_EQ(m.induced_weights(), c.U.induced_weights());
}

TEST(InducePresentation, Example16OverZ7) {
  const auto c = close(7, {{7, 3}}, kExample16);
  const auto P = induce_presentation(c.U, c.f);
  EXPECT_EQ(P.ring->names(), (std::vector<std::string>{"ybar2", "ybar1", "x"}));
  const auto expected = polys(P.ring, {"ybar2^2 + ybar1*x^5 + 8*ybar2", "ybar2*ybar1 + x^6 + 8*ybar1",
                                       "ybar1^2 - ybar2*x"});
  EXPECT_EQ(sorted_strs(P.relations), sorted_strs(expected));
  EXPECT_EQ(P.psi, poly(P.ring, "ybar1"));
  EXPECT_TRUE(is_minimal_reduced_gb(P.relations));
}

TEST(InducePresentation, AppendixModulo23) {
  const auto c = close(23, {{11, 6}}, kAppendix);
  const auto P = induce_presentation(minimize_denominator(c.U), c.f);
  EXPECT_EQ(P.ring->names(), (std::vector<std::string>{"ybar5", "ybar4", "ybar3", "ybar2", "ybar1", "x"}));
  std::vector<WeightVector> all;
  for (std::int64_t w : {25, 21, 20, 11, 10, 6}) all.push_back({w});
  EXPECT_EQ(P.all_weights(), all);
  const auto listed = polys(P.ring, split_polys(appendix_names(read_file(fixture("appendix_relations.txt")))));
  ASSERT_EQ(listed.size(), 15u);
  EXPECT_EQ(sorted_strs(P.relations), sorted_strs(listed));
  EXPECT_EQ(P.psi, poly(P.ring, "ybar2"));
}

TEST(InducePresentation, StrictShapeAndWeightBalance) {
  for (const auto& c : {close(7, {{7, 3}}, kExample16), close(7, {{9, 8}}, kExample7),
                        close(23, {{11, 6}}, kAppendix)}) {
    EXPECT_EQ(shape_violations(induce_presentation(c.U, c.f)), std::vector<std::string>{}) << c.f.str();
  }
}

TEST(InducePresentation, NumeratorsAreDeltaTimesTheNewVariables) {
  const auto c = close(7, {{9, 8}}, kExample7);
  const auto P = induce_presentation(c.U, c.f);
  const auto src = c.f.ring();
  // psi(y) * Δ, read back in the source ring through the numerators, is y Δ.
  Polynomial<ModP> back(src);
  for (const auto& t : P.psi.terms()) {
    Polynomial<ModP> term = Polynomial<ModP>::term(src, t.coef, Monomial{0, t.mono[P.ring->nvars() - 1]});
    std::size_t vars = 0;
    for (std::size_t v = 0; v < P.ring->ndep(); ++v) {
      if (t.mono[v] == 0) continue;
      vars += static_cast<std::size_t>(t.mono[v]);
      term = term * P.numerators[v].pow(static_cast<unsigned>(t.mono[v]));
    }
    ASSERT_LE(vars, 1u);
    back += vars == 0 ? term * c.U.delta : term;
  }
  EXPECT_EQ(normal_form(back, PolyList<ModP>{c.f}), normal_form(poly(src, "y") * c.U.delta, PolyList<ModP>{c.f}));
}
