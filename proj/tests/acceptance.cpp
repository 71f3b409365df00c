// One line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>

#include "oracles.hpp"
#include "support.hpp"

using namespace qth;
using namespace qth::test;

namespace {

struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) failures.push_back(what + ": got " + show(got) + ", expected " + show(want));
  }

 private:
  template <class T>
  static std::string show(const T& v) {
    if constexpr (requires { v.str(); }) {
      return v.str();
    } else if constexpr (requires { v.get_str(); }) {
      return v.get_str();
    } else if constexpr (std::is_convertible_v<T, std::string>) {
      return std::string(v);
    } else if constexpr (requires { std::to_string(v); }) {
      return std::to_string(v);
    } else if constexpr (requires { v.begin(); }) {
      std::string s = "[";
      for (const auto& e : v) s += (s.size() > 1 ? ", " : "") + show(e);
      return s + "]";
    } else {
      return "?";
    }
  }
};

Polynomial<Rational> problem(const char* text, IntMatrix w, std::vector<std::string> names = {"y", "x"}) {
  return poly(qq(std::move(names), 1, OrderKind::WeightOverGrevlex, std::move(w)), text);
}

const char* kExample7 = "y^8 - y^2*x^3 + 2*y*x^6 - x^9";
const char* kAppendix = "(y^2-3/4*y-15/17*x)^3-9*y*x^4*(y^2-3/4*y-15/17*x)-27*x^11";

Polynomial<Rational> example12() { return problem("y1^2 + 13/22*(x1^9 + x1^7 + x1^5)", {{9, 2}}, {"y1", "x1"}); }
Polynomial<Rational> example16() { return problem("y^3 + x^7 + 8*y*x", {{7, 3}}); }
Polynomial<Rational> example17() { return problem("y^3 + 1/3*y*x + 8/7*x^5", {{5, 3}}); }
Polynomial<Rational> example18() { return problem("y^2 - 3/2*x^3 + 24/7*x^2 - 96/49*x", {{3, 2}}); }
Polynomial<Rational> example7() { return problem(kExample7, {{9, 8}}); }
Polynomial<Rational> appendix() { return problem(kAppendix, {{11, 6}}); }

// Everything the later property checks revisit.
struct Seen {
  std::vector<std::pair<Polynomial<Rational>, PrimeRun>> runs;
  std::vector<ClosurePresentation<Rational>> candidates;

  void add(const Polynomial<Rational>& f, const LiftResult& res) {
    for (const auto& r : res.runs) {
      if (r.usable) runs.emplace_back(f, r);
    }
    if (res.candidate) candidates.push_back(res.candidate->presentation);
  }
};
Seen seen;

LiftConfig pinned(std::vector<std::uint64_t> primes, bool extend = false) {
  LiftConfig c;
  c.primes = std::move(primes);
  c.extend_primes = extend;
  c.parallel = 1;
  return c;
}

const PrimeRun* run_at(const LiftResult& res, std::uint64_t q) {
  for (const auto& r : res.runs) {
    if (r.q == q) return &r;
  }
  return nullptr;
}

const LiftStep* step_at(const LiftResult& res, long N) {
  for (const auto& s : res.steps) {
    if (s.state.N == N) return &s;
  }
  return nullptr;
}

std::string first_relation(const PrimeRun* r) {
  return r && !r->presentation.relations.empty() ? r->presentation.relations.front().str() : "(none)";
}

Check criterion1() {
  Check c;
  const auto f = example18();
  const auto res = run_multimodular(f, pinned({5, 11, 13}));
  seen.add(f, res);
  const std::tuple<std::uint64_t, const char*, const char*> per_prime[] = {
      {5, "x + 1", "ybar^2 + x"}, {11, "x + 2", "ybar^2 + 4*x"}, {13, "x - 3", "ybar^2 + 5*x"}};
  for (const auto& [q, delta, rel] : per_prime) {
    const auto* r = run_at(res, q);
    c.expect(r && r->usable, "prime " + std::to_string(q) + " usable");
    if (!r || !r->usable) continue;
    c.equal(r->delta.str(), std::string(delta), "Delta at " + std::to_string(q));
    c.equal(first_relation(r), std::string(rel), "relation at " + std::to_string(q));
  }
  c.notes.push_back("the relation at 11 is checked as ybar^2 + 4*x: mu_11(-3/2) = 4, and CRT with ybar^2 + x at 5 gives 26 mod 55");
  const auto* s55 = step_at(res, 55);
  const auto* s715 = step_at(res, 715);
  c.expect(s55 && s715, "steps at N = 55 and N = 715");
  if (!s55 || !s715) return c;
  c.equal(s55->state.gens.back().str(), std::string("x - 9"), "CRT Delta mod 55");
  c.equal(s55->state.relations.front().str(), std::string("ybar^2 + 26*x"), "CRT relation mod 55");
  c.expect(s55->state.candidate.has_value(), "lift at 55");
  if (s55->state.candidate) {
    const auto& cand = *s55->state.candidate;
    c.equal(cand.closure.delta.str(), std::string("x + 1/6"), "lifted Delta at 55");
    c.equal(cand.presentation.relations.front().str(), std::string("ybar^2 - 3/2*x"), "lifted relation at 55");
  }
  c.expect(s55->certificate && !s55->certificate->accepted, "rejected at 55");
  c.equal(s715->state.gens.back().str(), std::string("x + 101"), "CRT Delta mod 715");
  c.equal(s715->state.relations.front().str(), std::string("ybar^2 + 356*x"), "CRT relation mod 715");
  c.expect(res.accepted && res.candidate.has_value(), "accepted at 715");
  if (!res.candidate) return c;
  const auto& p = res.candidate->presentation;
  c.equal(res.candidate->closure.delta.str(), std::string("x - 8/7"), "lifted Delta at 715");
  c.equal(strs(p.relations), std::vector<std::string>{"ybar^2 - 3/2*x"}, "lifted relations at 715");
  c.equal(p.psi, poly(p.ring, "ybar*(x - 8/7)"), "psi(y)");
  return c;
}

Check criterion2() {
  Check c;
  const auto f = example17();
  const auto res = run_multimodular(f, pinned({5, 11, 13}));
  seen.add(f, res);
  // ybar2^2 + a*ybar2 + b*ybar1*x^3 with a = 1/3 and b = 8/7 over Q.
  auto coefficients = [](const Polynomial<Integer>& r) {
    return std::pair{r.coefficient(Monomial{1, 0, 0}), r.coefficient(Monomial{0, 1, 3})};
  };
  const auto* s55 = step_at(res, 55);
  const auto* s715 = step_at(res, 715);
  c.expect(s55 && s715, "steps at N = 55 and N = 715");
  if (!s55 || !s715) return c;
  const auto [a55, b55] = coefficients(s55->state.relations.front());
  const auto [a715, b715] = coefficients(s715->state.relations.front());
  c.expect(s55->state.relations.front().lm() == Monomial{2, 0, 0}, "first relation leads with ybar2^2");
  c.equal(a55.value(), mpz_class(-18), "a mod 55");
  c.equal(b55.value(), mpz_class(9), "b mod 55");
  c.equal(rat_recon(a55.value(), 55), mpq_class(1, 3), "lift of a at 55");
  c.equal(rat_recon(b55.value(), 55), mpq_class(-1, 6), "lift of b at 55");
  c.equal(a715.value(), mpz_class(-238), "a mod 715");
  c.equal(b715.value(), mpz_class(-101), "b mod 715");
  c.equal(rat_recon(a715.value(), 715), mpq_class(1, 3), "lift of a at 715");
  c.equal(rat_recon(b715.value(), 715), mpq_class(8, 7), "lift of b at 715");
  const auto* r13 = run_at(res, 13);
  c.expect(r13 && r13->usable, "prime 13 usable");
  if (r13 && r13->usable) {
    const auto& rel = r13->presentation.relations.front();
    c.equal(rel.coefficient(Monomial{1, 0, 0}).balanced(), std::int64_t{-4}, "a mod 13");
  }
  c.notes.push_back("a mod 13 is checked as -4 = mu_13(1/3)");
  c.expect(res.accepted, "accepted at 715");
  return c;
}

Check criterion3() {
  Check c;
  const auto f = example16();
  const auto delta0 = canonical_conductor(PolyList<Rational>{f}).delta;
  for (std::uint64_t q : {3, 7, 13}) {
    const auto r = run_prime(q, f, delta0);
    c.expect(r.usable, "prime " + std::to_string(q) + " usable");
    if (!r.usable) continue;
    seen.runs.emplace_back(f, r);
    const auto& P = r.presentation;
    std::vector<std::string> lms;
    for (const auto& rel : P.relations) lms.push_back(Polynomial<ModP>::format_monomial(rel.lm(), P.ring->names()));
    std::sort(lms.begin(), lms.end());
    c.equal(lms, std::vector<std::string>{"ybar1^2", "ybar2*ybar1", "ybar2^2"}, "signature at " + std::to_string(q));
    const auto& R = P.ring;
    const auto c8 = Polynomial<ModP>::constant(R, ModP(8, q));
    const PolyList<ModP> expected{poly(R, "ybar2^2 + ybar1*x^5") + c8 * poly(R, "ybar2"),
                                  poly(R, "ybar2*ybar1 + x^6") + c8 * poly(R, "ybar1"), poly(R, "ybar1^2 - ybar2*x")};
    c.equal(sorted_strs(P.relations), sorted_strs(expected), "relations at " + std::to_string(q));
  }

  // 11 fails the usability filter, so the N = 55 candidate takes Δ^(11) to be the image of Δ^(0).
  const auto r5 = run_prime(5, f, delta0);
  PrimeRun r11;
  r11.q = 11;
  const auto f11 = reduce_mod(f, with_coefficients<ModP>(*f.ring(), ModP(1, 11)));
  r11.delta = reduce_mod(delta0, f11.ring());
  r11.closure = qth_closure(f11, r11.delta);
  r11.presentation = induce_presentation(r11.closure, f11);
  r11.usable = true;
  const auto s55 = reconcile({r5, r11});
  c.expect(s55.candidate.has_value(), "lift at 55");
  if (s55.candidate) {
    const auto cert = verify_candidate(*s55.candidate, f);
    c.expect(!cert.accepted, "rejected at 55");
    c.equal(cert.residual, poly(s55.candidate->presentation.ring, "55/7*ybar1*x"), "residual at 55");
  }
  c.notes.push_back("the N = 55 check runs 11 with the image of Delta over Q (its own conductor is x^12 - 4*x)");

  std::vector<PrimeRun> usable;
  for (std::uint64_t q = 2; q < 40; q = next_prime(q + 1)) {
    auto r = run_prime(q, f, delta0);
    if (r.usable) usable.push_back(std::move(r));
  }
  int pairs = 0;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    for (std::size_t j = i + 1; j < usable.size(); ++j) {
      if (usable[i].q * usable[j].q <= 65) continue;
      const std::vector<PrimeRun> runs{usable[i], usable[j]};
      const auto s = reconcile(runs);
      const bool ok = s.candidate && verify_candidate(*s.candidate, f, runs).accepted;
      c.expect(ok, "accepted at N = " + std::to_string(usable[i].q * usable[j].q));
      ++pairs;
    }
  }
  c.expect(pairs >= 10, "at least ten usable prime pairs with N > 65");
  c.notes.push_back(std::to_string(pairs) + " usable prime pairs with N > 65 accepted");
  return c;
}

Check criterion4() {
  Check c;
  auto delta_at = [](const Polynomial<Rational>& f, std::uint64_t q) {
    if (q == 0) return canonical_conductor(PolyList<Rational>{f}).delta.str();
    return canonical_conductor(PolyList<ModP>{reduce_mod(f, with_coefficients<ModP>(*f.ring(), ModP(1, q)))})
        .delta.str();
  };
  auto expand = [](const Polynomial<Rational>& f, const char* text, std::uint64_t q) {
    const auto ring = with_coefficients<ModP>(*f.ring(), ModP(1, q));
    return poly(ring, text).str();
  };
  const auto e7 = example7();
  c.equal(delta_at(e7, 0), std::string("x^24"), "Example 7 over Q");
  c.equal(delta_at(e7, 2), std::string("x^26"), "Example 7 at 2");
  c.equal(delta_at(e7, 3), std::string("x^27"), "Example 7 at 3");
  c.equal(delta_at(e7, 5), expand(e7, "x^26*(x^3+1)^5", 5), "Example 7 at 5");
  c.equal(delta_at(e7, 7), std::string("x^24"), "Example 7 at 7");
  c.equal(delta_at(e7, 11), std::string("x^24"), "Example 7 at 11");
  const auto e12 = example12();
  c.equal(delta_at(e12, 0), std::string("x1^4"), "Example 12 over Q");
  c.equal(delta_at(e12, 3), std::string("x1^6 - x1^4"), "Example 12 at 3");
  c.equal(delta_at(e12, 5), std::string("x1^5"), "Example 12 at 5");
  return c;
}

Check criterion5() {
  Check c;
  const auto f = appendix();
  const auto res = run_multimodular(f, pinned({7, 11, 13, 19, 23}, true));
  seen.add(f, res);
  c.expect(res.accepted, "accepted: " + res.reason);
  if (!res.candidate) return c;
  const auto& cand = *res.candidate;
  const auto& P = cand.presentation;
  c.equal(cand.closure.delta.str(), std::string("x^9"), "Delta before minimization");
  c.equal(cand.minimized.delta.str(), std::string("x^5"), "reduced denominator");
  const auto listed_nums = polys(f.ring(), split_polys(read_file(fixture("appendix_numerators.txt"))));
  c.equal(sorted_strs(cand.minimized.gens), sorted_strs(listed_nums), "numerators");
  const auto listed_rels = polys(P.ring, split_polys(appendix_names(read_file(fixture("appendix_relations.txt")))));
  PolyList<Rational> monic;
  for (const auto& r : P.relations) monic.push_back(r.monic());
  PolyList<Rational> listed_monic;
  for (const auto& r : listed_rels) listed_monic.push_back(r.monic());
  c.equal(listed_monic.size(), std::size_t{15}, "listed relation count");
  c.equal(sorted_strs(monic), sorted_strs(listed_monic), "relations");
  c.expect(is_minimal_reduced_gb(P.relations), "relations form a minimal reduced basis");
  std::vector<WeightVector> weights;
  for (std::int64_t w : {25, 21, 20, 11, 10, 6}) weights.push_back({w});
  c.equal(P.all_weights(), weights, "induced weights");
  c.expect(res.certificate.accepted && res.certificate.gb_check && res.certificate.containment_check, "certificate");
  std::string used;
  for (auto q : res.steps.back().state.primes) used += (used.empty() ? "" : ",") + std::to_string(q);
  c.notes.push_back("primes used: " + used + " (the schedule is extended past 23 until acceptance)");
  return c;
}

Check criterion6() {
  Check c;
  c.equal(recon_exhaustive_failures(55), 0, "round trips at N = 55");
  c.equal(recon_exhaustive_failures(715), 0, "round trips at N = 715");
  const auto random = recon_random(10000, 64);
  c.equal(random.failures, 0, "random 64-bit round trips");

  const auto out_ring =
      qq({"p_0", "p_1", "p_2", "p_3", "p_4", "p_5"}, 5, OrderKind::GrevlexOverWeight, {{25, 21, 20, 11, 10, 6}});
  auto fixture_basis = polys(out_ring, split_polys(read_file(fixture("appendix_relations.txt"))));
  c.expect(is_groebner_basis(fixture_basis), "fixture basis passes S-polynomial reduction");
  const auto reference = strs(reduced_gb(fixture_basis));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(fixture_basis.begin(), fixture_basis.end(), rng);
    c.equal(strs(reduced_gb(fixture_basis)), reference, "reduced basis under permutation");
  }
  const auto r3 = qq({"x", "y", "z"}, 0);
  auto gens = polys(r3, {"x^2*y - z^2", "x*z^2 - y^2 + 1", "y*z - x"});
  const auto ref3 = strs(reduced_gb(gens));
  for (int i = 0; i < 5; ++i) {
    std::shuffle(gens.begin(), gens.end(), rng);
    c.equal(strs(reduced_gb(gens)), ref3, "reduced basis of a random system under permutation");
  }

  int closures = 0;
  for (const auto& [f, run] : seen.runs) {
    const auto fq = reduce_mod(f, run.delta.ring());
    for (const auto& v : closure_violations(run.closure, fq)) c.expect(false, f.str() + " mod " + std::to_string(run.q) + ": " + v);
    for (const auto& v : shape_violations(run.presentation)) c.expect(false, f.str() + " mod " + std::to_string(run.q) + ": " + v);
    c.expect(is_groebner_basis(run.presentation.relations), "per-prime relations form a basis");
    ++closures;
  }
  for (const auto& P : seen.candidates) {
    for (const auto& v : shape_violations(P)) c.expect(false, "lifted presentation: " + v);
    c.expect(is_groebner_basis(P.relations), "lifted relations form a basis");
  }
  c.expect(closures >= 10, "at least ten per-prime runs examined");

  const auto kernels = kernel_oracle(2024, 24);
  c.expect(kernels.size() >= 20, "at least 20 kernel oracle instances");
  for (const auto& k : kernels) {
    c.expect(k.generators_pass, "generators pass the power test: " + k.instance);
    c.equal(k.passing, k.expected, "kernel size " + k.instance);
  }
  c.notes.push_back(std::to_string(closures) + " per-prime closures, " + std::to_string(seen.candidates.size()) +
                    " lifted presentations, " + std::to_string(kernels.size()) + " kernel instances, " +
                    std::to_string(random.checked) + " random rationals");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds
    std::function<Check()> run;
  };
  const Criterion criteria[] = {
      {1, "Example 18 end to end, primes 5, 11, 13", 1.0, criterion1},
      {2, "Example 17 coefficient pipeline", 1.0, criterion2},
      {3, "Example 16 per-prime relations and verification", 5.0, criterion3},
      {4, "conductor table for Examples 7 and 12", 10.0, criterion4},
      {5, "appendix example full run", 180.0, criterion5},
      {6, "property suites", 0.0, criterion6},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit > 0 && secs >= cr.limit) {
      std::ostringstream os;
      os << "runtime " << secs << " s exceeds " << cr.limit << " s";
      c.failures.push_back(os.str());
    }
    const bool ok = c.failures.empty();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.name << " (" << std::fixed
              << std::setprecision(3) << secs << " s)\n";
    for (const auto& n : c.notes) std::cout << "      note: " << n << "\n";
    for (const auto& f : c.failures) std::cout << "      failed: " << f << "\n";
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
