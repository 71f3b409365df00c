#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qth/closure.hpp"

namespace qth {

/// mu_N(a/b): the balanced residue c (|c| <= N/2, ties to +N/2) with c*b = a mod N.
/// Throws DomainError when gcd(b, N) > 1.
mpz_class mod_n(const mpq_class& r, const mpz_class& N);

/// E_N(c): extended Euclid on (N, c mod N) keeping the remainder r_i and
/// cofactor u_i with r_i^2 + u_i^2 minimal (first such i) among the steps
/// where u_i is a unit mod N, returning (-1)^i r_i / u_i.
mpq_class rat_recon(const mpz_class& c, const mpz_class& N);

/// Balanced residue modulo the product of the (pairwise coprime) moduli.
/// Throws InputError for an empty list, repeated or non-coprime moduli.
mpz_class crt(const std::vector<std::pair<mpz_class, mpz_class>>& values);

/// Coefficientwise crt over the union of supports. All inputs must share
/// their leading monomial (CompatibilityError otherwise).
Polynomial<Integer> crt_poly(const std::vector<Polynomial<ModP>>& polys);

/// Coefficientwise rat_recon into `ring`.
Polynomial<Rational> lift_poly(const Polynomial<Integer>& p, const mpz_class& N, const RingPtr<Rational>& ring);

/// Coefficientwise mu_q; throws DomainError when q divides a denominator.
Polynomial<ModP> reduce_mod(const Polynomial<Rational>& p, const RingPtr<ModP>& ring);

struct PrimeCheck {
  bool usable = false;
  std::string reason;
  std::optional<Polynomial<ModP>> delta;  // Δ^(q) once computed
};

/// A prime is usable when it divides no denominator of f or Δ^(0), no
/// numerator of a coefficient of f, and Δ^(q) = mu_q(Δ^(0)).
PrimeCheck is_prime_usable(std::uint64_t q, const Polynomial<Rational>& f, const Polynomial<Rational>& delta0);

struct PrimeRun {
  std::uint64_t q = 0;
  bool usable = false;
  std::string reason;  // skip reason when not usable
  Polynomial<ModP> delta;
  FractionSet<ModP> closure;  // before minimization
  ClosurePresentation<ModP> presentation;

  /// Leading-monomial data compared across primes: numerators, relations, psi.
  std::string signature() const;
};

struct ClosureOptions {
  std::size_t max_iter = 64;
};

/// Usability check, closure and presentation at one prime.
PrimeRun run_prime(std::uint64_t q, const Polynomial<Rational>& f, const Polynomial<Rational>& delta0,
                   const ClosureOptions& opts = {});

/// True iff every run has the same signature.
bool compatibility_check(const std::vector<PrimeRun>& runs);

/// Lifted characteristic-0 candidate.
struct Candidate {
  FractionSet<Rational> closure;    // lifted canonical set over Δ
  FractionSet<Rational> minimized;  // over δ
  ClosurePresentation<Rational> presentation;
};

struct Certificate {
  bool gb_check = false;
  bool containment_check = false;
  std::vector<std::pair<std::uint64_t, bool>> per_prime;
  bool accepted = false;
  Polynomial<Rational> residual;  // normal form of f(psi) by the candidate relations
};

struct LiftState {
  std::vector<std::uint64_t> primes;
  mpz_class N;
  PolyList<Integer> gens;       // canonical set mod N, descending
  PolyList<Integer> numerators; // numerators of ybar_J..ybar_1 mod N
  PolyList<Integer> relations;
  Polynomial<Integer> psi;
  std::optional<Candidate> candidate;
  std::string lift_error;  // set when rational reconstruction failed
};

/// Reconciles compatible runs by CRT and lifts by rational reconstruction.
LiftState reconcile(const std::vector<PrimeRun>& runs);

/// Gröbner and containment checks of the lifted candidate against f.
Certificate verify_candidate(const Candidate& c, const Polynomial<Rational>& f, const std::vector<PrimeRun>& runs = {});

/// Substitutes psi for the dependent variable of f, in the presentation ring.
Polynomial<Rational> substitute_psi(const Polynomial<Rational>& f, const ClosurePresentation<Rational>& p);

struct LiftConfig {
  std::vector<std::uint64_t> primes;  // explicit schedule; empty means ascending from start_prime
  bool extend_primes = false;         // continue ascending after an explicit schedule runs out
  std::uint64_t start_prime = 5;
  std::size_t max_primes = 25;   // usable primes
  std::size_t max_tried = 400;   // all primes examined
  std::size_t max_iter = 64;
  std::size_t parallel = 0;      // primes examined per batch; 0 picks the hardware concurrency
  std::function<void(const std::string&)> log;
};

struct LiftStep {
  LiftState state;
  std::optional<Certificate> certificate;
};

struct LiftResult {
  Polynomial<Rational> delta0;
  std::vector<PrimeRun> runs;  // every prime examined, in schedule order
  std::vector<LiftStep> steps; // one per usable prime added
  std::optional<Candidate> candidate;
  Certificate certificate;
  bool accepted = false;
  std::string reason;  // why the run stopped without acceptance
  std::vector<std::string> audit;
};

/// Multi-modular closure over Q: per-prime closures, CRT, rational
/// reconstruction and certification, adding primes until a candidate is
/// accepted or the budget is exhausted.
LiftResult run_multimodular(const Polynomial<Rational>& f, const LiftConfig& config = {});

}  // namespace qth
