#include "qth/lifting.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "qth/conductor.hpp"

namespace qth {

namespace {

mpz_class balanced(mpz_class c, const mpz_class& N) {
  c %= N;
  if (c < 0) c += N;
  if (c > N / 2) c -= N;
  return c;
}

template <class K>
std::string join(const PolyList<K>& ps) {
  std::string out;
  for (const auto& p : ps) out += (out.empty() ? "" : ", ") + p.str();
  return "[" + out + "]";
}

template <class K>
std::string lms(const PolyList<K>& ps) {
  std::string out;
  for (const auto& p : ps) {
    out += (out.empty() ? "" : ",") + Polynomial<K>::format_monomial(p.lm(), p.ring()->names());
  }
  return out;
}

PolyList<Integer> crt_lists(const std::vector<const PolyList<ModP>*>& lists) {
  PolyList<Integer> out;
  for (std::size_t i = 0; i < lists.front()->size(); ++i) {
    std::vector<Polynomial<ModP>> column;
    for (const auto* l : lists) column.push_back(l->at(i));
    out.push_back(crt_poly(column));
  }
  return out;
}

PolyList<Rational> lift_list(const PolyList<Integer>& ps, const mpz_class& N, const RingPtr<Rational>& ring) {
  PolyList<Rational> out;
  for (const auto& p : ps) out.push_back(lift_poly(p, N, ring));
  return out;
}

PolyList<ModP> reduce_list(const PolyList<Rational>& ps, const RingPtr<ModP>& ring) {
  PolyList<ModP> out;
  for (const auto& p : ps) out.push_back(reduce_mod(p, ring));
  return out;
}

std::string primes_str(const std::vector<std::uint64_t>& ps) {
  std::string out;
  for (auto q : ps) out += (out.empty() ? "" : ",") + std::to_string(q);
  return out;
}

}  // namespace

mpz_class mod_n(const mpq_class& r, const mpz_class& N) {
  if (N < 1) throw DomainError("modulus must be positive");
  mpz_class inv;
  const mpz_class den = r.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), N.get_mpz_t()) == 0) {
    if (N == 1) return 0;
    throw DomainError("mod-" + N.get_str() + " image of " + r.get_str() + " is undefined");
  }
  return balanced(mpz_class(r.get_num() * inv), N);
}

mpq_class rat_recon(const mpz_class& c, const mpz_class& N) {
  if (N < 1) throw DomainError("modulus must be positive");
  mpz_class r_prev = N, r = c % N;
  if (r < 0) r += N;
  mpz_class u_prev = 0, u = 1;
  // Step 0 (u = 1) is always admissible; later steps only when u is a unit mod N.
  mpz_class best_r = r, best_u = u;
  mpz_class best_norm = r * r + u * u;
  bool best_odd = false, odd = false;
  mpz_class g;
  while (r != 0) {
    const mpz_class Q = r_prev / r;
    mpz_class r_next = r_prev - Q * r;
    mpz_class u_next = Q * u + u_prev;
    r_prev = r;
    r = r_next;
    u_prev = u;
    u = u_next;
    odd = !odd;
    const mpz_class norm = r * r + u * u;
    if (norm >= best_norm) continue;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), N.get_mpz_t());
    if (g != 1) continue;
    best_norm = norm;
    best_r = r;
    best_u = u;
    best_odd = odd;
  }
  mpq_class out(best_odd ? mpz_class(-best_r) : best_r, best_u);
  out.canonicalize();
  return out;
}

mpz_class crt(const std::vector<std::pair<mpz_class, mpz_class>>& values) {
  if (values.empty()) throw InputError("crt of an empty list");
  mpz_class x = 0, M = 1;
  for (const auto& [a, m] : values) {
    if (m < 2) throw InputError("crt modulus must exceed 1");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), M.get_mpz_t(), m.get_mpz_t());
    if (g != 1) throw InputError("crt moduli must be pairwise coprime (" + m.get_str() + ")");
    // x + M*t = a (mod m)
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), M.get_mpz_t(), m.get_mpz_t());
    mpz_class t = ((a - x) * inv) % m;
    x += M * t;
    M *= m;
  }
  return balanced(x, M);
}

Polynomial<Integer> crt_poly(const std::vector<Polynomial<ModP>>& polys) {
  if (polys.empty()) throw InputError("crt of an empty list");
  const auto& first = polys.front();
  std::map<std::vector<std::int32_t>, std::vector<std::pair<mpz_class, mpz_class>>> coeffs;
  std::vector<std::pair<mpz_class, mpz_class>> zeros;
  for (const auto& p : polys) {
    const mpz_class q(static_cast<unsigned long>(p.ring()->domain().modulus));
    if (p.ring()->names() != first.ring()->names() || !(p.ring()->order() == first.ring()->order())) {
      throw CompatibilityError("crt of polynomials over different rings");
    }
    if (p.is_zero() != first.is_zero() || (!p.is_zero() && !(p.lm() == first.lm()))) {
      throw CompatibilityError("leading monomials differ across primes");
    }
    zeros.emplace_back(0, q);
  }
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& t : polys[i].terms()) coeffs.try_emplace(t.mono.exponents(), zeros);
  }
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& t : polys[i].terms()) coeffs[t.mono.exponents()][i].first = t.coef.balanced();
  }
  const auto ring = with_coefficients<Integer>(*first.ring(), Integer(1L));
  std::vector<Term<Integer>> ts;
  for (const auto& [mono, vals] : coeffs) ts.push_back({Integer(crt(vals)), Monomial(mono)});
  return Polynomial<Integer>::from_terms(ring, std::move(ts));
}

Polynomial<Rational> lift_poly(const Polynomial<Integer>& p, const mpz_class& N, const RingPtr<Rational>& ring) {
  return p.map_coefficients<Rational>(ring, [&](const Integer& c) { return Rational(rat_recon(c.value(), N)); });
}

Polynomial<ModP> reduce_mod(const Polynomial<Rational>& p, const RingPtr<ModP>& ring) {
  return p.map_coefficients<ModP>(ring, [&](const Rational& c) { return ModP::from_rational(c.value(), ring->unit()); });
}

PrimeCheck is_prime_usable(std::uint64_t q, const Polynomial<Rational>& f, const Polynomial<Rational>& delta0) {
  if (!is_prime(q)) throw InputError(std::to_string(q) + " is not prime");
  const mpz_class Q(static_cast<unsigned long>(q));
  PrimeCheck out;
  for (const auto* p : {&f, &delta0}) {
    for (const auto& t : p->terms()) {
      if (t.coef.value().get_den() % Q == 0) {
        out.reason = "divides a coefficient denominator";
        return out;
      }
    }
  }
  for (const auto& t : f.terms()) {
    if (t.coef.value().get_num() % Q == 0) {
      out.reason = "divides a coefficient numerator";
      return out;
    }
  }
  const auto ring = with_coefficients<ModP>(*f.ring(), ModP(1, q));
  try {
    out.delta = canonical_conductor(PolyList<ModP>{reduce_mod(f, ring)}).delta;
  } catch (const DegenerateError&) {
    out.reason = "no conductor element in P";
    return out;
  }
  if (!(*out.delta == reduce_mod(delta0, ring))) {
    out.reason = "conductor " + out.delta->str() + " differs from the image of " + delta0.str();
    return out;
  }
  out.usable = true;
  return out;
}

std::string PrimeRun::signature() const {
  if (!usable) return "unusable";
  return "g=" + lms(closure.gens) + ";r=" + lms(presentation.relations) +
         ";psi=" + Polynomial<ModP>::format_monomial(presentation.psi.lm(), presentation.ring->names());
}

PrimeRun run_prime(std::uint64_t q, const Polynomial<Rational>& f, const Polynomial<Rational>& delta0,
                   const ClosureOptions& opts) {
  PrimeRun run;
  run.q = q;
  auto check = is_prime_usable(q, f, delta0);
  if (check.delta) run.delta = *check.delta;
  if (!check.usable) {
    run.reason = check.reason;
    return run;
  }
  try {
    const auto fq = reduce_mod(f, run.delta.ring());
    run.closure = qth_closure(fq, run.delta, opts.max_iter);
    run.presentation = induce_presentation(run.closure, fq);
    run.usable = true;
  } catch (const Error& e) {
    run.reason = std::string("closure failed: ") + e.what();
  }
  return run;
}

bool compatibility_check(const std::vector<PrimeRun>& runs) {
  for (const auto& r : runs) {
    if (!r.usable || r.signature() != runs.front().signature()) return false;
  }
  return true;
}

LiftState reconcile(const std::vector<PrimeRun>& runs) {
  if (runs.empty()) throw InputError("nothing to reconcile");
  if (!compatibility_check(runs)) throw CompatibilityError("prime runs are not compatible");
  LiftState s;
  s.N = 1;
  std::vector<const PolyList<ModP>*> gens, nums, rels;
  std::vector<Polynomial<ModP>> psis;
  for (const auto& r : runs) {
    s.primes.push_back(r.q);
    s.N *= static_cast<unsigned long>(r.q);
    gens.push_back(&r.closure.gens);
    nums.push_back(&r.presentation.numerators);
    rels.push_back(&r.presentation.relations);
    psis.push_back(r.presentation.psi);
  }
  s.gens = crt_lists(gens);
  s.numerators = crt_lists(nums);
  s.relations = crt_lists(rels);
  s.psi = crt_poly(psis);

  const auto& first = runs.front();
  const auto src = with_coefficients<Rational>(*first.closure.ring, Rational(1L));
  const auto dst = with_coefficients<Rational>(*first.presentation.ring, Rational(1L));
  try {
    Candidate c;
    c.closure.ring = src;
    c.closure.gens = lift_list(s.gens, s.N, src);
    c.closure.delta = c.closure.g0();
    c.minimized = minimize_denominator(c.closure);
    const auto factor = exact_divide(c.closure.delta, c.minimized.delta);
    auto& p = c.presentation;
    p.ring = dst;
    p.source = c.minimized;
    for (const auto& g : lift_list(s.numerators, s.N, src)) p.numerators.push_back(exact_divide(g, factor));
    p.induced = first.presentation.induced;
    p.relations = lift_list(s.relations, s.N, dst);
    p.psi = lift_poly(s.psi, s.N, dst);
    s.candidate = std::move(c);
  } catch (const ReconstructionError& e) {
    s.lift_error = e.what();
  } catch (const ArithmeticError& e) {
    s.lift_error = e.what();
  }
  return s;
}

Polynomial<Rational> substitute_psi(const Polynomial<Rational>& f, const ClosurePresentation<Rational>& p) {
  const auto& src = f.ring();
  const auto& R = p.ring;
  const std::size_t J = R->ndep();
  std::vector<Polynomial<Rational>> powers{Polynomial<Rational>::one(R)};
  Polynomial<Rational> out(R);
  for (const auto& t : f.terms()) {
    const auto a = static_cast<std::size_t>(t.mono[0]);
    while (powers.size() <= a) powers.push_back(powers.back() * p.psi);
    std::vector<std::int32_t> e(J, 0);
    for (std::size_t i = src->ndep(); i < src->nvars(); ++i) e.push_back(t.mono[i]);
    out += powers[a].mul_term(t.coef, Monomial(std::move(e)));
  }
  return out;
}

Certificate verify_candidate(const Candidate& c, const Polynomial<Rational>& f, const std::vector<PrimeRun>& runs) {
  Certificate cert;
  const auto& p = c.presentation;
  cert.gb_check = is_minimal_reduced_gb(p.relations);
  cert.residual = normal_form(substitute_psi(f, p), p.relations);
  cert.containment_check = cert.residual.is_zero();
  for (const auto& r : runs) {
    if (!r.usable) continue;
    bool ok = false;
    try {
      ok = reduce_list(c.closure.gens, r.closure.ring) == r.closure.gens &&
           reduce_list(p.relations, r.presentation.ring) == r.presentation.relations &&
           reduce_mod(p.psi, r.presentation.ring) == r.presentation.psi;
    } catch (const DomainError&) {
      ok = false;
    }
    cert.per_prime.emplace_back(r.q, ok);
  }
  cert.accepted = cert.gb_check && cert.containment_check;
  return cert;
}

LiftResult run_multimodular(const Polynomial<Rational>& f, const LiftConfig& config) {
  require_simple_extension(f);
  if (config.max_primes < 1) throw InputError("max primes must be at least 1");
  LiftResult res;
  auto log = [&](const std::string& line) {
    res.audit.push_back(line);
    if (config.log) config.log(line);
  };

  res.delta0 = canonical_conductor(PolyList<Rational>{f}).delta;
  log("delta0: " + res.delta0.str());

  // Prime schedule.
  std::vector<std::uint64_t> schedule;
  for (auto q : config.primes) {
    if (!is_prime(q)) throw InputError(std::to_string(q) + " is not prime");
    if (std::find(schedule.begin(), schedule.end(), q) == schedule.end()) schedule.push_back(q);
  }
  const bool ascending = config.primes.empty() || config.extend_primes;
  std::uint64_t cursor = config.primes.empty() ? config.start_prime
                                               : *std::max_element(config.primes.begin(), config.primes.end()) + 1;
  if (cursor < 2) cursor = 2;
  std::size_t next_index = 0;
  auto next_prime_in_schedule = [&]() -> std::optional<std::uint64_t> {
    if (next_index < schedule.size()) return schedule[next_index++];
    if (!ascending) return std::nullopt;
    std::uint64_t q = is_prime(cursor) ? cursor : next_prime(cursor);
    while (std::find(schedule.begin(), schedule.end(), q) != schedule.end()) q = next_prime(q);
    cursor = q + 1;
    return q;
  };

  const std::size_t batch = config.parallel ? config.parallel : std::max(1U, std::thread::hardware_concurrency());
  const ClosureOptions opts{config.max_iter};
  std::vector<PrimeRun> usable;
  std::size_t tried = 0;
  std::optional<Certificate> last_cert;

  for (;;) {
    std::vector<std::uint64_t> qs;
    while (qs.size() < batch && tried + qs.size() < config.max_tried) {
      auto q = next_prime_in_schedule();
      if (!q) break;
      qs.push_back(*q);
    }
    if (qs.empty()) {
      res.reason = tried >= config.max_tried ? "prime budget exhausted" : "prime schedule exhausted";
      break;
    }
    std::vector<PrimeRun> batch_runs;
    if (qs.size() == 1) {
      batch_runs.push_back(run_prime(qs[0], f, res.delta0, opts));
    } else {
      std::vector<std::future<PrimeRun>> futures;
      for (auto q : qs) futures.push_back(std::async(std::launch::async, run_prime, q, std::cref(f),
                                                     std::cref(res.delta0), opts));
      for (auto& fu : futures) batch_runs.push_back(fu.get());
    }

    bool done = false;
    for (auto& run : batch_runs) {
      ++tried;
      res.runs.push_back(run);
      if (!run.usable) {
        log("prime " + std::to_string(run.q) + ": skipped: " + run.reason);
        continue;
      }
      log("prime " + std::to_string(run.q) + ": usable delta=" + run.delta.str() + " signature=" + run.signature());
      usable.push_back(run);

      // Largest group of mutually compatible runs; ties go to the group seen first.
      std::map<std::string, std::vector<std::size_t>> groups;
      std::vector<std::string> first_seen;
      for (std::size_t i = 0; i < usable.size(); ++i) {
        auto sig = usable[i].signature();
        if (!groups.count(sig)) first_seen.push_back(sig);
        groups[sig].push_back(i);
      }
      const std::string* chosen = &first_seen.front();
      for (const auto& sig : first_seen) {
        if (groups[sig].size() > groups[*chosen].size()) chosen = &sig;
      }
      std::vector<PrimeRun> group;
      for (auto i : groups[*chosen]) group.push_back(usable[i]);
      if (group.size() != usable.size()) {
        log("incompatible runs: using " + std::to_string(group.size()) + " of " + std::to_string(usable.size()) +
            " usable primes");
      }

      LiftStep step{reconcile(group), std::nullopt};
      const auto& s = step.state;
      std::ostringstream line;
      line << "lift N=" << s.N.get_str() << " primes=" << primes_str(s.primes) << ": gens=" << join(s.gens)
           << " relations=" << join(s.relations) << " psi=" << s.psi.str();
      if (s.candidate) {
        step.certificate = verify_candidate(*s.candidate, f, group);
        const auto& c = *step.certificate;
        line << " | lifted delta=" << s.candidate->closure.delta.str() << " relations="
             << join(s.candidate->presentation.relations) << " psi=" << s.candidate->presentation.psi.str()
             << " | gb=" << c.gb_check << " containment=" << c.containment_check << " accepted=" << c.accepted;
        res.candidate = s.candidate;
        last_cert = c;
      } else {
        line << " | lift failed: " << s.lift_error;
      }
      log(line.str());
      const bool accepted = step.certificate && step.certificate->accepted;
      res.steps.push_back(std::move(step));
      if (accepted) {
        res.accepted = true;
        done = true;
        break;
      }
      if (usable.size() >= config.max_primes) {
        res.reason = "usable prime limit reached without an accepted candidate";
        done = true;
        break;
      }
    }
    if (done) break;
  }
  if (last_cert) res.certificate = *last_cert;
  if (res.accepted) {
    log("accepted: N=" + res.steps.back().state.N.get_str());
  } else {
    if (res.reason.empty()) res.reason = "no accepted candidate";
    log("not accepted: " + res.reason);
  }
  return res;
}

}  // namespace qth
