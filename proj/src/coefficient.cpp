#include "qth/coefficient.hpp"

namespace qth {

std::string CoefficientDomain::str() const {
  switch (kind) {
    case Kind::Int: return "ZZ";
    case Kind::Rat: return "QQ";
    case Kind::ModP: return "ZZ/" + std::to_string(modulus);
  }
  return "?";
}

Rational::Rational(long num, long den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

ModP::ModP(std::int64_t v, std::uint64_t q) : q_(q) {
  if (q < 2) throw DomainError("modulus must be at least 2");
  std::int64_t r = v % static_cast<std::int64_t>(q);
  if (r < 0) r += static_cast<std::int64_t>(q);
  v_ = static_cast<std::uint64_t>(r);
}

ModP ModP::from_integer(const mpz_class& v, std::uint64_t q) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(q));
  if (r < 0) r += static_cast<unsigned long>(q);
  return raw(r.get_ui(), q);
}

ModP ModP::from_rational(const mpq_class& r, const ModP& like) {
  const std::uint64_t q = like.q_;
  ModP den = from_integer(r.get_den(), q);
  if (den.is_zero()) {
    throw DomainError("denominator of " + r.get_str() + " vanishes modulo " + std::to_string(q));
  }
  return from_integer(r.get_num(), q) / den;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw ArithmeticError("division by zero modulo " + std::to_string(q_));
  // extended Euclid on signed 128-bit to stay exact for any 64-bit modulus
  __int128 r0 = q_, r1 = v_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 t = r0 / r1;
    __int128 r2 = r0 - t * r1;
    r0 = r1;
    r1 = r2;
    __int128 s2 = s0 - t * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) {
    throw ArithmeticError("modulus " + std::to_string(q_) + " is not prime: " + std::to_string(v_) +
                          " has no inverse");
  }
  if (s0 < 0) s0 += q_;
  return raw(static_cast<std::uint64_t>(s0), q_);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these bases are deterministic for all n < 2^64
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

}  // namespace qth
