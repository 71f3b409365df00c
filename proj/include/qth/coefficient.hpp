#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "qth/error.hpp"

namespace qth {

/// Runtime description of a coefficient domain: the integers, the rationals,
/// or the prime field Z_q.
struct CoefficientDomain {
  enum class Kind { Int, Rat, ModP };
  Kind kind = Kind::Rat;
  std::uint64_t modulus = 0;  // only for ModP

  bool operator==(const CoefficientDomain&) const = default;
  std::string str() const;
  /// Characteristic of the domain (0 for Int and Rat).
  std::uint64_t characteristic() const { return kind == Kind::ModP ? modulus : 0; }
};

/// Arbitrary-precision integer. A ring, not a field: only units can be inverted.
class Integer {
 public:
  Integer() = default;
  Integer(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(mpz_class v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static Integer from_rational(const mpq_class& r, const Integer& /*like*/) {
    if (r.get_den() != 1) throw DomainError("non-integral value " + r.get_str() + " in integer domain");
    return Integer(mpz_class(r.get_num()));
  }
  Integer zero_like() const { return Integer(0L); }
  Integer one_like() const { return Integer(1L); }
  CoefficientDomain domain() const { return {CoefficientDomain::Kind::Int, 0}; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_negative() const { return sgn(v_) < 0; }
  Integer inverse() const {
    if (v_ == 1 || v_ == -1) return *this;
    throw ArithmeticError("integer " + v_.get_str() + " is not a unit");
  }
  const mpz_class& value() const { return v_; }
  mpq_class to_rational() const { return mpq_class(v_); }
  std::string str() const { return v_.get_str(); }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ + b.v_)); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ - b.v_)); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ * b.v_)); }
  friend Integer operator/(const Integer& a, const Integer& b) { return a * b.inverse(); }
  Integer operator-() const { return Integer(mpz_class(-v_)); }
  Integer& operator+=(const Integer& b) { v_ += b.v_; return *this; }
  Integer& operator-=(const Integer& b) { v_ -= b.v_; return *this; }
  Integer& operator*=(const Integer& b) { v_ *= b.v_; return *this; }
  bool operator==(const Integer& b) const { return v_ == b.v_; }

 private:
  mpz_class v_;
};

/// Arbitrary-precision rational, always reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }  // NOLINT(google-explicit-constructor)

  static Rational from_rational(const mpq_class& r, const Rational& /*like*/) { return Rational(r); }
  Rational zero_like() const { return Rational(0L); }
  Rational one_like() const { return Rational(1L); }
  CoefficientDomain domain() const { return {CoefficientDomain::Kind::Rat, 0}; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_negative() const { return sgn(v_) < 0; }
  Rational inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    return Rational(mpq_class(1 / v_));
  }
  const mpq_class& value() const { return v_; }
  mpq_class to_rational() const { return v_; }
  /// Always "a" or "a/b" with b > 0.
  std::string str() const { return v_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
  bool operator==(const Rational& b) const { return v_ == b.v_; }

 private:
  mpq_class v_;
};

/// Residue modulo a machine-word prime q, stored in [0, q).
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t v, std::uint64_t q);

  static ModP from_rational(const mpq_class& r, const ModP& like);
  static ModP from_integer(const mpz_class& v, std::uint64_t q);
  ModP zero_like() const { return ModP(0, q_); }
  ModP one_like() const { return ModP(1, q_); }
  CoefficientDomain domain() const { return {CoefficientDomain::Kind::ModP, q_}; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  /// Sign of the balanced representative.
  bool is_negative() const { return v_ > q_ / 2; }
  /// Throws ArithmeticError for zero, or when the modulus turns out composite.
  ModP inverse() const;

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return q_; }
  /// Representative in (-q/2, q/2].
  std::int64_t balanced() const {
    return v_ > q_ / 2 ? static_cast<std::int64_t>(v_) - static_cast<std::int64_t>(q_)
                       : static_cast<std::int64_t>(v_);
  }
  mpq_class to_rational() const { return mpq_class(static_cast<long>(balanced())); }
  std::string str() const { return std::to_string(balanced()); }

  friend ModP operator+(const ModP& a, const ModP& b) {
    check(a, b);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.q_) s -= a.q_;
    return raw(s, a.q_);
  }
  friend ModP operator-(const ModP& a, const ModP& b) {
    check(a, b);
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.q_ - b.v_, a.q_);
  }
  friend ModP operator*(const ModP& a, const ModP& b) {
    check(a, b);
    return raw(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v_) * b.v_ % a.q_), a.q_);
  }
  friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inverse(); }
  ModP operator-() const { return raw(v_ == 0 ? 0 : q_ - v_, q_); }
  ModP& operator+=(const ModP& b) { return *this = *this + b; }
  ModP& operator-=(const ModP& b) { return *this = *this - b; }
  ModP& operator*=(const ModP& b) { return *this = *this * b; }
  bool operator==(const ModP& b) const { return v_ == b.v_ && q_ == b.q_; }

 private:
  static ModP raw(std::uint64_t v, std::uint64_t q) {
    ModP r;
    r.v_ = v;
    r.q_ = q;
    return r;
  }
  static void check(const ModP& a, const ModP& b) {
    if (a.q_ != b.q_) throw DomainError("mixing residues modulo different primes");
  }

  std::uint64_t v_ = 0;
  std::uint64_t q_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Integer& c) { return os << c.str(); }
inline std::ostream& operator<<(std::ostream& os, const Rational& c) { return os << c.str(); }
inline std::ostream& operator<<(std::ostream& os, const ModP& c) { return os << c.str(); }

/// Deterministic primality test for 64-bit values.
bool is_prime(std::uint64_t n);
/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

}  // namespace qth
