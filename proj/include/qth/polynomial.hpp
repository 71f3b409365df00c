#pragma once

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qth/ring.hpp"

namespace qth {

template <class K>
struct Term {
  K coef;
  Monomial mono;

  bool operator==(const Term&) const = default;
};

/// Sparse polynomial: nonzero terms, strictly descending under the ring order.
template <class K>
class Polynomial {
 public:
  using Coefficient = K;

  Polynomial() = default;
  explicit Polynomial(RingPtr<K> ring) : ring_(std::move(ring)) {}

  /// Sorts and combines arbitrary terms; zero coefficients are dropped.
  static Polynomial from_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
    Polynomial p(std::move(ring));
    const auto& ord = p.ring_->order();
    for (const auto& t : terms) {
      if (t.mono.size() != p.ring_->nvars()) throw DimensionError("term has the wrong variable count");
    }
    std::sort(terms.begin(), terms.end(),
              [&ord](const Term<K>& a, const Term<K>& b) { return ord.compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
        if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      } else if (!t.coef.is_zero()) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }
  /// Trusts the caller: terms already nonzero and strictly descending.
  static Polynomial from_sorted_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }
  static Polynomial term(RingPtr<K> ring, K c, Monomial m) {
    Polynomial p(std::move(ring));
    if (m.size() != p.ring_->nvars()) throw DimensionError("term has the wrong variable count");
    if (!c.is_zero()) p.terms_.push_back({std::move(c), std::move(m)});
    return p;
  }
  static Polynomial constant(RingPtr<K> ring, K c) {
    Monomial one = ring->one_monomial();
    return term(std::move(ring), std::move(c), std::move(one));
  }
  static Polynomial one(RingPtr<K> ring) {
    K u = ring->unit();
    return constant(std::move(ring), std::move(u));
  }
  static Polynomial variable(RingPtr<K> ring, std::size_t index, std::int32_t power = 1) {
    if (index >= ring->nvars()) throw DimensionError("variable index out of range");
    Monomial m = Monomial::variable(ring->nvars(), index, power);
    K u = ring->unit();
    return term(std::move(ring), std::move(u), std::move(m));
  }

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef.is_one(); }

  const Term<K>& lt() const {
    require_nonzero();
    return terms_.front();
  }
  const Monomial& lm() const { return lt().mono; }
  /// Removes the leading term.
  void drop_lead() {
    require_nonzero();
    terms_.erase(terms_.begin());
  }
  const K& lc() const { return lt().coef; }
  bool is_monic() const { return !terms_.empty() && terms_.front().coef.is_one(); }

  /// Coefficient of m (zero when absent).
  K coefficient(const Monomial& m) const {
    const auto& ord = ring_->order();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [&ord](const Term<K>& t, const Monomial& x) { return ord.compare(t.mono, x) > 0; });
    if (it != terms_.end() && it->mono == m) return it->coef;
    return ring_->zero();
  }

  /// True when no term involves a dependent variable.
  bool in_base() const {
    return std::all_of(terms_.begin(), terms_.end(), [this](const Term<K>& t) { return ring_->in_base(t.mono); });
  }
  std::int32_t degree_in(std::size_t var) const {
    std::int32_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }
  std::int64_t total_degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

  /// c * m * this; the order is multiplicative so no resorting is needed.
  Polynomial mul_term(const K& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.coef * c, t.mono * m});
    return r;
  }
  friend Polynomial operator*(const K& c, const Polynomial& p) {
    Polynomial r(p.ring_);
    if (c.is_zero()) return r;
    r.terms_ = p.terms_;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.mul_term(a.terms_[0].coef, a.terms_[0].mono);
    if (b.size() == 1) return a.mul_term(b.terms_[0].coef, b.terms_[0].mono);
    std::vector<Term<K>> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) prod.push_back({s.coef * t.coef, s.mono * t.mono});
    }
    return from_terms(a.ring_, std::move(prod));
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial pow(unsigned k) const {
    Polynomial result = one(ring_);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// Divides by the leading coefficient.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return lc().inverse() * *this;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw DimensionError("variable index out of range");
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      const std::int32_t e = t.mono[var];
      if (e == 0) continue;
      Monomial m = t.mono;
      m[var] = e - 1;
      out.push_back({t.coef * ring_->scalar(mpq_class(e)), std::move(m)});
    }
    return from_terms(ring_, std::move(out));
  }

  /// Same polynomial viewed in a ring that differs only in its order.
  Polynomial in_ring(RingPtr<K> other) const {
    if (other->nvars() != ring_->nvars()) throw DimensionError("rings over different variable counts");
    return from_terms(std::move(other), terms_);
  }

  /// Applies f to every coefficient; monomials are kept.
  template <class K2, class F>
  Polynomial<K2> map_coefficients(RingPtr<K2> other, F&& f) const {
    if (other->nvars() != ring_->nvars()) throw DimensionError("rings over different variable counts");
    std::vector<Term<K2>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({f(t.coef), t.mono});
    return Polynomial<K2>::from_terms(std::move(other), std::move(out));
  }

  bool operator==(const Polynomial& b) const {
    if (ring_ && b.ring_ && !ring_->same_as(*b.ring_)) return false;
    return terms_ == b.terms_;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      const bool neg = t.coef.is_negative();
      if (i == 0) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      out += format_term(neg ? -t.coef : t.coef, t.mono, ring_->names());
    }
    return out;
  }

  /// "a*x^i*y" style monomial text; "1" for the unit monomial.
  static std::string format_monomial(const Monomial& m, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names[i];
      if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  static std::string format_term(const K& c, const Monomial& m, const std::vector<std::string>& names) {
    if (m.is_one()) return c.str();
    if (c.is_one()) return format_monomial(m, names);
    return c.str() + "*" + format_monomial(m, names);
  }

  void require_nonzero() const {
    if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  }

  static void check(const Polynomial& a, const Polynomial& b) {
    if (!a.ring_ || !b.ring_) throw DomainError("polynomial without a ring");
    if (a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_)) throw DomainError("polynomials from different rings");
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check(a, b);
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    const auto& ord = a.ring_->order();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      const auto c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j]);
        if (subtract) r.terms_.back().coef = -r.terms_.back().coef;
        ++j;
      } else {
        K s = subtract ? a.terms_[i].coef - b.terms_[j].coef : a.terms_[i].coef + b.terms_[j].coef;
        if (!s.is_zero()) r.terms_.push_back({std::move(s), a.terms_[i].mono});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.size(); ++j) {
      r.terms_.push_back(b.terms_[j]);
      if (subtract) r.terms_.back().coef = -r.terms_.back().coef;
    }
    return r;
  }

  RingPtr<K> ring_;
  std::vector<Term<K>> terms_;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const Polynomial<K>& p) {
  return os << p.str();
}

}  // namespace qth
