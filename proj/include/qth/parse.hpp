#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "qth/polynomial.hpp"

namespace qth {

namespace detail {

// Recursive descent over  expr := ['+'|'-'] term (('+'|'-') term)*
//                         term := factor (('*' factor) | ('/' integer))*
//                       factor := primary ['^' integer]
//                      primary := integer | name | '(' expr ')'
template <class K>
class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr<K> ring, int line, int column)
      : s_(text), ring_(std::move(ring)), line_(line), col0_(column) {}

  Polynomial<K> parse() {
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    Polynomial<K> p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, col0_ + static_cast<int>(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<K> expr() {
    Polynomial<K> acc(ring_);
    bool neg = false;
    if (eat('-')) {
      neg = true;
    } else {
      eat('+');
    }
    Polynomial<K> t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> term() {
    Polynomial<K> acc = factor();
    for (;;) {
      if (eat('*')) {
        acc *= factor();
      } else if (eat('/')) {
        skip();
        mpz_class d = integer();
        if (d == 0) fail("division by zero");
        acc = ring_->scalar(mpq_class(mpz_class(1), d)) * acc;
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> factor() {
    Polynomial<K> base = primary();
    if (eat('^')) {
      skip();
      mpz_class e = integer();
      if (!e.fits_uint_p() || e > 100000) fail("exponent out of range");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Polynomial<K> primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<K> p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial<K>::constant(ring_, ring_->scalar(mpq_class(integer())));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      const int idx = ring_->index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial<K>::variable(ring_, static_cast<std::size_t>(idx));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  RingPtr<K> ring_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

}  // namespace detail

/// Parses `3/4*y^2*x - 15/17*x^4 + 1` style text over the ring's variables.
/// `line`/`column` locate the text inside a larger file for error messages.
template <class K>
Polynomial<K> parse_polynomial(std::string_view text, const RingPtr<K>& ring, int line = 1, int column = 1) {
  return detail::PolyParser<K>(text, ring, line, column).parse();
}

}  // namespace qth
