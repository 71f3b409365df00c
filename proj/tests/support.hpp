#pragma once

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qth/groebner.hpp"
#include "qth/parse.hpp"

namespace qth::test {

inline RingPtr<Rational> qq(std::vector<std::string> names, std::size_t ndep, OrderKind kind = OrderKind::Grevlex,
                            IntMatrix w = {}) {
  return make_ring<Rational>(std::move(names), ndep, kind, WeightMatrix(std::move(w)), Rational(1L));
}

inline RingPtr<ModP> zq(std::uint64_t q, std::vector<std::string> names, std::size_t ndep,
                        OrderKind kind = OrderKind::Grevlex, IntMatrix w = {}) {
  return make_ring<ModP>(std::move(names), ndep, kind, WeightMatrix(std::move(w)), ModP(1, q));
}

template <class K>
Polynomial<K> poly(const RingPtr<K>& ring, const std::string& text) {
  return parse_polynomial<K>(text, ring);
}

template <class K>
PolyList<K> polys(const RingPtr<K>& ring, const std::vector<std::string>& texts) {
  PolyList<K> out;
  for (const auto& t : texts) out.push_back(poly(ring, t));
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return std::string(QTH_FIXTURE_DIR) + "/" + name; }

// Appendix relations use p_0..p_4 for the new variables (highest weight first) and p_5 for x.
inline std::string appendix_names(std::string s) {
  const std::pair<const char*, const char*> subs[] = {{"p_0", "ybar5"}, {"p_1", "ybar4"}, {"p_2", "ybar3"},
                                                      {"p_3", "ybar2"}, {"p_4", "ybar1"}, {"p_5", "x"}};
  for (const auto& [from, to] : subs) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from)) s.replace(pos, 3, to);
  }
  return s;
}

/// Comma separated polynomials (possibly spread over several lines).
inline std::vector<std::string> split_polys(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\n') {
      cur += c;
    }
  }
  if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
  return out;
}

inline std::vector<std::string> strs(const std::vector<Polynomial<Rational>>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

template <class K>
std::vector<std::string> sorted_strs(const PolyList<K>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  std::sort(out.begin(), out.end());
  return out;
}

/// Random sparse polynomial with small rational or residue coefficients.
template <class K>
Polynomial<K> random_poly(std::mt19937_64& rng, const RingPtr<K>& ring, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> exp(0, max_deg);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<Term<K>> ts;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<std::int32_t> e(ring->nvars());
    int budget = max_deg;
    for (auto& x : e) {
      x = std::min(exp(rng), budget);
      budget -= x;
    }
    const long d = ring->domain().kind == CoefficientDomain::Kind::ModP ? 1 : den(rng);
    ts.push_back({ring->scalar(mpq_class(mpz_class(num(rng)), mpz_class(d))), Monomial(std::move(e))});
  }
  return Polynomial<K>::from_terms(ring, std::move(ts));
}

}  // namespace qth::test
