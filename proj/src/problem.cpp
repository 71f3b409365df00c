#include "qth/problem.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qth/conductor.hpp"
#include "qth/parse.hpp"
#include "qth/weights.hpp"

namespace qth {

namespace {

using json = nlohmann::json;

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// A key's value, possibly spread over continuation lines, with the file
// position of each character so that errors point into the source.
struct Value {
  std::string text;
  std::vector<std::pair<int, int>> pos;  // (line, column) per character
  int line = 0;
  int column = 0;

  void append(const std::string& s, int ln, int col) {
    if (!text.empty()) {
      text += ' ';
      pos.emplace_back(ln, col);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      text += s[i];
      pos.emplace_back(ln, col + static_cast<int>(i));
    }
  }
  [[noreturn]] void fail(const std::string& what, std::size_t offset = 0) const {
    if (offset < pos.size()) throw ParseError(what, pos[offset].first, pos[offset].second);
    if (!pos.empty()) throw ParseError(what, pos.back().first, pos.back().second + 1);
    throw ParseError(what, line, column);
  }
};

std::pair<std::size_t, std::size_t> trimmed(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return {a, b};
}

std::vector<std::pair<std::string, std::size_t>> split_names(const std::string& s) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i])))) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ',' && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start), start);
  }
  return out;
}

IntMatrix parse_weights(const Value& v) {
  json j;
  try {
    j = json::parse(v.text);
  } catch (const json::parse_error& e) {
    v.fail("malformed weight matrix", e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_array() || j.empty()) v.fail("weights must be a non-empty list of rows");
  IntMatrix rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) v.fail("each weight row must be a non-empty list");
    std::vector<std::int64_t> r;
    for (const auto& e : row) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0) v.fail("weights must be non-negative integers");
      r.push_back(e.get<std::int64_t>());
    }
    if (!rows.empty() && r.size() != rows.front().size()) v.fail("weight rows differ in length");
    rows.push_back(std::move(r));
  }
  return rows;
}

const std::set<std::string> kKeys{"indvars", "depvar", "weights", "relation", "characteristic"};

}  // namespace

RingPtr<Rational> ProblemFile::ring() const {
  std::vector<std::string> names{depvar};
  names.insert(names.end(), indvars.begin(), indvars.end());
  return make_ring<Rational>(std::move(names), 1, OrderKind::WeightOverGrevlex, WeightMatrix(weights), Rational(1L));
}

Polynomial<Rational> ProblemFile::polynomial() const { return parse_polynomial(relation, ring()); }

ProblemFile parse_problem(const std::string& text) {
  std::map<std::string, Value> values;
  std::istringstream in(text);
  std::string line;
  std::string last;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto [a, b] = trimmed(line);
    if (a == b || line[a] == '#') continue;
    if (a > 0 && !last.empty()) {
      values[last].append(line.substr(a, b - a), ln, static_cast<int>(a) + 1);
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", ln, static_cast<int>(a) + 1);
    const auto [ka, kb] = trimmed(line.substr(0, colon));
    const std::string key = line.substr(ka, kb - ka);
    if (!kKeys.count(key)) throw ParseError("unknown key '" + key + "'", ln, static_cast<int>(ka) + 1);
    if (values.count(key)) throw ParseError("duplicate key '" + key + "'", ln, static_cast<int>(ka) + 1);
    Value& v = values[key];
    const std::string rest = line.substr(colon + 1);
    const auto [va, vb] = trimmed(rest);
    v.line = ln;
    v.column = static_cast<int>(colon + 2 + va);
    if (va < vb) v.append(rest.substr(va, vb - va), ln, v.column);
    last = key;
  }
  for (const char* key : {"indvars", "depvar", "weights", "relation"}) {
    if (!values.count(key) || values[key].text.empty()) throw InputError(std::string("missing '") + key + "'");
  }

  ProblemFile p;
  const Value& iv = values["indvars"];
  for (const auto& [name, off] : split_names(iv.text)) {
    if (!is_identifier(name)) iv.fail("invalid variable name '" + name + "'", off);
    if (std::find(p.indvars.begin(), p.indvars.end(), name) != p.indvars.end()) {
      iv.fail("repeated variable '" + name + "'", off);
    }
    p.indvars.push_back(name);
  }
  const Value& dv = values["depvar"];
  const auto deps = split_names(dv.text);
  if (deps.size() != 1) throw DimensionError("exactly one dependent variable is supported");
  if (!is_identifier(deps[0].first)) dv.fail("invalid variable name '" + deps[0].first + "'");
  p.depvar = deps[0].first;
  if (std::find(p.indvars.begin(), p.indvars.end(), p.depvar) != p.indvars.end()) {
    dv.fail("'" + p.depvar + "' is also an independent variable");
  }
  p.weights = parse_weights(values["weights"]);
  if (p.weights.front().size() != p.indvars.size() + 1) {
    throw DimensionError("weight matrix has " + std::to_string(p.weights.front().size()) + " columns for " +
                         std::to_string(p.indvars.size() + 1) + " variables");
  }
  if (values.count("characteristic")) {
    const Value& cv = values["characteristic"];
    if (cv.text.empty() || !std::all_of(cv.text.begin(), cv.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        cv.text.size() > 18) {
      cv.fail("characteristic must be a non-negative integer");
    }
    const auto q = std::stoull(cv.text);
    if (q != 0 && !is_prime(q)) cv.fail("characteristic must be 0 or a prime");
    p.characteristic = q;
  }

  const Value& rv = values["relation"];
  p.relation = rv.text;
  RingPtr<Rational> ring;
  try {
    ring = p.ring();
  } catch (const ConstructionError& e) {
    values["weights"].fail(e.what());
  }
  Polynomial<Rational> f(ring);
  try {
    f = parse_polynomial(rv.text, ring, 1, 1);
  } catch (const ParseError& e) {
    const std::string w = e.what();
    rv.fail(w.substr(w.find(' ') + 1), static_cast<std::size_t>(e.column() - 1));
  }
  WeightCheck check;
  try {
    check = validate_weight_function(f, ring->weights(), 0);
  } catch (const InputError& e) {
    rv.fail(e.what());
  }
  if (!check.accepted) throw InputError("weight function rejected: " + check.reason);
  return p;
}

std::string format_problem(const ProblemFile& p) {
  std::ostringstream os;
  os << "indvars: ";
  for (std::size_t i = 0; i < p.indvars.size(); ++i) os << (i ? ", " : "") << p.indvars[i];
  os << "\ndepvar: " << p.depvar << "\nweights: " << json(p.weights).dump() << "\nrelation: " << p.polynomial().str()
     << "\n";
  if (p.characteristic) os << "characteristic: " << *p.characteristic << "\n";
  return os.str();
}

template <class K>
std::string format_grouped(const Polynomial<K>& p, std::size_t ngroup) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, std::vector<Term<K>>>> groups;
  for (const auto& t : p.terms()) {
    Monomial key(t.mono.size());
    Monomial rest = t.mono;
    for (std::size_t i = 0; i < ngroup; ++i) {
      key[i] = t.mono[i];
      rest[i] = 0;
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back({t.coef, rest});
  }
  std::string out;
  for (auto& [key, ts] : groups) {
    std::string piece;
    if (ts.size() == 1 || key.is_one()) {
      std::vector<Term<K>> full;
      for (const auto& t : ts) full.push_back({t.coef, t.mono * key});
      piece = Polynomial<K>::from_terms(p.ring(), std::move(full)).str();
    } else {
      auto inner = Polynomial<K>::from_terms(p.ring(), std::move(ts));
      const bool flip = inner.lc().is_negative();
      piece = (flip ? "-" : "") + Polynomial<K>::format_monomial(key, p.ring()->names()) + "*(" +
              (flip ? -inner : inner).str() + ")";
    }
    const bool neg = piece[0] == '-';
    if (neg) piece.erase(0, 1);
    if (out.empty()) {
      out = neg ? "-" + piece : piece;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

template std::string format_grouped(const Polynomial<Rational>&, std::size_t);
template std::string format_grouped(const Polynomial<ModP>&, std::size_t);

namespace {

std::string weight_text(const std::vector<WeightVector>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : ",") + to_string(w);
  return s;
}

json weight_json(const std::vector<WeightVector>& ws) {
  json j = json::array();
  for (const auto& w : ws) j.push_back(w);
  return j;
}

template <class K>
std::vector<std::string> strs(const PolyList<K>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

// Fields shared by both modes: denominators, numerators and the presentation.
template <class K>
void emit_closure(std::ostream& os, json& j, OutputFormat fmt, const Polynomial<K>& Delta,
                  const FractionSet<K>& minimized, const ClosurePresentation<K>& pres) {
  const auto& names = pres.ring->names();
  const std::size_t J = pres.numerators.size();
  const std::string psi = format_grouped(pres.psi, J);
  std::vector<std::string> relations = strs(pres.relations);
  if (fmt == OutputFormat::Structured) {
    j["Delta"] = Delta.str();
    j["delta"] = minimized.delta.str();
    j["variables"] = names;
    j["induced_weights"] = weight_json(pres.all_weights());
    json nums = json::array();
    for (std::size_t i = 0; i < J; ++i) nums.push_back({{"name", names[i]}, {"numerator", pres.numerators[i].str()}});
    j["numerators"] = nums;
    j["relations"] = relations;
    j["psi"] = psi;
    return;
  }
  os << "Delta: " << Delta.str() << "\n";
  os << "delta: " << minimized.delta.str() << "\n";
  os << "variables: ";
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
  os << "\n";
  if (!pres.ring->weights().empty()) os << "induced_weights: " << weight_text(pres.all_weights()) << "\n";
  for (std::size_t i = 0; i < J; ++i) os << "numerator " << names[i] << ": " << pres.numerators[i].str() << "\n";
  if (relations.empty()) os << "relations: (none)\n";
  for (const auto& r : relations) os << "relation: " << r << "\n";
  os << "psi(" << minimized.ring->names()[0] << "): " << psi << "\n";
}

std::string finish(std::ostringstream& os, json& j, OutputFormat fmt) {
  if (fmt == OutputFormat::Structured) return j.dump(2) + "\n";
  return os.str();
}

}  // namespace

std::string emit_char0(const LiftResult& res, OutputFormat fmt) {
  std::ostringstream os;
  json j;
  std::vector<std::uint64_t> used;
  mpz_class N = 0;
  if (!res.steps.empty()) {
    used = res.steps.back().state.primes;
    N = res.steps.back().state.N;
  }
  if (fmt == OutputFormat::Structured) {
    j["mode"] = "char0";
    j["accepted"] = res.accepted;
    if (!res.accepted) j["reason"] = res.reason;
    j["primes_used"] = used;
    j["modulus"] = N.get_str();
    json runs = json::array();
    for (const auto& r : res.runs) {
      json e{{"prime", r.q}, {"usable", r.usable}};
      if (!r.usable) e["reason"] = r.reason;
      runs.push_back(e);
    }
    j["primes"] = runs;
  } else {
    os << "mode: char0\n";
    os << "status: " << (res.accepted ? "accepted" : "not accepted") << "\n";
    if (!res.accepted) os << "reason: " << res.reason << "\n";
    for (const auto& r : res.runs) {
      if (!r.usable) os << "skipped prime " << r.q << ": " << r.reason << "\n";
    }
    os << "primes: ";
    for (std::size_t i = 0; i < used.size(); ++i) os << (i ? "," : "") << used[i];
    os << "\nmodulus: " << N.get_str() << "\n";
  }
  if (res.candidate) {
    emit_closure(os, j, fmt, res.candidate->closure.delta, res.candidate->minimized, res.candidate->presentation);
    const auto& c = res.certificate;
    if (fmt == OutputFormat::Structured) {
      json per = json::array();
      for (const auto& [q, ok] : c.per_prime) per.push_back({{"prime", q}, {"pass", ok}});
      j["certificate"] = {{"gb", c.gb_check}, {"containment", c.containment_check}, {"per_prime", per}};
      if (!c.containment_check) j["residual"] = c.residual.str();
    } else {
      os << "certificate: gb=" << (c.gb_check ? "pass" : "fail")
         << " containment=" << (c.containment_check ? "pass" : "fail") << "\n";
      os << "per_prime:";
      for (const auto& [q, ok] : c.per_prime) os << " " << q << "=" << (ok ? "pass" : "fail");
      os << "\n";
      if (!c.containment_check) os << "residual: " << c.residual.str() << "\n";
    }
  } else if (fmt == OutputFormat::Structured) {
    j["Delta"] = res.delta0.str();
  } else {
    os << "Delta: " << res.delta0.str() << "\n";
  }
  return finish(os, j, fmt);
}

CharQResult run_charq(const Polynomial<Rational>& f, std::uint64_t q, std::size_t max_iter) {
  if (!is_prime(q)) throw InputError(std::to_string(q) + " is not prime");
  require_simple_extension(f);
  const auto ring = with_coefficients<ModP>(*f.ring(), ModP(1, q));
  const auto fq = reduce_mod(f, ring);
  CharQResult out;
  out.q = q;
  out.delta = canonical_conductor(PolyList<ModP>{fq}).delta;
  ClosureTrace trace;
  out.closure = qth_closure(fq, out.delta, max_iter, &trace);
  out.iterations = trace.iterations;
  out.minimized = minimize_denominator(out.closure);
  out.presentation = induce_presentation(out.minimized, fq);
  return out;
}

std::string emit_charq(const CharQResult& res, OutputFormat fmt) {
  std::ostringstream os;
  json j;
  if (fmt == OutputFormat::Structured) {
    j["mode"] = "charq";
    j["prime"] = res.q;
    j["iterations"] = res.iterations;
  } else {
    os << "mode: charq\nprime: " << res.q << "\niterations: " << res.iterations << "\n";
  }
  emit_closure(os, j, fmt, res.delta, res.minimized, res.presentation);
  return finish(os, j, fmt);
}

}  // namespace qth
