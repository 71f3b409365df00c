#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qth/lifting.hpp"

namespace qth {

/// Line-oriented problem description:
///
///   indvars: x
///   depvar: y
///   weights: [[3,2]]
///   relation: y^2 - 3/2*x^3 + 24/7*x^2 - 96/49*x
///   characteristic: 0            (optional)
///
/// Weight columns follow the ring's variable order: the dependent variable
/// first, then the independent ones. '#' starts a comment line; an indented
/// line continues the previous value.
struct ProblemFile {
  std::vector<std::string> indvars;
  std::string depvar;
  IntMatrix weights;
  std::string relation;
  std::optional<std::uint64_t> characteristic;

  RingPtr<Rational> ring() const;
  Polynomial<Rational> polynomial() const;
};

/// Throws ParseError (with line and column) for malformed text, and
/// InputError or DimensionError for a problem that does not validate.
ProblemFile parse_problem(const std::string& text);

/// Canonical text of a problem; parse_problem(format_problem(p)) reproduces p.
std::string format_problem(const ProblemFile& p);

enum class OutputFormat { Text, Structured };

/// Polynomial text with terms sharing a monomial in the first `ngroup`
/// variables collected, e.g. "ybar*(x - 8/7)".
template <class K>
std::string format_grouped(const Polynomial<K>& p, std::size_t ngroup);

std::string emit_char0(const LiftResult& res, OutputFormat fmt);

struct CharQResult {
  std::uint64_t q = 0;
  Polynomial<ModP> delta;        // Δ^(q)
  FractionSet<ModP> closure;     // over Δ^(q)
  FractionSet<ModP> minimized;   // over δ^(q)
  ClosurePresentation<ModP> presentation;
  std::size_t iterations = 0;
};

/// Conductor, Qth-power closure and presentation of f modulo q.
CharQResult run_charq(const Polynomial<Rational>& f, std::uint64_t q, std::size_t max_iter = 64);

std::string emit_charq(const CharQResult& res, OutputFormat fmt);

}  // namespace qth
