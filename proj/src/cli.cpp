#include "qth/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "qth/problem.hpp"

namespace qth {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral closure of P[y]/<f> by the Qth-power algorithm, over Z_q or over Q by multi-modular lifting"};
  app.name("qthclosure");
  std::string path;
  std::string mode;
  std::string format = "text";
  std::string log_path;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> primes;
  bool extend = false;
  bool canonical = false;
  LiftConfig config;
  app.add_option("problem", path, "problem file, or - for standard input")->required();
  app.add_option("--mode", mode, "char0 (multi-modular over Q) or charq (one prime field)")
      ->check(CLI::IsMember({"char0", "charq"}));
  app.add_option("--prime", prime, "characteristic for charq mode");
  app.add_option("--primes", primes, "explicit prime schedule for char0 mode")->delimiter(',');
  app.add_flag("--extend-primes", extend, "continue with larger primes after --primes runs out");
  app.add_option("--start-prime", config.start_prime, "first prime of the default schedule")->capture_default_str();
  app.add_option("--max-primes", config.max_primes, "usable primes before giving up")->capture_default_str();
  app.add_option("--max-tried", config.max_tried, "primes examined before giving up")->capture_default_str();
  app.add_option("--max-iter", config.max_iter, "Qth-power iteration limit")->capture_default_str();
  app.add_option("--threads", config.parallel, "primes examined concurrently (0: hardware concurrency)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
  app.add_option("--log", log_path, "write the audit log to this file");
  app.add_flag("--canonical", canonical, "print the parsed problem in canonical form and exit");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  ProblemFile problem;
  Polynomial<Rational> f;
  try {
    problem = parse_problem(read_input(path));
    f = problem.polynomial();
  } catch (const Error& e) {
    const bool positioned = dynamic_cast<const ParseError*>(&e) != nullptr;
    err << "qthclosure: " << (path == "-" ? "<stdin>" : path) << (positioned ? ":" : ": ") << e.what() << "\n";
    return kExitInput;
  }
  if (canonical) {
    out << format_problem(problem);
    return kExitOk;
  }
  if (mode.empty()) mode = problem.characteristic.value_or(0) > 0 || prime > 0 ? "charq" : "char0";
  if (mode == "charq" && prime == 0) prime = problem.characteristic.value_or(0);
  if (mode == "charq" && prime == 0) {
    err << "qthclosure: charq mode needs --prime or a nonzero characteristic\n";
    return kExitInput;
  }
  if (mode == "char0" && problem.characteristic.value_or(0) > 0) {
    err << "qthclosure: char0 mode requested for a problem of characteristic " << *problem.characteristic << "\n";
    return kExitInput;
  }
  const OutputFormat fmt = format == "structured" ? OutputFormat::Structured : OutputFormat::Text;

  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path);
    if (!log) {
      err << "qthclosure: cannot write '" << log_path << "'\n";
      return kExitInput;
    }
  }

  try {
    if (mode == "charq") {
      const auto res = run_charq(f, prime, config.max_iter);
      if (log.is_open()) log << "prime " << prime << ": delta=" << res.delta.str() << " iterations=" << res.iterations << "\n";
      out << emit_charq(res, fmt);
      return kExitOk;
    }
    config.primes = primes;
    config.extend_primes = extend;
    if (log.is_open()) config.log = [&log](const std::string& line) { log << line << "\n"; };
    const auto res = run_multimodular(f, config);
    out << emit_char0(res, fmt);
    if (!res.accepted) err << "qthclosure: not accepted: " << res.reason << "\n";
    return res.accepted ? kExitOk : kExitNotAccepted;
  } catch (const InputError& e) {
    err << "qthclosure: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "qthclosure: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateError& e) {
    err << "qthclosure: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "qthclosure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace qth
