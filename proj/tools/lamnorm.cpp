#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamnorm/church.hpp"
#include "lamnorm/cps.hpp"
#include "lamnorm/normalizers.hpp"
#include "lamnorm/oracle.hpp"
#include "lamnorm/representation.hpp"
#include "lamnorm/stack.hpp"
#include "lamnorm/syntax.hpp"

using json = nlohmann::json;
using namespace lamnorm;

namespace {

constexpr std::size_t kDefaultFuel = 100000;

// Exit codes shared by normalize/whnf/check:
//   0 normalized, 1 parse error, 2 diverged, 3 not CPS, 4 check disagreement
enum ExitCode {
  kOk = 0,
  kParseError = 1,
  kDiverged = 2,
  kNotCps = 3,
  kDisagreement = 4,
};

std::string read_all(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::pair<Name, TermPtr>> load_env(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open env file '" + path + "'", 0, 0);
  return parse_env(read_all(in));
}

TermPtr apply_env(TermPtr t, const std::vector<std::pair<Name, TermPtr>>& env) {
  // Definitions are closed after parse_env's inlining, so plain substitution
  // in any order is sound.
  for (const auto& [name, def] : env) t = subst(t, name, def);
  return t;
}

struct CommonOpts {
  std::string expr;
  bool from_stdin = false;
  std::string env_path;
  std::string strategy = "nbe";
  std::size_t fuel = kDefaultFuel;
  bool emit_json = false;
  bool ascii = true;
  bool unicode = false;
};

TermPtr parse_input(const CommonOpts& opts) {
  std::string text = opts.from_stdin ? read_all(std::cin) : opts.expr;
  TermPtr t = parse(text);
  if (!opts.env_path.empty()) t = apply_env(t, load_env(opts.env_path));
  return t;
}

int report(const CommonOpts& opts, const std::string& input, Strategy s,
           const NormalizeResult& r) {
  using Status = NormalizeResult::Status;
  bool ascii = !opts.unicode;
  if (opts.emit_json) {
    json rec;
    rec["input"] = input;
    rec["strategy"] = strategy_name(s);
    rec["fuel_limit"] = opts.fuel;
    rec["steps_used"] = r.steps;
    switch (r.status) {
    case Status::Normalized:
      rec["outcome"] = "normalized";
      rec["result"] = pretty(r.result, ascii);
      break;
    case Status::Diverged: rec["outcome"] = "diverged"; break;
    case Status::NotCps: rec["outcome"] = "not_cps"; break;
    }
    std::cout << rec.dump() << "\n";
  } else {
    switch (r.status) {
    case Status::Normalized:
      std::cout << pretty(r.result, ascii) << "\n";
      break;
    case Status::Diverged:
      std::cerr << "diverged after " << r.steps << " beta steps (fuel "
                << opts.fuel << ")\n";
      break;
    case Status::NotCps:
      std::cerr << "not a strict-CPS term (offending node at " << r.not_cps_path
                << ")\n";
      break;
    }
  }
  switch (r.status) {
  case Status::Normalized: return kOk;
  case Status::Diverged: return kDiverged;
  case Status::NotCps: return kNotCps;
  }
  return kParseError;
}

int emit_parse_error(const CommonOpts& opts, const std::string& input,
                     const ParseError& e) {
  if (opts.emit_json) {
    json rec;
    rec["input"] = input;
    rec["strategy"] = opts.strategy;
    rec["fuel_limit"] = opts.fuel;
    rec["steps_used"] = 0;
    rec["outcome"] = "parse_error";
    rec["error"] = std::string(e.what());
    std::cout << rec.dump() << "\n";
  } else {
    std::cerr << "parse error at " << e.line << ":" << e.column << ": "
              << e.what() << "\n";
  }
  return kParseError;
}

int run_normalize(const CommonOpts& opts, Strategy s) {
  std::string input = opts.from_stdin ? "<stdin>" : opts.expr;
  TermPtr t;
  try {
    t = parse_input(opts);
  } catch (const ParseError& e) {
    return emit_parse_error(opts, input, e);
  }
  return report(opts, input, s, normalize(t, s, opts.fuel));
}

// --- check ----------------------------------------------------------------

struct CheckRow {
  std::string strategy;
  bool normalized;
  TermPtr result;
  std::size_t steps;
  std::string note;
};

bool check_one(const TermPtr& t, std::size_t fuel, std::vector<CheckRow>& rows) {
  rows.clear();
  NormOutcome oracle = oracle_normalize(t, fuel);
  rows.push_back({"oracle", oracle.normalized, oracle.result, oracle.steps, {}});
  std::vector<Strategy> strategies = {Strategy::CBN, Strategy::CBV, Strategy::NBE};
  if (is_strict_cps(t)) strategies.push_back(Strategy::CPS);
  for (Strategy s : strategies) {
    NormalizeResult r = normalize(t, s, fuel);
    using Status = NormalizeResult::Status;
    rows.push_back({strategy_name(s), r.status == Status::Normalized, r.result,
                    r.steps,
                    r.status == Status::NotCps ? "not_cps" : std::string{}});
  }
  // all Normalized results must agree pairwise
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[i].normalized && rows[j].normalized &&
          !alpha_eq(rows[i].result, rows[j].result))
        return false;
  return true;
}

int run_check(const std::string& arg, std::size_t fuel) {
  std::vector<std::string> inputs;
  std::ifstream file(arg);
  if (file) {
    std::string line;
    while (std::getline(file, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      inputs.push_back(line);
    }
  } else {
    inputs.push_back(arg);
  }

  std::size_t checked = 0, disagreements = 0;
  std::vector<CheckRow> rows;
  for (const auto& input : inputs) {
    TermPtr t;
    try {
      t = parse(input);
    } catch (const ParseError& e) {
      std::cerr << "parse error in '" << input << "': " << e.what() << "\n";
      return kParseError;
    }
    bool agree = check_one(t, fuel, rows);
    ++checked;
    if (!agree) ++disagreements;
    std::cout << input << "\n";
    for (const auto& row : rows) {
      std::cout << "  " << row.strategy << ": ";
      if (row.normalized)
        std::cout << pretty(row.result) << "  (" << row.steps << " steps)";
      else if (!row.note.empty())
        std::cout << row.note;
      else
        std::cout << "diverged";
      std::cout << "\n";
    }
    if (!agree) std::cout << "  DISAGREEMENT\n";
  }
  std::cout << checked << " checked, " << disagreements << " disagreements\n";
  return disagreements == 0 ? kOk : kDisagreement;
}

// --- bench ----------------------------------------------------------------

struct BenchCase {
  std::string label;
  TermPtr term;
};

std::vector<BenchCase> church_cases(std::size_t max) {
  auto env = parse_env(kChurchPrelude);
  auto def = [&](const char* name) {
    for (const auto& [n, t] : env)
      if (n == name) return t;
    throw std::runtime_error("missing prelude definition");
  };
  std::vector<BenchCase> cases;
  for (std::size_t n = 1; n <= max; ++n) {
    cases.push_back({"plus " + std::to_string(n) + " " + std::to_string(n),
                     app(app(def("plus"), church_encode(n)), church_encode(n))});
    cases.push_back({"mul " + std::to_string(n) + " " + std::to_string(n),
                     app(app(def("mul"), church_encode(n)), church_encode(n))});
    cases.push_back({"exp 2 " + std::to_string(n),
                     app(app(def("exp"), church_encode(2)), church_encode(n))});
  }
  return cases;
}

int run_bench(const std::string& suite, std::size_t max, const std::string& format,
              std::size_t fuel) {
  if (suite != "church") {
    std::cerr << "unknown suite '" << suite << "' (available: church)\n";
    return kParseError;
  }
  if (format != "text" && format != "json") {
    std::cerr << "unknown format '" << format << "'\n";
    return kParseError;
  }
  const bool as_json = format == "json";
  for (const auto& bc : church_cases(max)) {
    for (const char* strat : {"oracle", "cbn", "cbv", "nbe"}) {
      auto start = std::chrono::steady_clock::now();
      bool normalized;
      TermPtr result;
      std::size_t steps;
      if (std::string(strat) == "oracle") {
        NormOutcome out = oracle_normalize(bc.term, fuel);
        normalized = out.normalized;
        result = out.result;
        steps = out.steps;
      } else {
        NormalizeResult r = normalize(bc.term, *strategy_from_name(strat), fuel);
        normalized = r.status == NormalizeResult::Status::Normalized;
        result = r.result;
        steps = r.steps;
      }
      auto elapsed = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      std::size_t size = normalized ? term_size(result) : 0;
      if (as_json) {
        json rec;
        rec["case"] = bc.label;
        rec["strategy"] = strat;
        rec["beta_steps"] = steps;
        rec["wall_time"] = elapsed;
        rec["result_size"] = size;
        std::cout << rec.dump() << "\n";
      } else {
        std::cout << bc.label << "  " << strat << "  steps=" << steps
                  << "  ms=" << elapsed << "  size=" << size
                  << (normalized ? "" : "  (diverged)") << "\n";
      }
    }
  }
  return kOk;
}

// --- repl -----------------------------------------------------------------

int run_repl() {
  Strategy strategy = Strategy::NBE;
  std::size_t fuel = kDefaultFuel;
  std::vector<std::pair<Name, TermPtr>> lets;
  std::string line;
  std::cout << "lamnorm repl — :strategy <s>, :fuel <n>, :let <name> = <term>, "
               ":quit\n";
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      if (line.rfind(":quit", 0) == 0) break;
      if (line.rfind(":strategy ", 0) == 0) {
        auto s = strategy_from_name(line.substr(10));
        if (!s)
          std::cout << "unknown strategy (whnf|cbn|cbv|cps|nbe)\n";
        else
          strategy = *s;
        continue;
      }
      if (line.rfind(":fuel ", 0) == 0) {
        fuel = std::stoull(line.substr(6));
        continue;
      }
      if (line.rfind(":let ", 0) == 0) {
        std::string binding = line.substr(5);
        auto env = parse_env(binding);
        if (env.size() != 1) {
          std::cout << "expected one binding\n";
          continue;
        }
        auto [name, t] = env.front();
        for (auto& [n, _] : lets)
          if (n == name) throw ParseError("'" + name + "' already bound", 1, 1);
        lets.emplace_back(name, apply_env(t, lets));
        continue;
      }
      if (line[0] == ':') {
        std::cout << "unknown directive\n";
        continue;
      }
      TermPtr t = apply_env(parse(line), lets);
      NormalizeResult r = normalize(t, strategy, fuel);
      switch (r.status) {
      case NormalizeResult::Status::Normalized:
        std::cout << pretty(r.result) << "\n";
        break;
      case NormalizeResult::Status::Diverged:
        std::cout << "diverged after " << r.steps << " beta steps\n";
        break;
      case NormalizeResult::Status::NotCps:
        std::cout << "not a strict-CPS term (at " << r.not_cps_path << ")\n";
        break;
      }
    } catch (const ParseError& e) {
      std::cout << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return kOk;
}

int real_main(int argc, char** argv) {
  CLI::App cli{
      "lamnorm — lambda-calculus normalization toolkit.\n"
      "Syntax: \\x.t or λx.t for abstraction (body extends maximally right),\n"
      "juxtaposition for application (left-associative, binds tighter than an\n"
      "abstraction body), parentheses, '#' line comments.\n"
      "Note: NBE evaluates arguments before application (host evaluation\n"
      "order), so it may diverge on terms CBN normalizes, e.g. K I Omega."};
  cli.require_subcommand(1);

  CommonOpts opts;

  auto add_common = [&](CLI::App* sub, bool with_strategy) {
    sub->add_option("expr", opts.expr, "expression to normalize");
    sub->add_flag("--stdin", opts.from_stdin, "read the expression from stdin");
    sub->add_option("--fuel", opts.fuel, "beta-step budget")
        ->default_val(kDefaultFuel);
    sub->add_option("--env", opts.env_path,
                    "env file of 'name = term' bindings, inlined before "
                    "normalization");
    sub->add_flag("--json", opts.emit_json, "emit a single JSON run report");
    sub->add_flag("--ascii", opts.ascii, "print '\\' for lambda (default)");
    sub->add_flag("--unicode", opts.unicode, "print 'λ' for lambda");
    if (with_strategy)
      sub->add_option("--strategy", opts.strategy,
                      "one of whnf|cbn|cbv|cps|nbe (default nbe)");
  };

  auto* norm = cli.add_subcommand("normalize", "normalize a term");
  add_common(norm, true);

  auto* whnf = cli.add_subcommand("whnf", "reduce to weak head normal form");
  add_common(whnf, false);

  auto* cps = cli.add_subcommand("cps", "CPS-transform a term");
  std::string cps_expr, cps_variant = "cbn";
  bool cps_unicode = false;
  cps->add_option("expr", cps_expr, "expression to transform")->required();
  cps->add_option("--variant", cps_variant, "cbn or cbv (default cbn)");
  cps->add_flag("--unicode", cps_unicode, "print 'λ' for lambda");

  auto* check = cli.add_subcommand(
      "check", "cross-validate all strategies against the oracle");
  std::string check_arg;
  std::size_t check_fuel = kDefaultFuel;
  check->add_option("input", check_arg, "expression, or a file of terms")
      ->required();
  check->add_option("--fuel", check_fuel, "beta-step budget")
      ->default_val(kDefaultFuel);

  auto* bench = cli.add_subcommand("bench", "run a benchmark suite");
  std::string bench_suite = "church", bench_format = "text";
  std::size_t bench_max = 6;
  std::size_t bench_fuel = 100000000;
  bench->add_option("--suite", bench_suite, "suite name (church)");
  bench->add_option("--max", bench_max, "largest numeral");
  bench->add_option("--format", bench_format, "text or json");
  bench->add_option("--fuel", bench_fuel, "beta-step budget per run");

  auto* repl = cli.add_subcommand("repl", "interactive session");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e);
  }

  try {
    if (norm->parsed()) {
      auto s = strategy_from_name(opts.strategy);
      if (!s) {
        std::cerr << "unknown strategy '" << opts.strategy << "'\n";
        return kParseError;
      }
      if (!opts.from_stdin && norm->count("expr") == 0) {
        std::cerr << "missing expression (positional or --stdin)\n";
        return kParseError;
      }
      return run_normalize(opts, *s);
    }
    if (whnf->parsed()) {
      if (!opts.from_stdin && whnf->count("expr") == 0) {
        std::cerr << "missing expression (positional or --stdin)\n";
        return kParseError;
      }
      opts.strategy = "whnf";
      return run_normalize(opts, Strategy::WHNF);
    }
    if (cps->parsed()) {
      TermPtr t;
      try {
        t = parse(cps_expr);
      } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line << ":" << e.column << ": "
                  << e.what() << "\n";
        return kParseError;
      }
      if (cps_variant != "cbn" && cps_variant != "cbv") {
        std::cerr << "unknown variant '" << cps_variant << "'\n";
        return kParseError;
      }
      TermPtr image = cps_variant == "cbn" ? cps_cbn(t) : cps_cbv(t);
      std::cout << pretty(image, !cps_unicode) << "\n";
      return kOk;
    }
    if (check->parsed()) return run_check(check_arg, check_fuel);
    if (bench->parsed())
      return run_bench(bench_suite, bench_max, bench_format, bench_fuel);
    if (repl->parsed()) return run_repl();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}

} // namespace

int main(int argc, char** argv) {
  return run_on_big_stack([&] { return real_main(argc, argv); });
}
