// Acceptance runner: executes each release criterion and prints one PASS/FAIL
// line per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_harness.hpp"
#include "gen.hpp"
#include "lamnorm/church.hpp"
#include "lamnorm/cps.hpp"
#include "lamnorm/normalizers.hpp"
#include "lamnorm/stack.hpp"

using namespace lamnorm;
using Clock = std::chrono::steady_clock;
using Status = NormalizeResult::Status;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GuardedOutcome {
  enum class Kind { Normalized, Diverged, Timeout } kind;
  TermPtr result;
  std::size_t steps = 0;
};

// Normal-order oracle with a wall-clock guard: naive substitution can grow
// terms without bound on divergent inputs, so a raw 10^5-step run may be
// arbitrarily slow. A Timeout is inconclusive and handled by the caller.
GuardedOutcome guarded_oracle(const TermPtr& t, std::size_t fuel, double max_s) {
  std::size_t counter = 0;
  TermPtr cur = t;
  std::size_t steps = 0;
  auto start = Clock::now();
  for (;;) {
    auto next = beta_step_normal_order(cur, counter);
    if (!next) return {GuardedOutcome::Kind::Normalized, cur, steps};
    if (steps >= fuel) return {GuardedOutcome::Kind::Diverged, nullptr, steps};
    cur = *next;
    ++steps;
    if ((steps & 63) == 0 && seconds_since(start) > max_s)
      return {GuardedOutcome::Kind::Timeout, nullptr, steps};
  }
}

std::vector<TermPtr> make_corpus(unsigned seed, int count, int max_size,
                                 TermPtr (*gen)(std::mt19937&, int)) {
  std::mt19937 rng(seed);
  std::vector<TermPtr> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(gen(rng, 1 + i % max_size));
  return out;
}

bool criterion_oracle_agreement(const std::vector<TermPtr>& corpus) {
  auto start = Clock::now();
  int applicable = 0, agreed = 0, skipped = 0;
  for (const auto& t : corpus) {
    auto oracle = guarded_oracle(t, 100000, 5.0);
    if (oracle.kind == GuardedOutcome::Kind::Timeout) {
      // inconclusive; only acceptable if CBN cannot normalize it quickly either
      auto cbn = normalize(t, Strategy::CBN, 100000);
      if (cbn.status == Status::Normalized) {
        std::cout << "    inconclusive oracle timeout on a CBN-normalizing term: "
                  << pretty(t) << "\n";
        return false;
      }
      ++skipped;
      continue;
    }
    if (oracle.kind != GuardedOutcome::Kind::Normalized) continue;
    ++applicable;
    auto cbn = normalize(t, Strategy::CBN, 2000000);
    if (cbn.status == Status::Normalized && alpha_eq(cbn.result, oracle.result))
      ++agreed;
    else
      std::cout << "    CBN disagreement on: " << pretty(t) << "\n";
  }
  double elapsed = seconds_since(start);
  std::cout << "    " << applicable << " applicable, " << agreed << " agreed, "
            << skipped << " inconclusive-skipped, " << elapsed << " s\n";
  return agreed == applicable && elapsed < 120.0;
}

bool criterion_nbe_soundness(const std::vector<TermPtr>& corpus) {
  int normalized = 0, agreed = 0, diverged = 0;
  for (const auto& t : corpus) {
    auto r = normalize(t, Strategy::NBE, 100000);
    if (r.status != Status::Normalized) {
      ++diverged;
      continue;
    }
    ++normalized;
    auto oracle = guarded_oracle(t, 10000000, 10.0);
    bool ok;
    if (oracle.kind == GuardedOutcome::Kind::Normalized) {
      ok = alpha_eq(r.result, oracle.result);
    } else {
      // fall back to the CBN pipeline (itself oracle-validated above)
      auto cbn = normalize(t, Strategy::CBN, 10000000);
      ok = cbn.status == Status::Normalized && alpha_eq(r.result, cbn.result);
    }
    if (ok)
      ++agreed;
    else
      std::cout << "    NBE disagreement on: " << pretty(t) << "\n";
  }
  std::cout << "    " << normalized << " normalized (all agree required), "
            << diverged << " diverged (permitted)\n";
  return agreed == normalized;
}

bool criterion_cps_agreement(const std::vector<TermPtr>& corpus) {
  int all_normalized = 0, agreed = 0;
  for (const auto& t : corpus) {
    auto cbn = normalize(t, Strategy::CBN, 10000);
    auto cbv = normalize(t, Strategy::CBV, 10000);
    auto cps = normalize(t, Strategy::CPS, 10000);
    if (cps.status == Status::NotCps) {
      std::cout << "    generator emitted a non-CPS term: " << pretty(t) << "\n";
      return false;
    }
    if (cbn.status != Status::Normalized || cbv.status != Status::Normalized ||
        cps.status != Status::Normalized)
      continue;
    ++all_normalized;
    if (alpha_eq(cbn.result, cbv.result) && alpha_eq(cbn.result, cps.result))
      ++agreed;
    else
      std::cout << "    strategy disagreement on: " << pretty(t) << "\n";
  }
  std::cout << "    " << all_normalized << " cases with all three normalized\n";
  return agreed == all_normalized;
}

bool criterion_representation_identity(const std::vector<TermPtr>& corpus) {
  int ok = 0;
  for (const auto& t : corpus)
    if (alpha_eq(readback(quote(t)), t))
      ++ok;
    else
      std::cout << "    readback(quote) mismatch on: " << pretty(t) << "\n";
  return ok == static_cast<int>(corpus.size());
}

bool criterion_idempotence_monotonicity(const std::vector<TermPtr>& corpus) {
  for (const auto& t : corpus) {
    for (Strategy s : {Strategy::CBN, Strategy::CBV, Strategy::NBE}) {
      auto r = normalize(t, s, 10000);
      if (r.status != Status::Normalized) continue;
      auto again = normalize(r.result, s, 10000);
      if (again.status != Status::Normalized || !alpha_eq(again.result, r.result)) {
        std::cout << "    idempotence failed (" << strategy_name(s)
                  << ") on: " << pretty(t) << "\n";
        return false;
      }
      auto more = normalize(t, s, 40000);
      if (more.status != Status::Normalized || !alpha_eq(more.result, r.result)) {
        std::cout << "    fuel monotonicity failed (" << strategy_name(s)
                  << ") on: " << pretty(t) << "\n";
        return false;
      }
    }
  }
  return true;
}

bool criterion_church_arithmetic() {
  auto env = parse_env(kChurchPrelude);
  auto def = [&](const char* name) {
    for (const auto& [n, t] : env)
      if (n == name) return t;
    return TermPtr{};
  };
  bool ok = true;

  TermPtr exp_2_10 = app(app(def("exp"), church_encode(2)), church_encode(10));
  auto start = Clock::now();
  auto r1 = nbe(exp_2_10, 100000000);
  double t1 = seconds_since(start);
  if (!(r1.normalized && church_decode(r1.result) == 1024 && t1 < 1.0)) {
    std::cout << "    exp 2 10 under NBE: "
              << (r1.normalized ? "normalized" : "diverged") << ", " << t1
              << " s\n";
    ok = false;
  }
  auto c1 = normalize(exp_2_10, Strategy::CBN, 100000000);
  if (!(c1.status == Status::Normalized && r1.normalized &&
        alpha_eq(c1.result, r1.result))) {
    std::cout << "    CBN disagrees on exp 2 10\n";
    ok = false;
  }

  TermPtr mul_100 = app(app(def("mul"), church_encode(100)), church_encode(100));
  start = Clock::now();
  auto r2 = nbe(mul_100, 100000000);
  double t2 = seconds_since(start);
  if (!(r2.normalized && church_decode(r2.result) == 10000 && t2 < 5.0)) {
    std::cout << "    mul 100 100 under NBE: "
              << (r2.normalized ? "normalized" : "diverged") << ", " << t2
              << " s\n";
    ok = false;
  }
  auto c2 = normalize(mul_100, Strategy::CBN, 100000000);
  if (!(c2.status == Status::Normalized && r2.normalized &&
        alpha_eq(c2.result, r2.result))) {
    std::cout << "    CBN disagrees on mul 100 100\n";
    ok = false;
  }
  return ok;
}

bool criterion_k_i_omega() {
  TermPtr t = parse("(\\a.\\b.a) (\\z.z) ((\\w.w w)(\\w.w w))");
  auto cbn = normalize(t, Strategy::CBN, 10000);
  bool ok = cbn.status == Status::Normalized &&
            alpha_eq(cbn.result, parse("\\z.z")) && cbn.steps <= 100;
  if (!ok) std::cout << "    CBN: steps=" << cbn.steps << "\n";
  auto cbv = normalize(t, Strategy::CBV, 10000);
  if (cbv.status != Status::Diverged) {
    std::cout << "    CBV did not diverge\n";
    ok = false;
  }
  auto nbe_r = normalize(t, Strategy::NBE, 10000);
  if (nbe_r.status != Status::Diverged) {
    std::cout << "    NBE did not diverge\n";
    ok = false;
  }
  return ok;
}

bool criterion_cps_observation() {
  auto a = observe_cps(parse("(\\x.x) y"), CpsVariant::ByName, 100000);
  auto b = observe_cps(parse("y"), CpsVariant::ByName, 100000);
  return a.normalized && b.normalized && alpha_eq(a.result, b.result) &&
         alpha_eq(a.result, parse("y (\\a.a)"));
}

bool criterion_performance(const std::string& cli) {
  auto env = parse_env(kChurchPrelude);
  TermPtr mul;
  for (const auto& [n, t] : env)
    if (n == "mul") mul = t;
  TermPtr mul_40 = app(app(mul, church_encode(40)), church_encode(40));

  auto time_of = [](auto&& fn) {
    double best = 1e30;
    for (int i = 0; i < 3; ++i) {
      auto start = Clock::now();
      fn();
      best = std::min(best, seconds_since(start));
    }
    return best;
  };
  bool normalized = true;
  double nbe_s = time_of([&] {
    auto r = nbe(mul_40, 100000000);
    normalized = normalized && r.normalized;
  });
  double oracle_s = time_of([&] {
    auto r = oracle_normalize(mul_40, 100000000);
    normalized = normalized && r.normalized;
  });
  bool ok = normalized && nbe_s <= oracle_s && nbe_s < 60.0 && oracle_s < 60.0;
  std::cout << "    mul 40 40: nbe " << nbe_s << " s, oracle " << oracle_s
            << " s\n";

  auto bench = cli_harness::run(cli + " bench --suite church --max 10 --format json");
  if (bench.exit_code != 0) ok = false;
  std::istringstream in(bench.out);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("case") || !j.contains("strategy") ||
        !j.contains("beta_steps") || !j.contains("wall_time") ||
        !j.contains("result_size")) {
      std::cout << "    invalid bench JSON line: " << line << "\n";
      ok = false;
    }
  }
  if (lines != 30 * 4) {
    std::cout << "    bench emitted " << lines << " lines, expected 120\n";
    ok = false;
  }
  return ok;
}

// Random size-30 terms mostly normalize in a handful of steps; these keep the
// agreement criteria honest on heavy reductions and divergence.
std::vector<TermPtr> stress_terms() {
  std::vector<const char*> sources = {
      "(\\x.x x)(\\x.x x)",
      "(\\x.x x x)(\\x.x x x)",
      "(\\a.\\b.a) (\\z.z) ((\\w.w w)(\\w.w w))",
      "(\\a.\\b.b) ((\\w.w w)(\\w.w w)) (\\z.z)",
      "(\\d.d (d (d x))) (\\y.y y)",
      "(\\f.\\x.f (f x)) (\\f.\\x.f (f x)) ((\\f.\\x.f (f x)) (\\f.\\x.f (f x)))",
      "(\\n.\\f.\\x.n (\\g.\\h.h (g f)) (\\u.x) (\\u.u)) (\\f.\\x.f (f (f x)))",
      "(\\x.(\\y.y y) ((\\z.z) x)) (\\w.w)",
      "\\x.(\\y.y) ((\\z.z z) (\\z.z z))",
      "(\\s.\\z.s (s z)) ((\\s.\\z.s (s (s z))) f) x",
  };
  std::vector<TermPtr> out;
  for (const char* s : sources) out.push_back(parse(s));
  auto env = parse_env(kChurchPrelude);
  auto def = [&](const char* name) {
    for (const auto& [n, t] : env)
      if (n == name) return t;
    return TermPtr{};
  };
  out.push_back(app(app(def("exp"), church_encode(2)), church_encode(5)));
  out.push_back(app(app(def("mul"), church_encode(7)), church_encode(9)));
  out.push_back(app(app(def("plus"), church_encode(20)), church_encode(13)));
  return out;
}

int run_all(const std::string& cli) {
  auto corpus = make_corpus(1001, 500, 30, testgen::random_term);
  for (auto& t : stress_terms()) corpus.push_back(t);
  auto cps_corpus = make_corpus(1002, 500, 30, testgen::random_cps_term);
  auto nf_corpus = make_corpus(1003, 500, 30, testgen::random_normal);
  auto small_corpus = make_corpus(1004, 300, 24, testgen::random_term);

  struct Criterion {
    const char* name;
    bool passed;
  };
  std::vector<Criterion> results;
  auto record = [&](const char* name, bool passed) {
    results.push_back({name, passed});
    std::cout << (passed ? "PASS" : "FAIL") << " — " << name << "\n";
  };

  record("oracle agreement (CBN vs normal-order oracle, 500 terms)",
         criterion_oracle_agreement(corpus));
  record("NBE soundness (every NBE result matches the oracle)",
         criterion_nbe_soundness(corpus));
  record("strict-CPS strategy agreement (CBN/CBV/CPS, 500 terms)",
         criterion_cps_agreement(cps_corpus));
  record("representation identity (readback . quote on 500 normal forms)",
         criterion_representation_identity(nf_corpus));
  record("idempotence and fuel monotonicity",
         criterion_idempotence_monotonicity(small_corpus));
  record("Church arithmetic (exp 2 10 < 1 s, mul 100 100 < 5 s, CBN agrees)",
         criterion_church_arithmetic());
  record("K-I-Omega discrimination (CBN <= 100 steps; CBV/NBE diverge at 10^4)",
         criterion_k_i_omega());
  record("CPS observation pair", criterion_cps_observation());
  record("performance gate (mul 40 40 NBE <= oracle; bench JSON at max 10)",
         criterion_performance(cli));
  record("CLI golden invocations",
         cli_harness::run_goldens(cli, std::cout) == 0);

  int failures = 0;
  for (const auto& c : results)
    if (!c.passed) ++failures;
  std::cout << results.size() - failures << "/" << results.size()
            << " criteria passed\n";
  return failures;
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-lamnorm-cli>\n";
    return 64;
  }
  std::string cli = argv[1];
  return run_on_big_stack([&] { return run_all(cli); });
}
