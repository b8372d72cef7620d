#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lamnorm/oracle.hpp"
#include "lamnorm/representation.hpp"
#include "lamnorm/syntax.hpp"

namespace lamnorm {

enum class Strategy { WHNF, CBN, CBV, CPS, NBE };

std::string strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

// Raised when the CPS-specialized normalizer meets an application whose
// operator is itself an application, i.e. a term outside the strict CPS
// grammar. `path` is the sequence of moves from the root to the offending
// node ("body" under a Lam, "fun"/"arg" under an App).
struct NotCpsError {
  std::vector<std::string> path;

  std::string path_string() const;
};

// Weak-head evaluator. The neutral case evaluates the argument as well.
Rep eval_whnf(const Rep& r, Budget& budget);

// Call-by-name normalizer over Rep; the self-reducer of the pipeline
// readback . norm_cbn . quote.
Rep norm_cbn(const Rep& r, Budget& budget);

// Call-by-value variant: normalizes the argument before applying.
Rep norm_cbv(const Rep& r, Budget& budget);

// Application for strict-CPS heads: beta for Lam operators, residual App for
// Var operators, NotCpsError for App operators.
Rep app_cps(const Rep& f, const Rep& a, Budget& budget);

// The CPS-specialized normalizer, with application factored out into app_cps.
Rep norm_cps(const Rep& r, Budget& budget);

using InterpEnv = std::map<Name, Rep>;

// Interpretation into Rep: quoting that identifies terms modulo weak head
// normal forms, collapsing redexes via app_sem as it goes.
Rep interp(const TermPtr& t, const InterpEnv& env, Budget& budget);

// Semantic application: beta for Lam, residual App for anything else. Unlike
// app_cps this accepts App heads, since direct-style terms build
// multi-argument neutral spines.
Rep app_sem(const Rep& f, const Rep& a, Budget& budget);

// Residualizing normalizer over interp output: every remaining App node is
// neutral-headed, so it only recurses structurally.
Rep norm_residual(const Rep& r, Budget& budget);

// Normalization by evaluation: readback(norm_residual(interp(t))).
NormOutcome nbe(const TermPtr& t, std::size_t fuel);

struct NormalizeResult {
  enum class Status { Normalized, Diverged, NotCps };
  Status status;
  TermPtr result; // present iff Normalized
  std::size_t steps;
  std::string not_cps_path; // present iff NotCps
};

// Strategy dispatch over the five pipelines.
NormalizeResult normalize(const TermPtr& t, Strategy s, std::size_t fuel);

} // namespace lamnorm
