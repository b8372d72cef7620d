#pragma once

#include <cstddef>
#include <optional>

#include "lamnorm/syntax.hpp"

namespace lamnorm {

// Beta-step fuel threaded through every potentially diverging operation.
// Each beta contraction spends exactly one unit.
struct Budget {
  std::size_t limit;
  std::size_t used = 0;

  void spend();
};

// Thrown when a Budget runs out; callers convert it to a Diverged outcome.
struct DivergedError {
  std::size_t steps;
};

struct NormOutcome {
  bool normalized;
  TermPtr result; // present iff normalized
  std::size_t steps;

  static NormOutcome ok(TermPtr t, std::size_t steps) {
    return {true, std::move(t), steps};
  }
  static NormOutcome diverged(std::size_t steps) { return {false, nullptr, steps}; }
};

// Capture-avoiding substitution: t[x := s]. Binders that would capture a free
// variable of s are renamed to fresh `_n` names drawn from `fresh_counter`.
TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s,
              std::size_t& fresh_counter);
TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s);

// Contracts the leftmost-outermost beta redex exactly once; nullopt iff the
// term is already normal.
std::optional<TermPtr> beta_step_normal_order(const TermPtr& t,
                                              std::size_t& fresh_counter);
std::optional<TermPtr> beta_step_normal_order(const TermPtr& t);

// Normal-order normalization: complete, finds the normal form whenever one
// exists within the fuel limit.
NormOutcome oracle_normalize(const TermPtr& t, std::size_t fuel);

// Head reduction only: never under a binder, never inside arguments. Stops
// when the term is an abstraction or variable-headed.
NormOutcome oracle_whnf(const TermPtr& t, std::size_t fuel);

} // namespace lamnorm
