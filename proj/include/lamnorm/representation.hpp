#pragma once

#include <functional>
#include <memory>

#include "lamnorm/oracle.hpp"
#include "lamnorm/syntax.hpp"

namespace lamnorm {

// Variable identity inside a Rep: either a free name carried over from the
// source term, or a de Bruijn LEVEL introduced by readback when descending
// under a binder.
struct VarId {
  bool bound;
  Name name;         // free variables
  std::size_t level; // bound variables (levels, assigned outside-in)

  static VarId free(Name n) { return {false, std::move(n), 0}; }
  static VarId at_level(std::size_t l) { return {true, {}, l}; }
};

// Higher-order representation: the image of quote. Abstraction nodes hold
// host-level unary mappings Rep -> Rep. Immutable after construction.
struct RepNode;
using Rep = std::shared_ptr<const RepNode>;
using RepFn = std::function<Rep(const Rep&)>;

struct RepNode {
  enum class Kind { Var, Lam, App };
  Kind kind;
  VarId id;   // Var
  RepFn body; // Lam
  Rep fun;    // App
  Rep arg;    // App
  // Which normalizer (if any) already rebuilt this Lam's body. Re-normalizing
  // such a lambda is the identity; skipping the re-wrap keeps recursion depth
  // linear in the fuel instead of quadratic on divergent loops.
  int norm_tag = 0;
};

Rep rvar(VarId id);
Rep rlam(RepFn body, int norm_tag = 0);
Rep rapp(Rep fun, Rep arg);

inline bool is_rvar(const Rep& r) { return r->kind == RepNode::Kind::Var; }
inline bool is_rlam(const Rep& r) { return r->kind == RepNode::Kind::Lam; }
inline bool is_rapp(const Rep& r) { return r->kind == RepNode::Kind::App; }

// Mogensen's representation scheme: structural, performs no reduction. Free
// variables of t become free Rep variables.
Rep quote(const TermPtr& t);

// First-order realization of the trivial self-interpreter: converts a Rep
// back into syntax, naming binders `_<level>`.
TermPtr readback(const Rep& r, std::size_t depth = 0);

// Self-reducer composed with the self-interpreter:
// readback(norm_cbn(quote(t))).
NormOutcome e_nf(const TermPtr& t, std::size_t fuel);

} // namespace lamnorm
