#include "lamnorm/representation.hpp"

#include <map>

#include "lamnorm/normalizers.hpp"

namespace lamnorm {

Rep rvar(VarId id) {
  return std::make_shared<RepNode>(
      RepNode{RepNode::Kind::Var, std::move(id), nullptr, nullptr, nullptr});
}

Rep rlam(RepFn body, int norm_tag) {
  return std::make_shared<RepNode>(RepNode{RepNode::Kind::Lam, {}, std::move(body),
                                           nullptr, nullptr, norm_tag});
}

Rep rapp(Rep fun, Rep arg) {
  return std::make_shared<RepNode>(
      RepNode{RepNode::Kind::App, {}, nullptr, std::move(fun), std::move(arg)});
}

namespace {

using QuoteEnv = std::map<Name, Rep>;

Rep quote_in(const TermPtr& t, const QuoteEnv& env) {
  switch (t->kind) {
  case Term::Kind::Var: {
    auto it = env.find(t->name);
    if (it != env.end()) return it->second;
    return rvar(VarId::free(t->name));
  }
  case Term::Kind::Lam: {
    TermPtr body = t->sub0;
    Name binder = t->name;
    return rlam([body, binder, env](const Rep& x) {
      QuoteEnv inner = env;
      inner[binder] = x;
      return quote_in(body, inner);
    });
  }
  case Term::Kind::App:
    return rapp(quote_in(t->sub0, env), quote_in(t->sub1, env));
  }
  return nullptr;
}

} // namespace

Rep quote(const TermPtr& t) { return quote_in(t, {}); }

TermPtr readback(const Rep& r, std::size_t depth) {
  switch (r->kind) {
  case RepNode::Kind::Var:
    if (r->id.bound) return var("_" + std::to_string(r->id.level));
    return var(r->id.name);
  case RepNode::Kind::Lam: {
    Name binder = "_" + std::to_string(depth);
    return lam(binder, readback(r->body(rvar(VarId::at_level(depth))), depth + 1));
  }
  case RepNode::Kind::App:
    return app(readback(r->fun, depth), readback(r->arg, depth));
  }
  return nullptr;
}

NormOutcome e_nf(const TermPtr& t, std::size_t fuel) {
  Budget budget{fuel};
  try {
    TermPtr result = readback(norm_cbn(quote(t), budget));
    return NormOutcome::ok(std::move(result), budget.used);
  } catch (const DivergedError& d) {
    return NormOutcome::diverged(d.steps);
  }
}

} // namespace lamnorm
