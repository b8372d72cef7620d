#include "lamnorm/normalizers.hpp"

namespace lamnorm {

namespace {
// norm_tag values marking lambdas whose bodies already normalize
constexpr int kTagCbn = 1;
constexpr int kTagCbv = 2;
constexpr int kTagCps = 3;
constexpr int kTagResidual = 4;
} // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
  case Strategy::WHNF: return "whnf";
  case Strategy::CBN: return "cbn";
  case Strategy::CBV: return "cbv";
  case Strategy::CPS: return "cps";
  case Strategy::NBE: return "nbe";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "whnf") return Strategy::WHNF;
  if (name == "cbn") return Strategy::CBN;
  if (name == "cbv") return Strategy::CBV;
  if (name == "cps") return Strategy::CPS;
  if (name == "nbe") return Strategy::NBE;
  return std::nullopt;
}

std::string NotCpsError::path_string() const {
  if (path.empty()) return "<root>";
  std::string out;
  for (const auto& step : path) {
    if (!out.empty()) out += '/';
    out += step;
  }
  return out;
}

Rep eval_whnf(const Rep& r, Budget& budget) {
  switch (r->kind) {
  case RepNode::Kind::Var:
  case RepNode::Kind::Lam:
    return r;
  case RepNode::Kind::App: {
    Rep f = eval_whnf(r->fun, budget);
    if (is_rlam(f)) {
      budget.spend();
      return eval_whnf(f->body(r->arg), budget);
    }
    return rapp(f, eval_whnf(r->arg, budget));
  }
  }
  return r;
}

Rep norm_cbn(const Rep& r, Budget& budget) {
  switch (r->kind) {
  case RepNode::Kind::Var:
    return r;
  case RepNode::Kind::Lam: {
    if (r->norm_tag == kTagCbn) return r;
    RepFn f = r->body;
    Budget* b = &budget;
    return rlam([f, b](const Rep& x) { return norm_cbn(f(x), *b); }, kTagCbn);
  }
  case RepNode::Kind::App: {
    Rep f = norm_cbn(r->fun, budget);
    if (is_rlam(f)) {
      budget.spend();
      return f->body(r->arg); // the rebuilt body normalizes its result
    }
    return rapp(f, norm_cbn(r->arg, budget));
  }
  }
  return r;
}

Rep norm_cbv(const Rep& r, Budget& budget) {
  switch (r->kind) {
  case RepNode::Kind::Var:
    return r;
  case RepNode::Kind::Lam: {
    if (r->norm_tag == kTagCbv) return r;
    RepFn f = r->body;
    Budget* b = &budget;
    return rlam([f, b](const Rep& x) { return norm_cbv(f(x), *b); }, kTagCbv);
  }
  case RepNode::Kind::App: {
    Rep f = norm_cbv(r->fun, budget);
    if (is_rlam(f)) {
      Rep a = norm_cbv(r->arg, budget);
      budget.spend();
      return f->body(a);
    }
    return rapp(f, norm_cbv(r->arg, budget));
  }
  }
  return r;
}

Rep app_cps(const Rep& f, const Rep& a, Budget& budget) {
  switch (f->kind) {
  case RepNode::Kind::Lam:
    budget.spend();
    return f->body(a);
  case RepNode::Kind::Var:
    return rapp(f, a);
  case RepNode::Kind::App:
    throw NotCpsError{};
  }
  return nullptr;
}

namespace {

Rep norm_cps_at(const Rep& r, Budget& budget, const std::vector<std::string>& path) {
  switch (r->kind) {
  case RepNode::Kind::Var:
    return r;
  case RepNode::Kind::Lam: {
    if (r->norm_tag == kTagCps) return r;
    RepFn f = r->body;
    Budget* b = &budget;
    std::vector<std::string> inner = path;
    inner.push_back("body");
    return rlam([f, b, inner](const Rep& x) {
      return norm_cps_at(f(x), *b, inner);
    }, kTagCps);
  }
  case RepNode::Kind::App: {
    if (is_rvar(r->fun)) {
      // Neutral application: app_cps rebuilds the same App node, so recursing
      // on its result would loop. Only the argument still needs work (the
      // pre-factored specialization's fourth clause).
      Rep neutral = app_cps(r->fun, r->arg, budget);
      std::vector<std::string> inner = path;
      inner.push_back("arg");
      return rapp(neutral->fun, norm_cps_at(neutral->arg, budget, inner));
    }
    try {
      return norm_cps_at(app_cps(r->fun, r->arg, budget), budget, path);
    } catch (NotCpsError& e) {
      if (e.path.empty()) {
        e.path = path;
        e.path.push_back("fun");
      }
      throw;
    }
  }
  }
  return r;
}

} // namespace

Rep norm_cps(const Rep& r, Budget& budget) { return norm_cps_at(r, budget, {}); }

Rep interp(const TermPtr& t, const InterpEnv& env, Budget& budget) {
  switch (t->kind) {
  case Term::Kind::Var: {
    auto it = env.find(t->name);
    if (it != env.end()) return it->second;
    return rvar(VarId::free(t->name));
  }
  case Term::Kind::Lam: {
    TermPtr body = t->sub0;
    Name binder = t->name;
    Budget* b = &budget;
    return rlam([body, binder, env, b](const Rep& x) {
      InterpEnv inner = env;
      inner[binder] = x;
      return interp(body, inner, *b);
    });
  }
  case Term::Kind::App: {
    Rep f = interp(t->sub0, env, budget);
    Rep a = interp(t->sub1, env, budget);
    return app_sem(f, a, budget);
  }
  }
  return nullptr;
}

Rep app_sem(const Rep& f, const Rep& a, Budget& budget) {
  if (is_rlam(f)) {
    budget.spend();
    return f->body(a);
  }
  return rapp(f, a);
}

Rep norm_residual(const Rep& r, Budget& budget) {
  switch (r->kind) {
  case RepNode::Kind::Var:
    return r;
  case RepNode::Kind::Lam: {
    if (r->norm_tag == kTagResidual) return r;
    RepFn f = r->body;
    Budget* b = &budget;
    return rlam([f, b](const Rep& x) { return norm_residual(f(x), *b); },
                kTagResidual);
  }
  case RepNode::Kind::App:
    // Both children: inner spines of direct-style neutral applications also
    // carry residual work. A no-op on variable-headed operators.
    return rapp(norm_residual(r->fun, budget), norm_residual(r->arg, budget));
  }
  return r;
}

NormOutcome nbe(const TermPtr& t, std::size_t fuel) {
  Budget budget{fuel};
  try {
    TermPtr result = readback(norm_residual(interp(t, {}, budget), budget));
    return NormOutcome::ok(std::move(result), budget.used);
  } catch (const DivergedError& d) {
    return NormOutcome::diverged(d.steps);
  }
}

NormalizeResult normalize(const TermPtr& t, Strategy s, std::size_t fuel) {
  using Status = NormalizeResult::Status;
  if (s == Strategy::NBE) {
    NormOutcome out = nbe(t, fuel);
    if (out.normalized) return {Status::Normalized, out.result, out.steps, {}};
    return {Status::Diverged, nullptr, out.steps, {}};
  }
  Budget budget{fuel};
  try {
    Rep r = quote(t);
    Rep n;
    switch (s) {
    case Strategy::WHNF: n = eval_whnf(r, budget); break;
    case Strategy::CBN: n = norm_cbn(r, budget); break;
    case Strategy::CBV: n = norm_cbv(r, budget); break;
    case Strategy::CPS: n = norm_cps(r, budget); break;
    case Strategy::NBE: break; // handled above
    }
    TermPtr result = readback(n);
    return {Status::Normalized, std::move(result), budget.used, {}};
  } catch (const DivergedError& d) {
    return {Status::Diverged, nullptr, d.steps, {}};
  } catch (const NotCpsError& e) {
    return {Status::NotCps, nullptr, budget.used, e.path_string()};
  }
}

} // namespace lamnorm
