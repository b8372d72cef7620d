#include "lamnorm/oracle.hpp"

namespace lamnorm {

void Budget::spend() {
  if (used >= limit) throw DivergedError{used};
  ++used;
}

namespace {

Name fresh_name(std::size_t& counter, const std::set<Name>& avoid) {
  for (;;) {
    Name n = "_" + std::to_string(counter++);
    if (!avoid.contains(n)) return n;
  }
}

} // namespace

TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s,
              std::size_t& fresh_counter) {
  switch (t->kind) {
  case Term::Kind::Var:
    return t->name == x ? s : t;
  case Term::Kind::Lam: {
    if (t->name == x) return t; // shadowed
    auto body_fv = free_vars(t->sub0);
    if (!body_fv.contains(x)) return t; // nothing to substitute
    auto s_fv = free_vars(s);
    if (s_fv.contains(t->name)) {
      // binder would capture a free variable of s: rename it first
      std::set<Name> avoid = std::move(s_fv);
      avoid.merge(body_fv);
      Name fresh = fresh_name(fresh_counter, avoid);
      TermPtr renamed = subst(t->sub0, t->name, var(fresh), fresh_counter);
      return lam(fresh, subst(renamed, x, s, fresh_counter));
    }
    return lam(t->name, subst(t->sub0, x, s, fresh_counter));
  }
  case Term::Kind::App:
    return app(subst(t->sub0, x, s, fresh_counter),
               subst(t->sub1, x, s, fresh_counter));
  }
  return t;
}

TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s) {
  std::size_t counter = 0;
  return subst(t, x, s, counter);
}

std::optional<TermPtr> beta_step_normal_order(const TermPtr& t,
                                              std::size_t& fresh_counter) {
  switch (t->kind) {
  case Term::Kind::Var:
    return std::nullopt;
  case Term::Kind::Lam:
    if (auto b = beta_step_normal_order(t->sub0, fresh_counter))
      return lam(t->name, *b);
    return std::nullopt;
  case Term::Kind::App:
    if (is_lam(t->sub0))
      return subst(t->sub0->sub0, t->sub0->name, t->sub1, fresh_counter);
    if (auto f = beta_step_normal_order(t->sub0, fresh_counter))
      return app(*f, t->sub1);
    if (auto a = beta_step_normal_order(t->sub1, fresh_counter))
      return app(t->sub0, *a);
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<TermPtr> beta_step_normal_order(const TermPtr& t) {
  std::size_t counter = 0;
  return beta_step_normal_order(t, counter);
}

NormOutcome oracle_normalize(const TermPtr& t, std::size_t fuel) {
  std::size_t counter = 0;
  TermPtr cur = t;
  std::size_t steps = 0;
  for (;;) {
    auto next = beta_step_normal_order(cur, counter);
    if (!next) return NormOutcome::ok(cur, steps);
    if (steps >= fuel) return NormOutcome::diverged(steps);
    cur = *next;
    ++steps;
  }
}

NormOutcome oracle_whnf(const TermPtr& t, std::size_t fuel) {
  std::size_t counter = 0;
  std::size_t steps = 0;
  // Unwind the application spine; contract only at the head.
  TermPtr head = t;
  std::vector<TermPtr> args;
  for (;;) {
    while (is_app(head)) {
      args.push_back(head->sub1);
      head = head->sub0;
    }
    if (is_lam(head) && !args.empty()) {
      if (steps >= fuel) return NormOutcome::diverged(steps);
      TermPtr arg = args.back();
      args.pop_back();
      head = subst(head->sub0, head->name, arg, counter);
      ++steps;
      continue;
    }
    break;
  }
  TermPtr result = head;
  while (!args.empty()) {
    result = app(result, args.back());
    args.pop_back();
  }
  return NormOutcome::ok(result, steps);
}

} // namespace lamnorm
