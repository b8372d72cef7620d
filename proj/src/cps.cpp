#include "lamnorm/cps.hpp"

namespace lamnorm {

namespace {

struct FreshNames {
  std::size_t counter = 0;
  std::set<Name> avoid;

  Name next(const char* prefix) {
    for (;;) {
      Name n = std::string("_") + prefix + std::to_string(counter++);
      if (!avoid.contains(n)) return n;
    }
  }
};

TermPtr cbn(const TermPtr& t, FreshNames& fresh) {
  switch (t->kind) {
  case Term::Kind::Var:
    return t;
  case Term::Kind::Lam: {
    Name k = fresh.next("k");
    return lam(k, app(var(k), lam(t->name, cbn(t->sub0, fresh))));
  }
  case Term::Kind::App: {
    Name k = fresh.next("k");
    TermPtr cm = cbn(t->sub0, fresh);
    Name m = fresh.next("m");
    TermPtr cn = cbn(t->sub1, fresh);
    return lam(k, app(cm, lam(m, app(app(var(m), cn), var(k)))));
  }
  }
  return t;
}

TermPtr cbv(const TermPtr& t, FreshNames& fresh) {
  switch (t->kind) {
  case Term::Kind::Var: {
    Name k = fresh.next("k");
    return lam(k, app(var(k), t));
  }
  case Term::Kind::Lam: {
    Name k = fresh.next("k");
    return lam(k, app(var(k), lam(t->name, cbv(t->sub0, fresh))));
  }
  case Term::Kind::App: {
    Name k = fresh.next("k");
    TermPtr cm = cbv(t->sub0, fresh);
    Name m = fresh.next("m");
    TermPtr cn = cbv(t->sub1, fresh);
    Name n = fresh.next("n");
    return lam(k, app(cm, lam(m, app(cn, lam(n, app(app(var(m), var(n)), var(k)))))));
  }
  }
  return t;
}

} // namespace

TermPtr cps_cbn(const TermPtr& t) {
  FreshNames fresh{0, free_vars(t)};
  return cbn(t, fresh);
}

TermPtr cps_cbv(const TermPtr& t) {
  FreshNames fresh{0, free_vars(t)};
  return cbv(t, fresh);
}

NormOutcome observe_cps(const TermPtr& t, CpsVariant v, std::size_t fuel) {
  TermPtr image = v == CpsVariant::ByName ? cps_cbn(t) : cps_cbv(t);
  TermPtr id = lam("a", var("a"));
  return oracle_normalize(app(image, id), fuel);
}

} // namespace lamnorm
