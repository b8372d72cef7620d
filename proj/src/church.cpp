#include "lamnorm/church.hpp"

namespace lamnorm {

const char* const kChurchPrelude =
    "plus = \\m.\\n.\\f.\\x. m f (n f x)\n"
    "mul = \\m.\\n.\\f. m (n f)\n"
    "exp = \\m.\\n. n m\n";

TermPtr church_encode(std::size_t n) {
  TermPtr body = var("x");
  for (std::size_t i = 0; i < n; ++i) body = app(var("f"), body);
  return lam("f", lam("x", body));
}

std::optional<std::size_t> church_decode(const TermPtr& t) {
  if (!is_lam(t) || !is_lam(t->sub0)) return std::nullopt;
  const Name& f = t->name;
  const Name& x = t->sub0->name;
  if (f == x) {
    // \f.\f.f is zero only if the body is the inner binder
    const TermPtr& body = t->sub0->sub0;
    if (is_var(body) && body->name == x) return 0;
    return std::nullopt;
  }
  TermPtr cur = t->sub0->sub0;
  std::size_t n = 0;
  while (is_app(cur)) {
    if (!is_var(cur->sub0) || cur->sub0->name != f) return std::nullopt;
    ++n;
    cur = cur->sub1;
  }
  if (is_var(cur) && cur->name == x) return n;
  return std::nullopt;
}

} // namespace lamnorm
