#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lamnorm {

using Name = std::string;

// First-order named abstract syntax: x | \x.t | t t
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Lam, App };
  Kind kind;
  Name name;    // Var: the variable; Lam: the binder
  TermPtr sub0; // Lam: body; App: function
  TermPtr sub1; // App: argument
};

TermPtr var(Name n);
TermPtr lam(Name binder, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);

inline bool is_var(const TermPtr& t) { return t->kind == Term::Kind::Var; }
inline bool is_lam(const TermPtr& t) { return t->kind == Term::Kind::Lam; }
inline bool is_app(const TermPtr& t) { return t->kind == Term::Kind::App; }

std::size_t term_size(const TermPtr& t); // node count
bool term_equal(const TermPtr& a, const TermPtr& b); // structural, names included

// Nameless form used for alpha-equivalence. Bound variables become indices,
// free variables keep their names.
struct DbTerm;
using DbPtr = std::shared_ptr<const DbTerm>;

struct DbTerm {
  enum class Kind { BVar, FVar, Lam, App };
  Kind kind;
  std::size_t index = 0;
  Name name;
  DbPtr sub0;
  DbPtr sub1;
};

DbPtr to_debruijn(const TermPtr& t);
bool db_equal(const DbPtr& a, const DbPtr& b);

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), column(col_) {}
};

// Accepts `\x.t` and `λx.t`, juxtaposition for application (left-associative),
// parentheses, `#` line comments. Identifiers match [a-zA-Z][a-zA-Z0-9_']*;
// a leading `_` is reserved for machine-generated names and rejected.
TermPtr parse(const std::string& text);

// Lenient variant that additionally accepts machine-generated `_...` names.
// Used by the test harness to re-parse printed machine output; not part of
// the user-facing surface.
TermPtr parse_lenient(const std::string& text);

// One `name = term` binding per line; later terms may reference earlier names,
// which are inlined. Duplicate names are a ParseError. With `strict`, a free
// variable that matches no earlier binding is an error.
std::vector<std::pair<Name, TermPtr>> parse_env(const std::string& text,
                                                bool strict = false);

// Minimal-parenthesization printer; round-trips through parse.
std::string pretty(const TermPtr& t, bool ascii = true);

std::set<Name> free_vars(const TermPtr& t);

bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Term_NF: t_n ::= t_a | \x.t_n  (no beta redex anywhere)
bool is_normal(const TermPtr& t);
// Term_A: t_a ::= x | t_a t_n  (variable-headed spine, normal arguments)
bool is_neutral(const TermPtr& t);
// Term_CPS: t_c ::= v | v v  with  v ::= x | \x.t_c
bool is_strict_cps(const TermPtr& t);

} // namespace lamnorm
