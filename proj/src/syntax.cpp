#include "lamnorm/syntax.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace lamnorm {

TermPtr var(Name n) {
  return std::make_shared<Term>(Term{Term::Kind::Var, std::move(n), nullptr, nullptr});
}

TermPtr lam(Name binder, TermPtr body) {
  return std::make_shared<Term>(
      Term{Term::Kind::Lam, std::move(binder), std::move(body), nullptr});
}

TermPtr app(TermPtr fun, TermPtr arg) {
  return std::make_shared<Term>(
      Term{Term::Kind::App, Name{}, std::move(fun), std::move(arg)});
}

std::size_t term_size(const TermPtr& t) {
  switch (t->kind) {
  case Term::Kind::Var: return 1;
  case Term::Kind::Lam: return 1 + term_size(t->sub0);
  case Term::Kind::App: return 1 + term_size(t->sub0) + term_size(t->sub1);
  }
  return 0;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
  case Term::Kind::Var: return a->name == b->name;
  case Term::Kind::Lam: return a->name == b->name && term_equal(a->sub0, b->sub0);
  case Term::Kind::App:
    return term_equal(a->sub0, b->sub0) && term_equal(a->sub1, b->sub1);
  }
  return false;
}

// ---------------------------------------------------------------------------
// de Bruijn conversion and alpha-equivalence

namespace {

DbPtr db_node(DbTerm n) { return std::make_shared<DbTerm>(std::move(n)); }

DbPtr to_db(const TermPtr& t, std::vector<Name>& scope) {
  switch (t->kind) {
  case Term::Kind::Var: {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i] == t->name)
        return db_node({DbTerm::Kind::BVar, scope.size() - 1 - i, {}, nullptr, nullptr});
    }
    return db_node({DbTerm::Kind::FVar, 0, t->name, nullptr, nullptr});
  }
  case Term::Kind::Lam: {
    scope.push_back(t->name);
    auto body = to_db(t->sub0, scope);
    scope.pop_back();
    return db_node({DbTerm::Kind::Lam, 0, {}, std::move(body), nullptr});
  }
  case Term::Kind::App: {
    auto f = to_db(t->sub0, scope);
    auto a = to_db(t->sub1, scope);
    return db_node({DbTerm::Kind::App, 0, {}, std::move(f), std::move(a)});
  }
  }
  return nullptr;
}

} // namespace

DbPtr to_debruijn(const TermPtr& t) {
  std::vector<Name> scope;
  return to_db(t, scope);
}

bool db_equal(const DbPtr& a, const DbPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
  case DbTerm::Kind::BVar: return a->index == b->index;
  case DbTerm::Kind::FVar: return a->name == b->name;
  case DbTerm::Kind::Lam: return db_equal(a->sub0, b->sub0);
  case DbTerm::Kind::App:
    return db_equal(a->sub0, b->sub0) && db_equal(a->sub1, b->sub1);
  }
  return false;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  return db_equal(to_debruijn(a), to_debruijn(b));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Kind { Lambda, Name, LParen, RParen, Dot, Equals, Newline, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
public:
  Lexer(const std::string& src, bool allow_machine_names, bool track_newlines)
      : src_(src), allow_machine_(allow_machine_names),
        track_newlines_(track_newlines) {}

  Token next() {
    skip_space_and_comments();
    int ln = line_, col = col_;
    if (pos_ >= src_.size()) return {Token::Kind::End, "", ln, col};
    char c = src_[pos_];
    if (c == '\n') {
      advance();
      return {Token::Kind::Newline, "\n", ln, col};
    }
    if (c == '\\') {
      advance();
      return {Token::Kind::Lambda, "\\", ln, col};
    }
    // UTF-8 lambda: 0xCE 0xBB
    if (static_cast<unsigned char>(c) == 0xCE && pos_ + 1 < src_.size() &&
        static_cast<unsigned char>(src_[pos_ + 1]) == 0xBB) {
      advance();
      advance();
      return {Token::Kind::Lambda, "λ", ln, col};
    }
    if (c == '(') { advance(); return {Token::Kind::LParen, "(", ln, col}; }
    if (c == ')') { advance(); return {Token::Kind::RParen, ")", ln, col}; }
    if (c == '.') { advance(); return {Token::Kind::Dot, ".", ln, col}; }
    if (c == '=') { advance(); return {Token::Kind::Equals, "=", ln, col}; }
    if (std::isalpha(static_cast<unsigned char>(c)) ||
        (c == '_' && allow_machine_)) {
      std::string name;
      if (c == '_') {
        name += c;
        advance();
        if (pos_ >= src_.size() ||
            !(std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_' || src_[pos_] == '\''))
          throw ParseError("incomplete machine-generated name", ln, col);
      }
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          name += d;
          advance();
        } else {
          break;
        }
      }
      return {Token::Kind::Name, name, ln, col};
    }
    if (c == '_')
      throw ParseError("identifiers may not start with '_' (reserved for "
                       "machine-generated names)",
                       ln, col);
    throw ParseError(std::string("unexpected character '") + c + "'", ln, col);
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '\n' && track_newlines_) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool allow_machine_;
  bool track_newlines_;
};

class Parser {
public:
  Parser(const std::string& src, bool allow_machine, bool track_newlines)
      : lex_(src, allow_machine, track_newlines) {
    cur_ = lex_.next();
  }

  const Token& peek() const { return cur_; }

  Token eat() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  Token expect(Token::Kind k, const char* what) {
    if (cur_.kind != k)
      throw ParseError(std::string("expected ") + what, cur_.line, cur_.column);
    return eat();
  }

  // term := lambda | appseq [lambda]
  TermPtr term() {
    if (cur_.kind == Token::Kind::Lambda) return abstraction();
    TermPtr t = atom_required();
    for (;;) {
      if (cur_.kind == Token::Kind::Lambda) {
        t = app(t, abstraction()); // trailing abstraction extends to the right
        return t;
      }
      auto a = atom_optional();
      if (!a) return t;
      t = app(t, *a);
    }
  }

private:
  TermPtr abstraction() {
    expect(Token::Kind::Lambda, "'\\'");
    Token n = expect(Token::Kind::Name, "binder name");
    expect(Token::Kind::Dot, "'.'");
    return lam(n.text, term());
  }

  std::optional<TermPtr> atom_optional() {
    switch (cur_.kind) {
    case Token::Kind::Name: return var(eat().text);
    case Token::Kind::LParen: {
      eat();
      TermPtr t = term();
      expect(Token::Kind::RParen, "')'");
      return t;
    }
    default: return std::nullopt;
    }
  }

  TermPtr atom_required() {
    auto a = atom_optional();
    if (!a)
      throw ParseError("expected a term", cur_.line, cur_.column);
    return *a;
  }

  Lexer lex_;
  Token cur_;
};

TermPtr parse_impl(const std::string& text, bool allow_machine) {
  Parser p(text, allow_machine, /*track_newlines=*/false);
  TermPtr t = p.term();
  if (p.peek().kind != Token::Kind::End)
    throw ParseError("trailing input after term", p.peek().line, p.peek().column);
  return t;
}

// Replace free occurrences of `x` by `s`. Inlined definitions are closed in
// well-formed env files, so no capture avoidance is needed here; a binder
// named `x` simply shadows.
TermPtr inline_name(const TermPtr& t, const Name& x, const TermPtr& s) {
  switch (t->kind) {
  case Term::Kind::Var: return t->name == x ? s : t;
  case Term::Kind::Lam:
    if (t->name == x) return t;
    return lam(t->name, inline_name(t->sub0, x, s));
  case Term::Kind::App:
    return app(inline_name(t->sub0, x, s), inline_name(t->sub1, x, s));
  }
  return t;
}

} // namespace

TermPtr parse(const std::string& text) { return parse_impl(text, false); }
TermPtr parse_lenient(const std::string& text) { return parse_impl(text, true); }

std::vector<std::pair<Name, TermPtr>> parse_env(const std::string& text,
                                                bool strict) {
  std::vector<std::pair<Name, TermPtr>> env;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comment
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'name = term'", lineno, 1);
    std::string lhs = line.substr(0, eq);
    std::string rhs = line.substr(eq + 1);
    // trim lhs
    auto b = lhs.find_first_not_of(" \t");
    auto e = lhs.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw ParseError("missing binding name", lineno, 1);
    Name name = lhs.substr(b, e - b + 1);
    TermPtr t;
    try {
      t = parse(rhs);
    } catch (const ParseError& pe) {
      throw ParseError(pe.what(), lineno, pe.column + static_cast<int>(eq) + 1);
    }
    for (const auto& [n, _] : env)
      if (n == name)
        throw ParseError("duplicate binding '" + name + "'", lineno, 1);
    // inline earlier bindings
    for (const auto& [n, def] : env) t = inline_name(t, n, def);
    if (strict) {
      for (const auto& fv : free_vars(t))
        throw ParseError("unknown name '" + fv + "' in binding '" + name + "'",
                         lineno, 1);
    }
    env.emplace_back(std::move(name), std::move(t));
  }
  return env;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum class Pos { Top, Fun, Arg };

void pp(const TermPtr& t, Pos pos, bool ascii, std::string& out) {
  switch (t->kind) {
  case Term::Kind::Var:
    out += t->name;
    return;
  case Term::Kind::Lam: {
    bool paren = pos != Pos::Top;
    if (paren) out += '(';
    out += ascii ? "\\" : "λ";
    out += t->name;
    out += ". ";
    pp(t->sub0, Pos::Top, ascii, out);
    if (paren) out += ')';
    return;
  }
  case Term::Kind::App: {
    bool paren = pos == Pos::Arg;
    if (paren) out += '(';
    pp(t->sub0, Pos::Fun, ascii, out);
    out += ' ';
    pp(t->sub1, Pos::Arg, ascii, out);
    if (paren) out += ')';
    return;
  }
  }
}

} // namespace

std::string pretty(const TermPtr& t, bool ascii) {
  std::string out;
  pp(t, Pos::Top, ascii, out);
  return out;
}

// ---------------------------------------------------------------------------
// Predicates

namespace {

void fv(const TermPtr& t, std::vector<Name>& bound, std::set<Name>& out) {
  switch (t->kind) {
  case Term::Kind::Var:
    for (const auto& b : bound)
      if (b == t->name) return;
    out.insert(t->name);
    return;
  case Term::Kind::Lam:
    bound.push_back(t->name);
    fv(t->sub0, bound, out);
    bound.pop_back();
    return;
  case Term::Kind::App:
    fv(t->sub0, bound, out);
    fv(t->sub1, bound, out);
    return;
  }
}

bool is_cps_value(const TermPtr& t) {
  if (is_var(t)) return true;
  if (is_lam(t)) return is_strict_cps(t->sub0);
  return false;
}

} // namespace

std::set<Name> free_vars(const TermPtr& t) {
  std::set<Name> out;
  std::vector<Name> bound;
  fv(t, bound, out);
  return out;
}

bool is_normal(const TermPtr& t) {
  if (is_lam(t)) return is_normal(t->sub0);
  return is_neutral(t);
}

bool is_neutral(const TermPtr& t) {
  if (is_var(t)) return true;
  if (is_app(t)) return is_neutral(t->sub0) && is_normal(t->sub1);
  return false;
}

bool is_strict_cps(const TermPtr& t) {
  if (is_cps_value(t)) return true;
  if (is_app(t)) return is_cps_value(t->sub0) && is_cps_value(t->sub1);
  return false;
}

} // namespace lamnorm
