#include <algorithm>

#include "concept_parser.hpp"
#include "lambdadl/syntax.hpp"
#include "lexer.hpp"

namespace lambdadl {

namespace {

using detail::Tok;
using detail::TokenStream;

class TermParser {
 public:
  TermParser(TokenStream& ts, std::vector<std::string> scope) : ts_(ts), scope_(std::move(scope)) {}

  Term term() {
    const SourceLocation loc = ts_.peek().loc;
    if (ts_.accept_word("let")) {
      std::string x = detail::parse_name(ts_, "variable name");
      ts_.expect(Tok::Eq, "'='");
      Term bound = term();
      ts_.expect_word("in");
      Term body = under(x, [&] { return term(); });
      return Term::let(x, bound, body, loc);
    }
    if (ts_.accept_word("letrec")) {
      std::string x = detail::parse_name(ts_, "variable name");
      ts_.expect(Tok::Colon, "':'");
      Type t = type();
      ts_.expect(Tok::Eq, "'='");
      Term bound = under(x, [&] { return term(); });
      ts_.expect_word("in");
      Term body = under(x, [&] { return term(); });
      return Term::let(x, Term::fix(Term::abs(x, t, bound, loc), loc), body, loc);
    }
    if (ts_.accept_word("fun")) {
      ts_.expect(Tok::LParen, "'('");
      std::string x = detail::parse_name(ts_, "parameter name");
      ts_.expect(Tok::Colon, "':'");
      Type t = type();
      ts_.expect(Tok::RParen, "')'");
      ts_.expect(Tok::Dot, "'.'");
      Term body = under(x, [&] { return term(); });
      return Term::abs(x, t, body, loc);
    }
    if (ts_.accept_word("if")) {
      Term c = term();
      ts_.expect_word("then");
      Term t = term();
      ts_.expect_word("else");
      Term e = term();
      return Term::if_(c, t, e, loc);
    }
    if (ts_.accept_word("case")) {
      Term scrutinee = term();
      ts_.expect_word("of");
      std::vector<CaseArm> arms;
      for (;;) {
        ts_.expect(Tok::Bar, "'|'");
        if (ts_.accept_word("default")) break;
        ts_.expect_word("type");
        Concept c = detail::parse_concept(ts_);
        ts_.expect_word("as");
        std::string x = detail::parse_name(ts_, "binder name");
        ts_.expect(Tok::Arrow, "'->'");
        Term body = under(x, [&] { return term(); });
        arms.push_back(Term::arm(c, x, body));
      }
      Term d = term();
      return Term::case_(scrutinee, std::move(arms), d, loc);
    }
    return equality();
  }

  Type type() {
    Type dom = postfix_type();
    if (ts_.accept(Tok::Arrow)) return Type::func(dom, type());
    return dom;
  }

 private:
  template <class F>
  Term under(const std::string& x, F&& f) {
    scope_.push_back(x);
    Term t = f();
    scope_.pop_back();
    return t;
  }

  Type postfix_type() {
    Type t = atomic_type();
    while (ts_.accept_word("list")) t = Type::list(t);
    return t;
  }

  Type atomic_type() {
    if (ts_.accept_word("bool")) return Type::boolean();
    if (ts_.accept_word("string")) return Type::string();
    if (ts_.at(Tok::LParen)) {
      const std::size_t start = ts_.position();
      try {
        return concept_type(detail::parse_concept(ts_));
      } catch (const ParseError&) {
        ts_.rewind(start);
      }
      ts_.expect(Tok::LParen, "'('");
      Type t = type();
      ts_.expect(Tok::RParen, "')'");
      return t;
    }
    return concept_type(detail::parse_concept(ts_));
  }

  // A bare datatype in type position denotes the primitive type.
  static Type concept_type(const Concept& c) {
    if (c.is(Concept::Kind::Datatype))
      return c.datatype_tag() == Datatype::String ? Type::string() : Type::boolean();
    return Type::from_concept(c);
  }

  Term equality() {
    const SourceLocation loc = ts_.peek().loc;
    Term lhs = application();
    if (ts_.accept(Tok::Eq)) return Term::eq(lhs, application(), loc);
    return lhs;
  }

  bool starts_argument() const {
    const auto& t = ts_.peek();
    if (t.kind == Tok::LParen || t.kind == Tok::String) return true;
    if (t.kind != Tok::Ident) return false;
    return t.text == "true" || t.text == "false" || t.text == "nil" || !detail::is_reserved(t.text);
  }

  Term application() {
    const SourceLocation loc = ts_.peek().loc;
    Term fn = [&] {
      if (ts_.accept_word("head")) return Term::head(argument(), loc);
      if (ts_.accept_word("tail")) return Term::tail(argument(), loc);
      if (ts_.accept_word("null")) return Term::null(argument(), loc);
      if (ts_.accept_word("fix")) return Term::fix(argument(), loc);
      if (ts_.accept_word("query")) return Term::query(detail::parse_concept(ts_), loc);
      if (ts_.accept_word("cons")) {
        Term h = argument();
        return Term::cons(h, argument(), loc);
      }
      return argument();
    }();
    while (starts_argument()) {
      const SourceLocation aloc = ts_.peek().loc;
      fn = Term::app(fn, argument(), aloc);
    }
    return fn;
  }

  Term argument() {
    Term t = atom();
    while (ts_.at(Tok::Dot)) {
      const SourceLocation loc = ts_.next().loc;
      t = Term::proj(t, detail::parse_role(ts_), loc);
    }
    return t;
  }

  Term atom() {
    const auto& tok = ts_.peek();
    const SourceLocation loc = tok.loc;
    if (ts_.accept(Tok::LParen)) {
      Term t = term();
      ts_.expect(Tok::RParen, "')'");
      return t;
    }
    if (tok.kind == Tok::String) return Term::prim(Primitive(ts_.next().text), loc);
    if (ts_.accept_word("true")) return Term::prim(Primitive(true), loc);
    if (ts_.accept_word("false")) return Term::prim(Primitive(false), loc);
    if (ts_.accept_word("nil")) {
      ts_.expect(Tok::LBracket, "'[' after nil");
      Type t = type();
      ts_.expect(Tok::RBracket, "']'");
      return Term::nil(t, loc);
    }
    if (tok.kind == Tok::Ident && !detail::is_reserved(tok.text)) {
      std::string name = ts_.next().text;
      if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) return Term::var(name, loc);
      return Term::object(name, loc);
    }
    ts_.fail("expected a term, found " + detail::describe(tok));
  }

  TokenStream& ts_;
  std::vector<std::string> scope_;
};

}  // namespace

Term parse_term(std::string_view text, const std::vector<std::string>& free_vars) {
  TokenStream ts(detail::tokenize(text));
  TermParser p(ts, free_vars);
  Term t = p.term();
  if (!ts.at(Tok::End)) ts.fail("unexpected " + detail::describe(ts.peek()) + " after term");
  return t;
}

Type parse_type(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  TermParser p(ts, {});
  Type t = p.type();
  if (!ts.at(Tok::End)) ts.fail("unexpected " + detail::describe(ts.peek()) + " after type");
  return t;
}

}  // namespace lambdadl
