#include "concept_parser.hpp"

#include <array>
#include <algorithm>

namespace lambdadl::detail {

namespace {

constexpr std::array<std::string_view, 31> kReserved = {
    "exists", "forall", "Top",  "Bot",   "sub",   "equiv", "let",  "letrec",  "in",   "fun",  "if",
    "then",   "else",   "case", "of",    "type",  "as",    "default", "query", "cons", "nil",  "head",
    "tail",   "null",   "fix",  "true",  "false", "list",  "bool",  "string",  "xsd"};

Concept parse_unary(TokenStream& ts);

Concept parse_primary(TokenStream& ts) {
  const Token& t = ts.peek();
  switch (t.kind) {
    case Tok::XsdString: ts.next(); return Concept::datatype(Datatype::String);
    case Tok::XsdBoolean: ts.next(); return Concept::datatype(Datatype::Boolean);
    case Tok::LBrace: {
      ts.next();
      std::string obj = parse_name(ts, "object name");
      ts.expect(Tok::RBrace, "'}'");
      return Concept::nominal(std::move(obj));
    }
    case Tok::LParen: {
      ts.next();
      Concept c = parse_concept(ts);
      ts.expect(Tok::RParen, "')'");
      return c;
    }
    case Tok::Ident:
      if (t.text == "Top") { ts.next(); return Concept::top(); }
      if (t.text == "Bot") { ts.next(); return Concept::bottom(); }
      if (!is_reserved(t.text)) { ts.next(); return Concept::atomic(t.text); }
      [[fallthrough]];
    default: ts.fail("expected a concept expression, found " + describe(t));
  }
}

Concept parse_unary(TokenStream& ts) {
  if (ts.accept(Tok::Bang)) return Concept::negation(parse_unary(ts));
  bool ex = ts.at_word("exists");
  if (ex || ts.at_word("forall")) {
    ts.next();
    RoleExpr r = parse_role(ts);
    ts.expect(Tok::Dot, "'.' after role");
    Concept filler = parse_unary(ts);
    return ex ? Concept::exists(std::move(r), std::move(filler)) : Concept::forall(std::move(r), std::move(filler));
  }
  return parse_primary(ts);
}

Concept parse_conj(TokenStream& ts) {
  Concept c = parse_unary(ts);
  while (ts.accept(Tok::Amp)) c = Concept::conjunction(std::move(c), parse_unary(ts));
  return c;
}

}  // namespace

bool is_reserved(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

std::string parse_name(TokenStream& ts, const char* what) {
  const Token& t = ts.peek();
  if (t.kind != Tok::Ident) ts.fail(std::string("expected ") + what + ", found " + describe(t));
  if (is_reserved(t.text)) ts.fail(std::string("reserved word '") + t.text + "' cannot be used as " + what);
  return ts.next().text;
}

RoleExpr parse_role(TokenStream& ts) {
  RoleExpr r(parse_name(ts, "role name"));
  while (ts.accept(Tok::Inverse)) r = r.inverted();
  return r;
}

Concept parse_concept(TokenStream& ts) {
  Concept c = parse_conj(ts);
  while (ts.at(Tok::Bar) && !ts.at_word("type", 1) && !ts.at_word("default", 1)) {
    ts.next();
    c = Concept::disjunction(std::move(c), parse_conj(ts));
  }
  return c;
}

}  // namespace lambdadl::detail
