#include "lambdadl/kb.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "concept_parser.hpp"
#include "lexer.hpp"

namespace lambdadl {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

enum class NameKind { Concept, Role, Object };

const char* kind_name(NameKind k) {
  switch (k) {
    case NameKind::Concept: return "concept";
    case NameKind::Role: return "role";
    case NameKind::Object: return "object";
  }
  return "?";
}

/// Collects names by kind and the object/data usage of every role.
class NameCollector {
 public:
  void name(const std::string& n, NameKind k) {
    auto [it, inserted] = kinds_.emplace(n, k);
    if (!inserted && it->second != k)
      throw SemanticError("name '" + n + "' is used both as " + kind_name(it->second) + " and as " + kind_name(k));
  }

  void object_use(const std::string& role) {
    name(role, NameKind::Role);
    object_roles_.insert(role);
    check_role(role);
  }
  void data_use(const std::string& role) {
    name(role, NameKind::Role);
    data_roles_.insert(role);
    check_role(role);
  }
  void neutral_use(const std::string& role) { name(role, NameKind::Role); }

  void visit(const Concept& c, bool filler_position = false) {
    using K = Concept::Kind;
    switch (c.kind()) {
      case K::Atomic: name(c.name(), NameKind::Concept); break;
      case K::Nominal: name(c.name(), NameKind::Object); break;
      case K::Top:
      case K::Bottom: break;
      case K::Datatype:
        if (!filler_position)
          throw SemanticError(std::string("datatype ") + datatype_name(c.datatype_tag()) +
                              " may only appear as the filler of a data role restriction");
        break;
      case K::Not: visit(c.operand()); break;
      case K::And:
      case K::Or:
        visit(c.lhs());
        visit(c.rhs());
        break;
      case K::Exists:
      case K::Forall: {
        const Concept& f = c.operand();
        const RoleExpr& r = c.role();
        if (f.is(K::Datatype)) {
          if (r.inverse) throw SemanticError("data role '" + r.name + "' cannot be inverted");
          data_use(r.name);
        } else if ((f.is(K::Top) || f.is(K::Bottom)) && !r.inverse) {
          neutral_use(r.name);
        } else {
          object_use(r.name);
        }
        visit(f, true);
        break;
      }
    }
  }

  Signature finish() const {
    Signature sig;
    for (const auto& [n, k] : kinds_) {
      switch (k) {
        case NameKind::Concept: sig.concepts.insert(n); break;
        case NameKind::Object: sig.objects.insert(n); break;
        case NameKind::Role:
          if (data_roles_.contains(n))
            sig.data_roles.insert(n);
          else
            sig.roles.insert(n);
          break;
      }
    }
    return sig;
  }

 private:
  void check_role(const std::string& role) {
    if (object_roles_.contains(role) && data_roles_.contains(role))
      throw SemanticError("role '" + role + "' is used both as an object role and as a data role");
  }

  std::map<std::string, NameKind> kinds_;
  std::set<std::string> object_roles_;
  std::set<std::string> data_roles_;
};

void collect(NameCollector& nc, const Axiom& ax) {
  std::visit(overloaded{
                 [&](const Subsumption& s) {
                   nc.visit(s.sub);
                   nc.visit(s.sup);
                 },
                 [&](const ConceptEquality& e) {
                   nc.visit(e.lhs);
                   nc.visit(e.rhs);
                 },
                 [&](const ConceptAssertion& a) {
                   nc.name(a.object, NameKind::Object);
                   nc.visit(a.expr);
                 },
                 [&](const RoleAssertion& r) {
                   nc.name(r.subject, NameKind::Object);
                   nc.name(r.object, NameKind::Object);
                   nc.object_use(r.role.name);
                 },
                 [&](const DataAssertion& d) {
                   nc.name(d.subject, NameKind::Object);
                   nc.data_use(d.role);
                 },
                 [&](const ObjectEquivalence& e) {
                   nc.name(e.a, NameKind::Object);
                   nc.name(e.b, NameKind::Object);
                 },
             },
             ax);
}

Axiom parse_statement(detail::TokenStream& ts) {
  using detail::Tok;
  if ((ts.at_word("Domain") || ts.at_word("Range")) && ts.at(Tok::LParen, 1)) {
    bool domain = ts.next().text == "Domain";
    ts.next();
    RoleExpr r = detail::parse_role(ts);
    ts.expect(Tok::Comma, "','");
    Concept c = detail::parse_concept(ts);
    ts.expect(Tok::RParen, "')'");
    if (domain) return Subsumption{Concept::exists(std::move(r), Concept::top()), std::move(c)};
    return Subsumption{Concept::top(), Concept::forall(std::move(r), std::move(c))};
  }
  if (ts.at(Tok::LParen) && ts.at(Tok::Ident, 1) && ts.at(Tok::Comma, 2)) {
    ts.next();
    std::string subject = detail::parse_name(ts, "object name");
    ts.expect(Tok::Comma, "','");
    std::optional<Primitive> literal;
    std::string object;
    if (ts.at(Tok::String)) {
      literal = ts.next().text;
    } else if (ts.accept_word("true")) {
      literal = true;
    } else if (ts.accept_word("false")) {
      literal = false;
    } else {
      object = detail::parse_name(ts, "object name");
    }
    ts.expect(Tok::RParen, "')'");
    ts.expect(Tok::Colon, "':'");
    RoleExpr r = detail::parse_role(ts);
    if (literal) {
      if (r.inverse) ts.fail("data role '" + r.name + "' cannot be inverted");
      return DataAssertion{std::move(subject), std::move(r.name), std::move(*literal)};
    }
    return RoleAssertion{std::move(subject), std::move(object), std::move(r)};
  }
  if (ts.at(Tok::Ident) && ts.at(Tok::Colon, 1)) {
    std::string obj = detail::parse_name(ts, "object name");
    ts.next();
    return ConceptAssertion{std::move(obj), detail::parse_concept(ts)};
  }
  if (ts.at(Tok::Ident) && ts.at(Tok::EqEq, 1)) {
    std::string a = detail::parse_name(ts, "object name");
    ts.next();
    std::string b = detail::parse_name(ts, "object name");
    return ObjectEquivalence{std::move(a), std::move(b)};
  }
  Concept lhs = detail::parse_concept(ts);
  if (ts.accept_word("sub")) return Subsumption{std::move(lhs), detail::parse_concept(ts)};
  if (ts.accept_word("equiv")) return ConceptEquality{std::move(lhs), detail::parse_concept(ts)};
  ts.fail("expected 'sub' or 'equiv' after concept, found " + detail::describe(ts.peek()));
}

}  // namespace

bool is_terminological(const Axiom& ax) {
  return std::holds_alternative<Subsumption>(ax) || std::holds_alternative<ConceptEquality>(ax);
}

std::string to_string(const Axiom& ax, Notation n) {
  const bool uni = n == Notation::Unicode;
  return std::visit(
      overloaded{
          [&](const Subsumption& s) { return to_string(s.sub, n) + (uni ? " ⊑ " : " sub ") + to_string(s.sup, n); },
          [&](const ConceptEquality& e) {
            return to_string(e.lhs, n) + (uni ? " ≡ " : " equiv ") + to_string(e.rhs, n);
          },
          [&](const ConceptAssertion& a) { return a.object + " : " + to_string(a.expr, n); },
          [&](const RoleAssertion& r) { return "(" + r.subject + ", " + r.object + ") : " + to_string(r.role, n); },
          [&](const DataAssertion& d) {
            return "(" + d.subject + ", " + primitive_to_string(d.value) + ") : " + d.role;
          },
          [&](const ObjectEquivalence& e) { return e.a + (uni ? " ≡ " : " == ") + e.b; },
      },
      ax);
}

KnowledgeBase::KnowledgeBase(std::vector<Axiom> axioms) {
  NameCollector nc;
  for (auto& ax : axioms) {
    collect(nc, ax);
    if (auto* s = std::get_if<Subsumption>(&ax)) {
      inclusions_.push_back(*s);
    } else if (auto* e = std::get_if<ConceptEquality>(&ax)) {
      inclusions_.push_back({e->lhs, e->rhs});
      inclusions_.push_back({e->rhs, e->lhs});
    } else if (auto* d = std::get_if<DataAssertion>(&ax)) {
      if (std::find(literals_.begin(), literals_.end(), d->value) == literals_.end()) literals_.push_back(d->value);
    }
    (is_terminological(ax) ? tbox_ : abox_).push_back(std::move(ax));
  }
  sig_ = nc.finish();
}

void KnowledgeBase::validate_concept(const Concept& c) const {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Atomic:
      if (!sig_.concepts.contains(c.name())) throw SemanticError("unknown concept '" + c.name() + "'");
      return;
    case K::Nominal:
      if (!sig_.objects.contains(c.name())) throw SemanticError("unknown object '" + c.name() + "'");
      return;
    case K::Top:
    case K::Bottom: return;
    case K::Datatype:
      throw SemanticError(std::string("datatype ") + datatype_name(c.datatype_tag()) +
                          " may only appear as the filler of a data role restriction");
    case K::Not: validate_concept(c.operand()); return;
    case K::And:
    case K::Or:
      validate_concept(c.lhs());
      validate_concept(c.rhs());
      return;
    case K::Exists:
    case K::Forall: {
      const RoleExpr& r = c.role();
      const Concept& f = c.operand();
      const bool data = sig_.is_data_role(r.name);
      if (!data && !sig_.is_object_role(r.name)) throw SemanticError("unknown role '" + r.name + "'");
      if (f.is(K::Datatype)) {
        if (!data) throw SemanticError("role '" + r.name + "' is not a data role");
        if (r.inverse) throw SemanticError("data role '" + r.name + "' cannot be inverted");
        return;
      }
      if (data) {
        if (r.inverse) throw SemanticError("data role '" + r.name + "' cannot be inverted");
        if (!f.is(K::Top) && !f.is(K::Bottom))
          throw SemanticError("data role '" + r.name + "' needs a datatype filler, found " + to_string(f));
        return;
      }
      validate_concept(f);
      return;
    }
  }
}

bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
  if (!(a.sig_ == b.sig_)) return false;
  auto lines = [](const KnowledgeBase& kb) {
    std::vector<std::string> out;
    for (const auto& ax : kb.tbox_) out.push_back(to_string(ax));
    for (const auto& ax : kb.abox_) out.push_back(to_string(ax));
    std::sort(out.begin(), out.end());
    return out;
  };
  return lines(a) == lines(b);
}

KnowledgeBase parse_kb(std::string_view text) {
  detail::TokenStream ts(detail::tokenize(text));
  std::vector<Axiom> axioms;
  while (!ts.at(detail::Tok::End)) axioms.push_back(parse_statement(ts));
  return KnowledgeBase(std::move(axioms));
}

Concept parse_concept(std::string_view text) {
  detail::TokenStream ts(detail::tokenize(text));
  Concept c = detail::parse_concept(ts);
  if (!ts.at(detail::Tok::End)) ts.fail("unexpected " + detail::describe(ts.peek()) + " after concept");
  return c;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& ax : kb.tbox()) out += to_string(ax) + "\n";
  for (const auto& ax : kb.abox()) out += to_string(ax) + "\n";
  return out;
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str());
}

}  // namespace lambdadl
