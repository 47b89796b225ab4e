#include "lambdadl/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace lambdadl {

// ---------------------------------------------------------------------------
// Type
// ---------------------------------------------------------------------------

struct Type::Node {
  Kind kind;
  std::optional<Concept> concept_type;
  std::vector<Type> kids;
  PrimType prim = PrimType::Bool;
};

Type Type::from_concept(Concept c) { return Type(std::make_shared<const Node>(Node{Kind::Concept, std::move(c), {}})); }
Type Type::func(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(Node{Kind::Func, std::nullopt, {std::move(dom), std::move(cod)}}));
}
Type Type::list(Type elem) {
  return Type(std::make_shared<const Node>(Node{Kind::List, std::nullopt, {std::move(elem)}}));
}
Type Type::prim(PrimType p) { return Type(std::make_shared<const Node>(Node{Kind::Prim, std::nullopt, {}, p})); }

Type::Kind Type::kind() const { return node_->kind; }
const Concept& Type::as_concept() const { return *node_->concept_type; }
const Type& Type::domain() const { return node_->kids.at(0); }
const Type& Type::codomain() const { return node_->kids.at(1); }
const Type& Type::element() const { return node_->kids.at(0); }
PrimType Type::prim_tag() const { return node_->prim; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Concept: return a.as_concept() == b.as_concept();
    case Type::Kind::Prim: return a.prim_tag() == b.prim_tag();
    default: return a.node_->kids == b.node_->kids;
  }
}

namespace {

bool simple_concept(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Atomic:
    case Concept::Kind::Nominal:
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
    case Concept::Kind::Datatype: return true;
    default: return false;
  }
}

// ctx 0: anywhere; 1: function domain; 2: list element.
void print_type(const Type& t, Notation n, int ctx, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Concept: {
      bool parens = ctx > 0 && !simple_concept(t.as_concept());
      if (parens) out += '(';
      out += to_string(t.as_concept(), n);
      if (parens) out += ')';
      break;
    }
    case Type::Kind::Prim: out += t.prim_tag() == PrimType::Bool ? "bool" : "string"; break;
    case Type::Kind::List:
      print_type(t.element(), n, 2, out);
      out += " list";
      break;
    case Type::Kind::Func: {
      bool parens = ctx > 0;
      if (parens) out += '(';
      print_type(t.domain(), n, 1, out);
      out += n == Notation::Unicode ? " → " : " -> ";
      print_type(t.codomain(), n, 0, out);
      if (parens) out += ')';
      break;
    }
  }
}

}  // namespace

std::string to_string(const Type& t, Notation n) {
  std::string out;
  print_type(t, n, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

struct Term::Node {
  Kind kind;
  SourceLocation loc;
  std::string name;
  Primitive prim;
  std::optional<Type> type;
  std::optional<Concept> concept_type;
  RoleExpr role;
  std::vector<Term> kids;
  std::vector<CaseArm> arms;
};

namespace {

std::shared_ptr<Term::Node> make(Term::Kind k, SourceLocation loc) {
  auto n = std::make_shared<Term::Node>();
  n->kind = k;
  n->loc = loc;
  return n;
}

}  // namespace

Term Term::var(std::string name, SourceLocation loc) {
  auto n = make(Kind::Var, loc);
  n->name = std::move(name);
  return Term(n);
}

Term Term::object(std::string name, SourceLocation loc) {
  auto n = make(Kind::Object, loc);
  n->name = std::move(name);
  return Term(n);
}

Term Term::prim(Primitive p, SourceLocation loc) {
  auto n = make(Kind::Prim, loc);
  n->prim = std::move(p);
  return Term(n);
}

Term Term::nil(Type elem, SourceLocation loc) {
  auto n = make(Kind::Nil, loc);
  n->type = std::move(elem);
  return Term(n);
}

Term Term::abs(std::string param, Type annot, Term body, SourceLocation loc) {
  auto n = make(Kind::Abs, loc);
  n->name = std::move(param);
  n->type = std::move(annot);
  n->kids = {std::move(body)};
  return Term(n);
}

Term Term::let(std::string name, Term bound, Term body, SourceLocation loc) {
  auto n = make(Kind::Let, loc);
  n->name = std::move(name);
  n->kids = {std::move(bound), std::move(body)};
  return Term(n);
}

Term Term::fix(Term t, SourceLocation loc) {
  auto n = make(Kind::Fix, loc);
  n->kids = {std::move(t)};
  return Term(n);
}

Term Term::app(Term fn, Term arg, SourceLocation loc) {
  auto n = make(Kind::App, loc);
  n->kids = {std::move(fn), std::move(arg)};
  return Term(n);
}

Term Term::if_(Term cond, Term then_, Term else_, SourceLocation loc) {
  auto n = make(Kind::If, loc);
  n->kids = {std::move(cond), std::move(then_), std::move(else_)};
  return Term(n);
}

Term Term::cons(Term head, Term tail, SourceLocation loc) {
  auto n = make(Kind::Cons, loc);
  n->kids = {std::move(head), std::move(tail)};
  return Term(n);
}

Term Term::null(Term t, SourceLocation loc) {
  auto n = make(Kind::Null, loc);
  n->kids = {std::move(t)};
  return Term(n);
}

Term Term::head(Term t, SourceLocation loc) {
  auto n = make(Kind::Head, loc);
  n->kids = {std::move(t)};
  return Term(n);
}

Term Term::tail(Term t, SourceLocation loc) {
  auto n = make(Kind::Tail, loc);
  n->kids = {std::move(t)};
  return Term(n);
}

Term Term::query(Concept c, SourceLocation loc) {
  auto n = make(Kind::Query, loc);
  n->concept_type = std::move(c);
  return Term(n);
}

Term Term::proj(Term subject, RoleExpr role, SourceLocation loc) {
  auto n = make(Kind::Proj, loc);
  n->role = std::move(role);
  n->kids = {std::move(subject)};
  return Term(n);
}

Term Term::case_(Term scrutinee, std::vector<CaseArm> arms, Term deflt, SourceLocation loc) {
  auto n = make(Kind::Case, loc);
  n->kids = {std::move(scrutinee), std::move(deflt)};
  n->arms = std::move(arms);
  return Term(n);
}

Term Term::eq(Term lhs, Term rhs, SourceLocation loc) {
  auto n = make(Kind::Eq, loc);
  n->kids = {std::move(lhs), std::move(rhs)};
  return Term(n);
}

CaseArm Term::arm(Concept c, std::string binder, Term body) {
  return CaseArm{std::move(c), std::move(binder), std::make_shared<const Term>(std::move(body))};
}

Term::Kind Term::kind() const { return node_->kind; }
SourceLocation Term::location() const { return node_->loc; }
const std::string& Term::name() const { return node_->name; }
const Primitive& Term::primitive() const { return node_->prim; }
const Type& Term::type() const { return *node_->type; }
const Concept& Term::query_concept() const { return *node_->concept_type; }
const RoleExpr& Term::role() const { return node_->role; }
const std::vector<CaseArm>& Term::arms() const { return node_->arms; }
const Term& Term::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t Term::child_count() const { return node_->kids.size(); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.kids != y.kids) return false;
  switch (x.kind) {
    case Term::Kind::Prim: return x.prim == y.prim;
    case Term::Kind::Nil:
    case Term::Kind::Abs: return *x.type == *y.type;
    case Term::Kind::Query: return *x.concept_type == *y.concept_type;
    case Term::Kind::Proj: return x.role == y.role;
    case Term::Kind::Case:
      if (x.arms.size() != y.arms.size()) return false;
      for (std::size_t i = 0; i < x.arms.size(); ++i) {
        const auto& p = x.arms[i];
        const auto& q = y.arms[i];
        if (!(p.concept_type == q.concept_type) || p.binder != q.binder || !(p.term() == q.term())) return false;
      }
      return true;
    default: return true;
  }
}

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool alpha(const Term& a, const Term& b, Env& env) {
  if (a.kind() != b.kind()) return false;
  using K = Term::Kind;
  auto bound_under = [&](const std::string& x, const std::string& y, const Term& s, const Term& t) {
    env.emplace_back(x, y);
    bool r = alpha(s, t, env);
    env.pop_back();
    return r;
  };
  switch (a.kind()) {
    case K::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool l = it->first == a.name(), r = it->second == b.name();
        if (l || r) return l && r;
      }
      return a.name() == b.name();
    }
    case K::Object: return a.name() == b.name();
    case K::Prim: return a.primitive() == b.primitive();
    case K::Nil: return a.type() == b.type();
    case K::Query: return a.query_concept() == b.query_concept();
    case K::Abs: return a.type() == b.type() && bound_under(a.name(), b.name(), a.child(0), b.child(0));
    case K::Let:
      return alpha(a.child(0), b.child(0), env) && bound_under(a.name(), b.name(), a.child(1), b.child(1));
    case K::Proj:
      if (!(a.role() == b.role())) return false;
      break;
    case K::Case: {
      if (a.arms().size() != b.arms().size()) return false;
      for (std::size_t i = 0; i < a.arms().size(); ++i) {
        const auto& p = a.arms()[i];
        const auto& q = b.arms()[i];
        if (!(p.concept_type == q.concept_type) || !bound_under(p.binder, q.binder, p.term(), q.term())) return false;
      }
      break;
    }
    default: break;
  }
  if (a.child_count() != b.child_count()) return false;
  for (std::size_t i = 0; i < a.child_count(); ++i)
    if (!alpha(a.child(i), b.child(i), env)) return false;
  return true;
}

// Precedence: 0 binders and if/case (extend to the right), 1 equality,
// 2 application-like, 3 projection, 4 atoms.
int precedence(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
    case Term::Kind::Let:
    case Term::Kind::If:
    case Term::Kind::Case: return 0;
    case Term::Kind::Eq: return 1;
    case Term::Kind::App:
    case Term::Kind::Fix:
    case Term::Kind::Cons:
    case Term::Kind::Null:
    case Term::Kind::Head:
    case Term::Kind::Tail:
    case Term::Kind::Query: return 2;
    case Term::Kind::Proj: return 3;
    default: return 4;
  }
}

void print_term(const Term& t, Notation n, int ctx, std::string& out) {
  const bool uni = n == Notation::Unicode;
  const bool parens = precedence(t) < ctx;
  if (parens) out += '(';
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var:
    case K::Object: out += t.name(); break;
    case K::Prim: out += primitive_to_string(t.primitive()); break;
    case K::Nil:
      out += "nil";
      if (!uni) out += "[" + to_string(t.type(), n) + "]";
      break;
    case K::Abs:
      out += uni ? "λ(" : "fun(";
      out += t.name() + ":" + to_string(t.type(), n) + "). ";
      print_term(t.child(0), n, 0, out);
      break;
    case K::Let:
      out += "let " + t.name() + " = ";
      print_term(t.child(0), n, 0, out);
      out += " in ";
      print_term(t.child(1), n, 0, out);
      break;
    case K::If:
      out += "if ";
      print_term(t.child(0), n, 0, out);
      out += " then ";
      print_term(t.child(1), n, 0, out);
      out += " else ";
      print_term(t.child(2), n, 0, out);
      break;
    case K::Case:
      out += "case ";
      print_term(t.child(0), n, 0, out);
      out += " of";
      for (const auto& a : t.arms()) {
        out += " | type " + to_string(a.concept_type, n) + " as " + a.binder + " -> ";
        print_term(a.term(), n, 1, out);
      }
      out += " | default ";
      print_term(t.child(1), n, 0, out);
      break;
    case K::Eq:
      print_term(t.child(0), n, 2, out);
      out += " = ";
      print_term(t.child(1), n, 2, out);
      break;
    case K::App:
      print_term(t.child(0), n, 2, out);
      out += ' ';
      print_term(t.child(1), n, 3, out);
      break;
    case K::Cons:
      out += "cons ";
      print_term(t.child(0), n, 3, out);
      out += ' ';
      print_term(t.child(1), n, 3, out);
      break;
    case K::Fix:
    case K::Null:
    case K::Head:
    case K::Tail:
      out += t.is(K::Fix) ? "fix " : t.is(K::Null) ? "null " : t.is(K::Head) ? "head " : "tail ";
      print_term(t.child(0), n, 3, out);
      break;
    case K::Query: out += "query " + to_string(t.query_concept(), n); break;
    case K::Proj:
      print_term(t.child(0), n, 3, out);
      out += "." + to_string(t.role(), n);
      break;
  }
  if (parens) out += ')';
}

void collect_free(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  using K = Term::Kind;
  auto under = [&](const std::string& x, const Term& body) {
    bound.push_back(x);
    collect_free(body, bound, out);
    bound.pop_back();
  };
  switch (t.kind()) {
    case K::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end() &&
          std::find(out.begin(), out.end(), t.name()) == out.end())
        out.push_back(t.name());
      return;
    case K::Abs: under(t.name(), t.child(0)); return;
    case K::Let:
      collect_free(t.child(0), bound, out);
      under(t.name(), t.child(1));
      return;
    case K::Case:
      collect_free(t.child(0), bound, out);
      for (const auto& a : t.arms()) under(a.binder, a.term());
      collect_free(t.child(1), bound, out);
      return;
    default:
      for (std::size_t i = 0; i < t.child_count(); ++i) collect_free(t.child(i), bound, out);
  }
}

}  // namespace

bool alpha_equivalent(const Term& a, const Term& b) {
  Env env;
  return alpha(a, b, env);
}

std::string to_string(const Term& t, Notation n) {
  std::string out;
  print_term(t, n, 0, out);
  return out;
}

bool is_value(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Object:
    case Term::Kind::Prim:
    case Term::Kind::Nil:
    case Term::Kind::Abs: return true;
    case Term::Kind::Cons: return is_value(t.child(0)) && is_value(t.child(1));
    default: return false;
  }
}

std::vector<std::string> free_variables(const Term& t) {
  std::vector<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Value
// ---------------------------------------------------------------------------

struct Value::Node {
  Kind kind;
  std::string name;
  std::optional<Type> type;
  std::vector<Value> kids;
  std::optional<Term> body;
  Primitive prim;
};

Value Value::object(std::string name) {
  return Value(std::make_shared<const Node>(Node{Kind::Object, std::move(name), {}, {}, {}, {}}));
}
Value Value::nil(Type elem) { return Value(std::make_shared<const Node>(Node{Kind::Nil, {}, std::move(elem), {}, {}, {}})); }
Value Value::cons(Value head, Value tail) {
  if (!tail.is(Kind::Nil) && !tail.is(Kind::Cons)) throw std::invalid_argument("cons value needs a list tail");
  return Value(
      std::make_shared<const Node>(Node{Kind::Cons, {}, {}, {std::move(head), std::move(tail)}, {}, {}}));
}
Value Value::closure(std::string param, Type annot, Term body) {
  return Value(
      std::make_shared<const Node>(Node{Kind::Closure, std::move(param), std::move(annot), {}, std::move(body), {}}));
}
Value Value::prim(Primitive p) {
  return Value(std::make_shared<const Node>(Node{Kind::Prim, {}, {}, {}, {}, std::move(p)}));
}

Value::Kind Value::kind() const { return node_->kind; }
const std::string& Value::name() const { return node_->name; }
const Type& Value::type() const { return *node_->type; }
const Value& Value::head() const { return node_->kids.at(0); }
const Value& Value::tail() const { return node_->kids.at(1); }
const Term& Value::body() const { return *node_->body; }
const Primitive& Value::primitive() const { return node_->prim; }

bool operator==(const Value& a, const Value& b) { return value_to_term(a) == value_to_term(b); }

Term value_to_term(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Object: return Term::object(v.name());
    case Value::Kind::Nil: return Term::nil(v.type());
    case Value::Kind::Cons: return Term::cons(value_to_term(v.head()), value_to_term(v.tail()));
    case Value::Kind::Closure: return Term::abs(v.name(), v.type(), v.body());
    case Value::Kind::Prim: return Term::prim(v.primitive());
  }
  throw std::logic_error("unreachable");
}

std::optional<Value> term_to_value(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Object: return Value::object(t.name());
    case Term::Kind::Prim: return Value::prim(t.primitive());
    case Term::Kind::Nil: return Value::nil(t.type());
    case Term::Kind::Abs: return Value::closure(t.name(), t.type(), t.child(0));
    case Term::Kind::Cons: {
      auto h = term_to_value(t.child(0));
      auto tl = term_to_value(t.child(1));
      if (!h || !tl || !(tl->is(Value::Kind::Nil) || tl->is(Value::Kind::Cons))) return std::nullopt;
      return Value::cons(*h, *tl);
    }
    default: return std::nullopt;
  }
}

std::string to_string(const Value& v, Notation n) { return to_string(value_to_term(v), n); }

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

Term substitute(const Term& t, const std::string& x, const Term& r) {
  using K = Term::Kind;
  auto sub = [&](const Term& s) { return substitute(s, x, r); };
  const SourceLocation loc = t.location();
  switch (t.kind()) {
    case K::Var: return t.name() == x ? r : t;
    case K::Object:
    case K::Prim:
    case K::Nil:
    case K::Query: return t;
    case K::Abs: return t.name() == x ? t : Term::abs(t.name(), t.type(), sub(t.child(0)), loc);
    case K::Let: return Term::let(t.name(), sub(t.child(0)), t.name() == x ? t.child(1) : sub(t.child(1)), loc);
    case K::Fix: return Term::fix(sub(t.child(0)), loc);
    case K::App: return Term::app(sub(t.child(0)), sub(t.child(1)), loc);
    case K::If: return Term::if_(sub(t.child(0)), sub(t.child(1)), sub(t.child(2)), loc);
    case K::Cons: return Term::cons(sub(t.child(0)), sub(t.child(1)), loc);
    case K::Null: return Term::null(sub(t.child(0)), loc);
    case K::Head: return Term::head(sub(t.child(0)), loc);
    case K::Tail: return Term::tail(sub(t.child(0)), loc);
    case K::Proj: return Term::proj(sub(t.child(0)), t.role(), loc);
    case K::Eq: return Term::eq(sub(t.child(0)), sub(t.child(1)), loc);
    case K::Case: {
      std::vector<CaseArm> arms;
      for (const auto& a : t.arms())
        arms.push_back(a.binder == x ? a : Term::arm(a.concept_type, a.binder, sub(a.term())));
      return Term::case_(sub(t.child(0)), std::move(arms), sub(t.child(1)), loc);
    }
  }
  throw std::logic_error("unreachable");
}

Term substitute(const Term& body, const std::string& name, const Value& replacement) {
  return substitute(body, name, value_to_term(replacement));
}

}  // namespace lambdadl
