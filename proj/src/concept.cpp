#include "lambdadl/concept.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace lambdadl {

struct Concept::Node {
  Kind kind;
  std::string name;
  RoleExpr role;
  Datatype dt = Datatype::String;
  std::vector<Concept> kids;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<const Concept::Node> finish(Concept::Node n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  h = mix(h, std::hash<std::string>{}(n.name));
  h = mix(h, std::hash<std::string>{}(n.role.name));
  h = mix(h, n.role.inverse ? 1 : 0);
  h = mix(h, static_cast<std::size_t>(n.dt));
  for (const auto& k : n.kids) h = mix(h, k.hash());
  n.hash = h;
  return std::make_shared<const Concept::Node>(std::move(n));
}

const std::shared_ptr<const Concept::Node>& top_node() {
  static const auto n = finish({Concept::Kind::Top, {}, {}, Datatype::String, {}, 0});
  return n;
}

const std::shared_ptr<const Concept::Node>& bottom_node() {
  static const auto n = finish({Concept::Kind::Bottom, {}, {}, Datatype::String, {}, 0});
  return n;
}

bool node_equal(const Concept::Node* x, const Concept::Node* y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->kind != y->kind) return false;
  return x->name == y->name && x->role == y->role && x->dt == y->dt && x->kids == y->kids;
}

std::strong_ordering node_compare(const Concept::Node* x, const Concept::Node* y) {
  if (x == y) return std::strong_ordering::equal;
  if (!x) return std::strong_ordering::less;
  if (!y) return std::strong_ordering::greater;
  if (auto c = x->kind <=> y->kind; c != 0) return c;
  if (auto c = x->name <=> y->name; c != 0) return c;
  if (auto c = x->role <=> y->role; c != 0) return c;
  if (auto c = x->dt <=> y->dt; c != 0) return c;
  if (auto c = x->kids.size() <=> y->kids.size(); c != 0) return c;
  for (std::size_t i = 0; i < x->kids.size(); ++i)
    if (auto c = x->kids[i] <=> y->kids[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

}  // namespace

const char* datatype_name(Datatype dt) {
  return dt == Datatype::String ? "xsd:string" : "xsd:boolean";
}

Datatype datatype_of(const Primitive& p) {
  return std::holds_alternative<bool>(p) ? Datatype::Boolean : Datatype::String;
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string primitive_to_string(const Primitive& p) {
  if (auto b = std::get_if<bool>(&p)) return *b ? "true" : "false";
  return quote_string(std::get<std::string>(p));
}

std::string to_string(const RoleExpr& r, Notation n) {
  if (!r.inverse) return r.name;
  return r.name + (n == Notation::Unicode ? "⁻" : "^-");
}

Concept Concept::top() { return Concept(top_node()); }
Concept Concept::bottom() { return Concept(bottom_node()); }

Concept Concept::atomic(std::string name) {
  return Concept(finish({Kind::Atomic, std::move(name), {}, Datatype::String, {}, 0}));
}

Concept Concept::nominal(std::string object) {
  return Concept(finish({Kind::Nominal, std::move(object), {}, Datatype::String, {}, 0}));
}

Concept Concept::datatype(Datatype dt) {
  return Concept(finish({Kind::Datatype, {}, {}, dt, {}, 0}));
}

Concept Concept::negation(Concept c) {
  return Concept(finish({Kind::Not, {}, {}, Datatype::String, {std::move(c)}, 0}));
}

Concept Concept::conjunction(Concept a, Concept b) {
  return Concept(finish({Kind::And, {}, {}, Datatype::String, {std::move(a), std::move(b)}, 0}));
}

Concept Concept::disjunction(Concept a, Concept b) {
  return Concept(finish({Kind::Or, {}, {}, Datatype::String, {std::move(a), std::move(b)}, 0}));
}

Concept Concept::exists(RoleExpr r, Concept filler) {
  return Concept(finish({Kind::Exists, {}, std::move(r), Datatype::String, {std::move(filler)}, 0}));
}

Concept Concept::forall(RoleExpr r, Concept filler) {
  return Concept(finish({Kind::Forall, {}, std::move(r), Datatype::String, {std::move(filler)}, 0}));
}

Concept::Kind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
const RoleExpr& Concept::role() const { return node_->role; }
Datatype Concept::datatype_tag() const { return node_->dt; }

const Concept& Concept::operand() const { return node_->kids[0]; }
const Concept& Concept::lhs() const { return node_->kids[0]; }
const Concept& Concept::rhs() const { return node_->kids[1]; }

std::size_t Concept::hash() const { return node_->hash; }

bool operator==(const Concept& a, const Concept& b) { return node_equal(a.node_.get(), b.node_.get()); }

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  return node_compare(a.node_.get(), b.node_.get());
}

namespace {

int precedence(Concept::Kind k) {
  switch (k) {
    case Concept::Kind::Or: return 1;
    case Concept::Kind::And: return 2;
    default: return 3;
  }
}

void print(const Concept& c, Notation n, int ctx, std::string& out) {
  const bool uni = n == Notation::Unicode;
  const int prec = precedence(c.kind());
  const bool parens = prec < ctx;
  if (parens) out += '(';
  switch (c.kind()) {
    case Concept::Kind::Nominal: out += "{" + c.name() + "}"; break;
    case Concept::Kind::Atomic: out += c.name(); break;
    case Concept::Kind::Top: out += uni ? "⊤" : "Top"; break;
    case Concept::Kind::Bottom: out += uni ? "⊥" : "Bot"; break;
    case Concept::Kind::Datatype: out += datatype_name(c.datatype_tag()); break;
    case Concept::Kind::Not:
      out += uni ? "¬" : "!";
      print(c.operand(), n, 3, out);
      break;
    case Concept::Kind::And:
      print(c.lhs(), n, 2, out);
      out += uni ? " ⊓ " : " & ";
      // right operand needs parens at equal precedence to keep the tree shape
      print(c.rhs(), n, 3, out);
      break;
    case Concept::Kind::Or:
      print(c.lhs(), n, 1, out);
      out += uni ? " ⊔ " : " | ";
      print(c.rhs(), n, 2, out);
      break;
    case Concept::Kind::Exists:
    case Concept::Kind::Forall:
      if (c.kind() == Concept::Kind::Exists)
        out += uni ? "∃" : "exists ";
      else
        out += uni ? "∀" : "forall ";
      out += to_string(c.role(), n);
      out += '.';
      print(c.operand(), n, 3, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Concept& c, Notation n) {
  std::string out;
  print(c, n, 0, out);
  return out;
}

Concept negation_normal_form(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Not: return negated_nnf(c.operand());
    case K::And: return Concept::conjunction(negation_normal_form(c.lhs()), negation_normal_form(c.rhs()));
    case K::Or: return Concept::disjunction(negation_normal_form(c.lhs()), negation_normal_form(c.rhs()));
    case K::Exists: return Concept::exists(c.role(), negation_normal_form(c.operand()));
    case K::Forall: return Concept::forall(c.role(), negation_normal_form(c.operand()));
    default: return c;
  }
}

Concept negated_nnf(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top: return Concept::bottom();
    case K::Bottom: return Concept::top();
    case K::Not: return negation_normal_form(c.operand());
    case K::And: return Concept::disjunction(negated_nnf(c.lhs()), negated_nnf(c.rhs()));
    case K::Or: return Concept::conjunction(negated_nnf(c.lhs()), negated_nnf(c.rhs()));
    case K::Exists: return Concept::forall(c.role(), negated_nnf(c.operand()));
    case K::Forall: return Concept::exists(c.role(), negated_nnf(c.operand()));
    default: return Concept::negation(c);
  }
}

bool is_nnf(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Not: {
      auto k = c.operand().kind();
      return k == K::Atomic || k == K::Nominal || k == K::Datatype;
    }
    case K::And:
    case K::Or: return is_nnf(c.lhs()) && is_nnf(c.rhs());
    case K::Exists:
    case K::Forall: return is_nnf(c.operand());
    default: return true;
  }
}

}  // namespace lambdadl
