#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>

namespace lambdadl {

/// Concrete datatypes admitted as fillers of data roles.
enum class Datatype { String, Boolean };

const char* datatype_name(Datatype dt);

/// A primitive value: a boolean or a string literal.
using Primitive = std::variant<bool, std::string>;

Datatype datatype_of(const Primitive& p);
/// Source form of a literal: `true`, `false` or a double-quoted escaped string.
std::string primitive_to_string(const Primitive& p);
std::string quote_string(const std::string& s);

/// Atomic role or its inverse. Double inversion is collapsed on construction,
/// so a RoleExpr is always a name plus a direction bit.
struct RoleExpr {
  std::string name;
  bool inverse = false;

  RoleExpr() = default;
  explicit RoleExpr(std::string n, bool inv = false) : name(std::move(n)), inverse(inv) {}

  RoleExpr inverted() const { return RoleExpr(name, !inverse); }

  friend bool operator==(const RoleExpr&, const RoleExpr&) = default;
  friend auto operator<=>(const RoleExpr&, const RoleExpr&) = default;
};

enum class Notation { Ascii, Unicode };

std::string to_string(const RoleExpr& r, Notation n = Notation::Ascii);

/// Immutable concept expression of ALCOI(D). Shares structure; equality and
/// ordering are structural.
class Concept {
 public:
  enum class Kind { Nominal, Atomic, Top, Bottom, Not, And, Or, Exists, Forall, Datatype };

  static Concept top();
  static Concept bottom();
  static Concept atomic(std::string name);
  static Concept nominal(std::string object);
  static Concept datatype(Datatype dt);
  static Concept negation(Concept c);
  static Concept conjunction(Concept a, Concept b);
  static Concept disjunction(Concept a, Concept b);
  static Concept exists(RoleExpr r, Concept filler);
  static Concept forall(RoleExpr r, Concept filler);

  Kind kind() const;
  /// Concept name for Atomic, object name for Nominal.
  const std::string& name() const;
  const RoleExpr& role() const;
  Datatype datatype_tag() const;
  /// Operand of Not; filler of Exists/Forall.
  const Concept& operand() const;
  const Concept& lhs() const;
  const Concept& rhs() const;

  std::size_t hash() const;

  bool is(Kind k) const { return kind() == k; }

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

  struct Node;

 private:
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

/// Printing precedence follows the parser: `|` < `&` < prefix operators.
std::string to_string(const Concept& c, Notation n = Notation::Ascii);

/// Negation normal form: negation is pushed down to atomic, nominal and
/// datatype leaves; double negation and negated Top/Bot are removed.
Concept negation_normal_form(const Concept& c);
/// negation_normal_form(Not(c)) without building the intermediate node.
Concept negated_nnf(const Concept& c);

bool is_nnf(const Concept& c);

}  // namespace lambdadl
