#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lambdadl/concept.hpp"
#include "lambdadl/errors.hpp"

namespace lambdadl {

enum class PrimType { Bool, String };

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

class Type {
 public:
  enum class Kind { Concept, Func, List, Prim };

  static Type from_concept(Concept c);
  static Type func(Type dom, Type cod);
  static Type list(Type elem);
  static Type prim(PrimType p);
  static Type boolean() { return prim(PrimType::Bool); }
  static Type string() { return prim(PrimType::String); }

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const Concept& as_concept() const;
  const Type& domain() const;
  const Type& codomain() const;
  const Type& element() const;
  PrimType prim_tag() const;

  friend bool operator==(const Type& a, const Type& b);

  struct Node;

 private:
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `A`, `(A & B) list`, `C -> string list`; arrows associate to the right.
std::string to_string(const Type& t, Notation n = Notation::Ascii);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

class Term;

struct CaseArm {
  Concept concept_type;
  std::string binder;
  std::shared_ptr<const Term> body;

  const Term& term() const { return *body; }
};

class Term {
 public:
  enum class Kind {
    Var,
    Object,
    Prim,
    Nil,
    Abs,
    Let,
    Fix,
    App,
    If,
    Cons,
    Null,
    Head,
    Tail,
    Query,
    Proj,
    Case,
    Eq
  };

  static Term var(std::string name, SourceLocation loc = {});
  static Term object(std::string name, SourceLocation loc = {});
  static Term prim(Primitive p, SourceLocation loc = {});
  static Term nil(Type elem, SourceLocation loc = {});
  static Term abs(std::string param, Type annot, Term body, SourceLocation loc = {});
  static Term let(std::string name, Term bound, Term body, SourceLocation loc = {});
  static Term fix(Term t, SourceLocation loc = {});
  static Term app(Term fn, Term arg, SourceLocation loc = {});
  static Term if_(Term cond, Term then_, Term else_, SourceLocation loc = {});
  static Term cons(Term head, Term tail, SourceLocation loc = {});
  static Term null(Term t, SourceLocation loc = {});
  static Term head(Term t, SourceLocation loc = {});
  static Term tail(Term t, SourceLocation loc = {});
  static Term query(Concept c, SourceLocation loc = {});
  static Term proj(Term subject, RoleExpr role, SourceLocation loc = {});
  static Term case_(Term scrutinee, std::vector<CaseArm> arms, Term deflt, SourceLocation loc = {});
  static Term eq(Term lhs, Term rhs, SourceLocation loc = {});

  static CaseArm arm(Concept c, std::string binder, Term body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  SourceLocation location() const;

  /// Var, Object, Abs parameter, Let binder.
  const std::string& name() const;
  const Primitive& primitive() const;
  /// Nil element annotation or Abs parameter annotation.
  const Type& type() const;
  const Concept& query_concept() const;
  const RoleExpr& role() const;
  const std::vector<CaseArm>& arms() const;

  /// Children in source order: Abs{body}, Let{bound, body}, Fix{t},
  /// App{fn, arg}, If{c, t, e}, Cons{h, t}, Null/Head/Tail{t}, Proj{subject},
  /// Case{scrutinee, default}, Eq{lhs, rhs}.
  const Term& child(std::size_t i) const;
  std::size_t child_count() const;

  /// Same node kinds and payloads, same names; locations ignored.
  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Equality up to renaming of bound variables.
bool alpha_equivalent(const Term& a, const Term& b);

/// Nil carries the annotation; concept fields in arms are printed verbatim.
/// ASCII output parses back to an α-equivalent term. The Unicode notation
/// is for display and prints `nil` without its annotation.
std::string to_string(const Term& t, Notation n = Notation::Ascii);

bool is_value(const Term& t);

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Term& t);

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

class Value {
 public:
  enum class Kind { Object, Nil, Cons, Closure, Prim };

  static Value object(std::string name);
  static Value nil(Type elem);
  static Value cons(Value head, Value tail);
  static Value closure(std::string param, Type annot, Term body);
  static Value prim(Primitive p);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& name() const;  // Object name or Closure parameter
  const Type& type() const;         // Nil annotation or Closure annotation
  const Value& head() const;
  const Value& tail() const;
  const Term& body() const;
  const Primitive& primitive() const;

  friend bool operator==(const Value& a, const Value& b);

  struct Node;

 private:
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Term value_to_term(const Value& v);
/// The value denoted by a term in value form; nullopt otherwise.
std::optional<Value> term_to_value(const Term& t);

std::string to_string(const Value& v, Notation n = Notation::Ascii);

// ---------------------------------------------------------------------------
// Substitution and parsing
// ---------------------------------------------------------------------------

/// [name ↦ replacement] body. The replacement must be closed, so no capture
/// can occur; substitution stops under binders that shadow `name`.
Term substitute(const Term& body, const std::string& name, const Term& replacement);
Term substitute(const Term& body, const std::string& name, const Value& replacement);

/// Parses a program. Identifiers bound by an enclosing binder or listed in
/// `free_vars` become variables; every other identifier is an object name.
/// `letrec x:T = t1 in t2` is read as `let x = fix (fun(x:T). t1) in t2`.
Term parse_term(std::string_view text, const std::vector<std::string>& free_vars = {});
Type parse_type(std::string_view text);

}  // namespace lambdadl
