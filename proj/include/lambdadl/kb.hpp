#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lambdadl/concept.hpp"
#include "lambdadl/errors.hpp"

namespace lambdadl {

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

struct Subsumption {
  Concept sub, sup;
  friend bool operator==(const Subsumption&, const Subsumption&) = default;
};

struct ConceptEquality {
  Concept lhs, rhs;
  friend bool operator==(const ConceptEquality&, const ConceptEquality&) = default;
};

struct ConceptAssertion {
  std::string object;
  Concept expr;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
  std::string subject, object;
  RoleExpr role;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

struct DataAssertion {
  std::string subject;
  std::string role;
  Primitive value;
  friend bool operator==(const DataAssertion&, const DataAssertion&) = default;
};

struct ObjectEquivalence {
  std::string a, b;
  friend bool operator==(const ObjectEquivalence&, const ObjectEquivalence&) = default;
};

using Axiom =
    std::variant<Subsumption, ConceptEquality, ConceptAssertion, RoleAssertion, DataAssertion, ObjectEquivalence>;

bool is_terminological(const Axiom& ax);

/// One-line source form of an axiom in the `.kb` syntax.
std::string to_string(const Axiom& ax, Notation n = Notation::Ascii);

// ---------------------------------------------------------------------------
// Signature and knowledge base
// ---------------------------------------------------------------------------

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> objects;
  std::set<std::string> data_roles;

  bool is_object_role(std::string_view r) const { return roles.contains(std::string(r)); }
  bool is_data_role(std::string_view r) const { return data_roles.contains(std::string(r)); }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// A knowledge base K = (TBox, ABox) with its signature. Immutable once built;
/// the constructor derives the signature and validates name usage.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  /// Classifies `axioms` into TBox/ABox (source order kept) and computes the
  /// signature. Throws SemanticError on inconsistent name usage.
  explicit KnowledgeBase(std::vector<Axiom> axioms);

  const Signature& signature() const { return sig_; }
  const std::vector<Axiom>& tbox() const { return tbox_; }
  const std::vector<Axiom>& abox() const { return abox_; }

  /// TBox with every ConceptEquality expanded to its two inclusions.
  const std::vector<Subsumption>& inclusions() const { return inclusions_; }

  /// Distinct literal values occurring in data assertions, in first-use order.
  const std::vector<Primitive>& literals() const { return literals_; }

  bool empty() const { return tbox_.empty() && abox_.empty(); }

  /// Checks that every name in `c` belongs to the signature with the right
  /// kind. Throws SemanticError otherwise.
  void validate_concept(const Concept& c) const;

  /// Equality of signatures and of axiom multisets.
  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b);

 private:
  Signature sig_;
  std::vector<Axiom> tbox_;
  std::vector<Axiom> abox_;
  std::vector<Subsumption> inclusions_;
  std::vector<Primitive> literals_;
};

/// Parses the `.kb` text format. `Domain(R, C)` and `Range(R, C)` expand to
/// `exists R.Top sub C` and `Top sub forall R.C`.
KnowledgeBase parse_kb(std::string_view text);

/// Parses one concept expression (whole input).
Concept parse_concept(std::string_view text);

/// Serializes to text that `parse_kb` maps back to an equal knowledge base.
std::string serialize_kb(const KnowledgeBase& kb);

KnowledgeBase load_kb_file(const std::string& path);

}  // namespace lambdadl
