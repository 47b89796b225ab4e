#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lambdadl/reasoner.hpp"
#include "lambdadl/syntax.hpp"

namespace lambdadl {

/// Γ: ordered bindings; lookup finds the rightmost one.
class TypingContext {
 public:
  TypingContext() = default;

  TypingContext extended(std::string name, Type t) const;
  void bind(std::string name, Type t) { bindings_.emplace_back(std::move(name), std::move(t)); }
  std::optional<Type> lookup(const std::string& name) const;
  const std::vector<std::pair<std::string, Type>>& bindings() const { return bindings_; }
  std::vector<std::string> names() const;

 private:
  std::vector<std::pair<std::string, Type>> bindings_;
};

enum class TypeErrorKind {
  Mismatch,
  UnsatisfiableQuery,
  EmptyIntersection,
  SubsumedCase,
  UnboundVariable,
  UnknownObject,
  UnknownName,
  NonConceptProjection,
  NonListElim,
  NotAFunction,
  UnsupportedEquality
};

const char* type_error_kind_name(TypeErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string rule, SourceLocation loc, std::string message);

  TypeErrorKind kind() const { return kind_; }
  /// Name of the violated rule, e.g. "T-APP" or "T-DISPATCH".
  const std::string& rule() const { return rule_; }
  SourceLocation location() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  TypeErrorKind kind_;
  std::string rule_;
  SourceLocation loc_;
  std::string message_;
};

/// Source typing checks every premise. Runtime typing is used on terms
/// produced by evaluation: substituting a more specific value may make a
/// dispatch arm or an equality unreachable without making the term unsafe,
/// so the emptiness premises of T-EQN and T-DISPATCH are not checked.
enum class TypingMode { Source, Runtime };

/// Throws TypeError(Mismatch) on shape or primitive mismatch.
Type lub(const Type& s, const Type& t);
Type glb(const Type& s, const Type& t);

bool is_subtype(const KnowledgeSystem& ks, const Type& s, const Type& t);
/// Why `s <: t` fails, naming the subtyping rule that breaks down
/// (e.g. "S-CONCEPT: K does not entail A ⊑ B"); nullopt if it holds.
std::optional<std::string> subtype_failure(const KnowledgeSystem& ks, const Type& s, const Type& t);

/// The minimal type of `t` under Γ. Throws TypeError.
Type typecheck(const KnowledgeSystem& ks, const TypingContext& ctx, const Term& t,
               TypingMode mode = TypingMode::Source);

}  // namespace lambdadl
