#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdadl/reasoner.hpp"
#include "lambdadl/syntax.hpp"

namespace lambdadl {

/// A closed term with no applicable rule that is not one of the two
/// sanctioned stuck forms. Unreachable from well-typed programs.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOutcome {
  enum class Kind { Stepped, Done, StuckHeadNil, StuckTailNil };

  Kind kind;
  std::optional<Term> next;    // Stepped
  std::optional<Value> value;  // Done
  /// Reduction rule at the redex, e.g. "E-APPABS"; empty for Done.
  std::string rule;

  bool is(Kind k) const { return kind == k; }
};

struct EvalConfig {
  std::size_t step_limit = 1000000;
  bool trace = false;
  Notation notation = Notation::Unicode;
};

/// One call-by-value step.
EvalOutcome step(const KnowledgeSystem& ks, const Term& t);

/// Names of the reduction rules whose conclusion matches `t` at the root,
/// congruence rules included. A deterministic semantics yields at most one.
std::vector<std::string> matching_rules(const KnowledgeSystem& ks, const Term& t);

/// σ for queries: named instances of `c` as a list; nil[elem] when empty.
Value materialize_query(const KnowledgeSystem& ks, const Concept& c, const Type& elem);
/// σ for projections over an object role or a data role.
Value materialize_projection(const KnowledgeSystem& ks, const std::string& a, const RoleExpr& r, const Type& elem);

struct EvalResult {
  enum class Status { Value, StuckHeadNil, StuckTailNil, StepLimitExceeded };

  Status status;
  std::optional<Value> value;
  Term last;  // final term: the value, the stuck term or the term at the limit
  std::size_t steps = 0;

  bool ok() const { return status == Status::Value; }
};

/// Iterates `step`. With cfg.trace, writes "i: term" for every term of the
/// reduction sequence (index 0 is the input) to `trace_out`.
EvalResult evaluate(const KnowledgeSystem& ks, const Term& t, const EvalConfig& cfg = {},
                    std::ostream* trace_out = nullptr);

}  // namespace lambdadl
