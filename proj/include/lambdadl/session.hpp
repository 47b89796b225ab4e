#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "lambdadl/eval.hpp"
#include "lambdadl/kb.hpp"
#include "lambdadl/reasoner.hpp"
#include "lambdadl/typecheck.hpp"

namespace lambdadl {

/// A loaded knowledge base plus the names bound so far. Every binding has a
/// context type and a value whose own type is a subtype of it.
class Session {
 public:
  Session(KnowledgeBase kb, Budget budget = Budget::from_env(), EvalConfig cfg = {});

  const KnowledgeSystem& ks() const { return *ks_; }
  const TypingContext& context() const { return ctx_; }
  const std::map<std::string, Value>& bindings() const { return values_; }
  const EvalConfig& config() const { return cfg_; }
  EvalConfig& config() { return cfg_; }

  /// Parses `text` with the bound names in scope.
  Term parse(std::string_view text) const;
  Type type_of(const Term& t) const;
  /// Replaces bound names by their values.
  Term close(const Term& t) const;

  struct Outcome {
    std::optional<std::string> name;  // set for `let x = t`
    Type type;
    EvalResult result;
  };

  /// Handles `let x = t` (bound on success) or a bare term. Throws
  /// ParseError, TypeError or ResourceLimit; evaluation failures are
  /// reported in the result.
  Outcome submit(std::string_view input, std::ostream* trace_out = nullptr);

  /// Replaces the knowledge base and clears all bindings.
  void reset(KnowledgeBase kb);

 private:
  Budget budget_;
  EvalConfig cfg_;
  std::unique_ptr<TableauReasoner> ks_;
  TypingContext ctx_;
  std::map<std::string, Value> values_;
};

/// Line-oriented read-eval-print loop. Returns when input ends or on :quit.
void run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err, bool prompt = true);

}  // namespace lambdadl
