#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lambdadl/concept.hpp"
#include "lambdadl/kb.hpp"

namespace lambdadl {

/// Per-question limits on the tableau.
struct Budget {
  std::size_t max_nodes = 100000;
  std::chrono::milliseconds max_time{5000};

  /// Defaults overridden by LAMBDADL_NODE_BUDGET and LAMBDADL_TIME_BUDGET_MS.
  static Budget from_env();
};

/// Entailment questions over one fixed knowledge base. Every answer is
/// "true in all models"; anything unknown is reported as false.
class KnowledgeSystem {
 public:
  virtual ~KnowledgeSystem() = default;

  virtual const KnowledgeBase& kb() const = 0;

  virtual bool is_consistent() const = 0;
  virtual bool is_satisfiable(const Concept& c) const = 0;
  virtual bool is_subsumed(const Concept& c, const Concept& d) const = 0;
  virtual bool is_instance(const std::string& a, const Concept& c) const = 0;
  virtual bool are_equivalent_objects(const std::string& a, const std::string& b) const = 0;
  virtual bool entails_role_assertion(const std::string& a, const std::string& b, const RoleExpr& r) const = 0;

  /// Named instances of `c`, sorted by name.
  virtual std::vector<std::string> query_instances(const Concept& c) const = 0;
  /// Named `r`-successors of `a`, sorted by name.
  virtual std::vector<std::string> query_role_successors(const std::string& a, const RoleExpr& r) const = 0;
  /// Asserted literal values of data role `r` on `a`, sorted.
  virtual std::vector<Primitive> query_data_successors(const std::string& a, const std::string& r) const = 0;

  /// The datatype Π with K ⊨ ⊤ ⊑ ∀r.Π, if any.
  virtual std::optional<Datatype> data_range(const std::string& r) const = 0;
};

struct ReasonerStats {
  std::size_t tableau_runs = 0;
  std::size_t cache_hits = 0;
  std::size_t nodes_created = 0;
};

/// Built-in tableau backend with a thread-safe memo of answers.
class TableauReasoner final : public KnowledgeSystem {
 public:
  explicit TableauReasoner(KnowledgeBase kb, Budget budget = Budget::from_env());

  const KnowledgeBase& kb() const override { return kb_; }
  const Budget& budget() const { return budget_; }

  bool is_consistent() const override;
  bool is_satisfiable(const Concept& c) const override;
  bool is_subsumed(const Concept& c, const Concept& d) const override;
  bool is_instance(const std::string& a, const Concept& c) const override;
  bool are_equivalent_objects(const std::string& a, const std::string& b) const override;
  bool entails_role_assertion(const std::string& a, const std::string& b, const RoleExpr& r) const override;
  std::vector<std::string> query_instances(const Concept& c) const override;
  std::vector<std::string> query_role_successors(const std::string& a, const RoleExpr& r) const override;
  std::vector<Primitive> query_data_successors(const std::string& a, const std::string& r) const override;
  std::optional<Datatype> data_range(const std::string& r) const override;

  /// Instance check through the nominal reduction {a} ⊑ C.
  bool is_instance_via_nominal(const std::string& a, const Concept& c) const;

  ReasonerStats stats() const;
  void clear_cache();

 private:
  struct Problem;
  bool unsatisfiable(const std::string& key, const Problem& p) const;

  KnowledgeBase kb_;
  Budget budget_;
  mutable std::mutex mu_;
  mutable std::map<std::string, bool> cache_;
  mutable ReasonerStats stats_;
};

// Uncached one-shot wrappers.
bool is_satisfiable(const KnowledgeBase& kb, const Concept& c, Budget b = Budget::from_env());
bool is_subsumed(const KnowledgeBase& kb, const Concept& c, const Concept& d, Budget b = Budget::from_env());
bool is_instance(const KnowledgeBase& kb, const std::string& a, const Concept& c, Budget b = Budget::from_env());
bool are_equivalent_objects(const KnowledgeBase& kb, const std::string& a, const std::string& b,
                            Budget budget = Budget::from_env());
std::vector<std::string> query_instances(const KnowledgeBase& kb, const Concept& c, Budget b = Budget::from_env());
std::vector<std::string> query_role_successors(const KnowledgeBase& kb, const std::string& a, const RoleExpr& r,
                                               Budget b = Budget::from_env());
std::vector<Primitive> query_data_successors(const KnowledgeBase& kb, const std::string& a, const std::string& r);

}  // namespace lambdadl
