#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lambdadl/concept.hpp"
#include "lambdadl/kb.hpp"

namespace lambdadl::detail {

/// Extra constraints layered on top of a knowledge base for one
/// satisfiability test.
struct TableauProblem {
  /// (object, concept): the object must be an instance of the concept.
  std::vector<std::pair<std::string, Concept>> object_constraints;
  /// When non-empty, a fresh individual must satisfy all of these.
  std::vector<Concept> fresh_individual;
};

struct TableauLimits {
  std::size_t max_nodes = 100000;
  std::chrono::milliseconds max_time{5000};
};

struct TableauStats {
  std::size_t nodes_created = 0;
  std::size_t branches = 0;
};

/// Decides satisfiability of `kb` plus `problem` with a completion-graph
/// tableau for ALCOI: NNF labels, lazy unfolding of atomic and nominal
/// inclusions, internalized general inclusions, pairwise anywhere blocking,
/// and nominal merging. Throws ResourceLimit when a limit is exceeded.
bool tableau_satisfiable(const KnowledgeBase& kb, const TableauProblem& problem, const TableauLimits& limits,
                         TableauStats* stats = nullptr);

}  // namespace lambdadl::detail
