#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "lambdadl/concept.hpp"
#include "lambdadl/kb.hpp"

namespace lambdadl {

/// An explicit interpretation over the universe {0, ..., universe-1}. Names
/// missing from the maps denote the empty set.
struct FiniteInterpretation {
  int universe = 0;
  std::map<std::string, std::set<int>> concepts;
  std::map<std::string, std::set<std::pair<int, int>>> roles;
  std::map<std::string, int> objects;
  std::map<Primitive, int> literals;
  std::set<int> strings;   // extension of xsd:string
  std::set<int> booleans;  // extension of xsd:boolean
};

std::set<int> concept_extension(const FiniteInterpretation& I, const Concept& c);

/// Direct evaluation of one axiom in I.
bool satisfies(const FiniteInterpretation& I, const Axiom& ax);

/// I satisfies every axiom of kb, interprets every KB object and literal,
/// keeps the two datatypes disjoint and puts each literal in its datatype.
bool is_model(const FiniteInterpretation& I, const KnowledgeBase& kb);

/// Searches universes of size 1..max_size for a model of kb that violates
/// `goal`. Every interpretation returned has been re-checked with is_model
/// and satisfies; a failed re-check throws std::logic_error. An empty result
/// means only that no small countermodel exists.
std::optional<FiniteInterpretation> find_countermodel(const KnowledgeBase& kb, const Axiom& goal, int max_size = 4);

std::string to_string(const FiniteInterpretation& I);

}  // namespace lambdadl
