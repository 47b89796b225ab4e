#include "lambdadl/reasoner.hpp"

#include <algorithm>
#include <cstdlib>

#include "tableau.hpp"

namespace lambdadl {

namespace {

std::optional<long long> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  long long n = std::strtoll(v, &end, 10);
  if (*end != '\0' || n <= 0) return std::nullopt;
  return n;
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  if (auto n = env_number("LAMBDADL_NODE_BUDGET")) b.max_nodes = static_cast<std::size_t>(*n);
  if (auto t = env_number("LAMBDADL_TIME_BUDGET_MS")) b.max_time = std::chrono::milliseconds(*t);
  return b;
}

struct TableauReasoner::Problem {
  detail::TableauProblem p;
};

TableauReasoner::TableauReasoner(KnowledgeBase kb, Budget budget) : kb_(std::move(kb)), budget_(budget) {}

bool TableauReasoner::unsatisfiable(const std::string& key, const Problem& p) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++stats_.cache_hits;
      return it->second;
    }
  }
  detail::TableauStats ts;
  bool sat = detail::tableau_satisfiable(kb_, p.p, {budget_.max_nodes, budget_.max_time}, &ts);
  std::lock_guard lock(mu_);
  ++stats_.tableau_runs;
  stats_.nodes_created += ts.nodes_created;
  cache_.emplace(key, !sat);
  return !sat;
}

bool TableauReasoner::is_consistent() const { return !unsatisfiable("kb", Problem{}); }

bool TableauReasoner::is_satisfiable(const Concept& c) const {
  Problem p;
  p.p.fresh_individual = {c};
  return !unsatisfiable("sat " + to_string(c), p);
}

bool TableauReasoner::is_subsumed(const Concept& c, const Concept& d) const {
  if (c == d || d.is(Concept::Kind::Top) || c.is(Concept::Kind::Bottom)) return true;
  // Seeds C and ¬D separately on one fresh individual; the satisfiability
  // test on C ⊓ ¬D takes the other path through the conjunction rule.
  Problem p;
  p.p.fresh_individual = {c, Concept::negation(d)};
  return unsatisfiable("sub " + to_string(c) + " ; " + to_string(d), p);
}

bool TableauReasoner::is_instance(const std::string& a, const Concept& c) const {
  Problem p;
  p.p.object_constraints = {{a, Concept::negation(c)}};
  return unsatisfiable("inst " + a + " ; " + to_string(c), p);
}

bool TableauReasoner::is_instance_via_nominal(const std::string& a, const Concept& c) const {
  return is_subsumed(Concept::nominal(a), c);
}

bool TableauReasoner::are_equivalent_objects(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  Problem p;
  p.p.object_constraints = {{a, Concept::negation(Concept::nominal(b))}};
  return unsatisfiable("eq " + std::min(a, b) + " ; " + std::max(a, b), p);
}

bool TableauReasoner::entails_role_assertion(const std::string& a, const std::string& b, const RoleExpr& r) const {
  for (const auto& ax : kb_.abox()) {
    if (auto* ra = std::get_if<RoleAssertion>(&ax)) {
      if (ra->role.name != r.name) continue;
      bool same_dir = ra->role.inverse == r.inverse;
      if (same_dir ? (ra->subject == a && ra->object == b) : (ra->subject == b && ra->object == a)) return true;
    }
  }
  Problem p;
  p.p.object_constraints = {{a, Concept::forall(r, Concept::negation(Concept::nominal(b)))}};
  return unsatisfiable("role " + a + " ; " + b + " ; " + to_string(r), p);
}

std::vector<std::string> TableauReasoner::query_instances(const Concept& c) const {
  std::vector<std::string> out;
  for (const auto& o : kb_.signature().objects)
    if (is_instance(o, c)) out.push_back(o);
  return out;  // signature sets are ordered, so already sorted
}

std::vector<std::string> TableauReasoner::query_role_successors(const std::string& a, const RoleExpr& r) const {
  std::vector<std::string> out;
  for (const auto& o : kb_.signature().objects)
    if (entails_role_assertion(a, o, r)) out.push_back(o);
  return out;
}

std::vector<Primitive> TableauReasoner::query_data_successors(const std::string& a, const std::string& r) const {
  std::vector<Primitive> out;
  for (const auto& ax : kb_.abox())
    if (auto* d = std::get_if<DataAssertion>(&ax); d && d->subject == a && d->role == r) out.push_back(d->value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Datatype> TableauReasoner::data_range(const std::string& r) const {
  for (Datatype dt : {Datatype::String, Datatype::Boolean})
    if (is_subsumed(Concept::top(), Concept::forall(RoleExpr(r), Concept::datatype(dt)))) return dt;
  return std::nullopt;
}

ReasonerStats TableauReasoner::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void TableauReasoner::clear_cache() {
  std::lock_guard lock(mu_);
  cache_.clear();
}

bool is_satisfiable(const KnowledgeBase& kb, const Concept& c, Budget b) {
  return TableauReasoner(kb, b).is_satisfiable(c);
}

bool is_subsumed(const KnowledgeBase& kb, const Concept& c, const Concept& d, Budget b) {
  return TableauReasoner(kb, b).is_subsumed(c, d);
}

bool is_instance(const KnowledgeBase& kb, const std::string& a, const Concept& c, Budget b) {
  return TableauReasoner(kb, b).is_instance(a, c);
}

bool are_equivalent_objects(const KnowledgeBase& kb, const std::string& a, const std::string& b, Budget budget) {
  return TableauReasoner(kb, budget).are_equivalent_objects(a, b);
}

std::vector<std::string> query_instances(const KnowledgeBase& kb, const Concept& c, Budget b) {
  return TableauReasoner(kb, b).query_instances(c);
}

std::vector<std::string> query_role_successors(const KnowledgeBase& kb, const std::string& a, const RoleExpr& r,
                                               Budget b) {
  return TableauReasoner(kb, b).query_role_successors(a, r);
}

std::vector<Primitive> query_data_successors(const KnowledgeBase& kb, const std::string& a, const std::string& r) {
  return TableauReasoner(kb).query_data_successors(a, r);
}

}  // namespace lambdadl
