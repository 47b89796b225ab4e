#include "tableau.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>

#include "lambdadl/errors.hpp"

namespace lambdadl::detail {

namespace {

using K = Concept::Kind;

struct Entry {
  K kind;
  int a = -1;  // Not: operand; And/Or: lhs; Exists/Forall: filler
  int b = -1;  // And/Or: rhs
  int role = -1;
  bool inverse = false;
  int object = -1;  // Nominal
  Datatype dt = Datatype::String;
};

/// Interns NNF concepts to dense ids for the duration of one test.
class ConceptTable {
 public:
  int intern(const Concept& c) {
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    Entry e{c.kind()};
    switch (c.kind()) {
      case K::Not: e.a = intern(c.operand()); break;
      case K::And:
      case K::Or:
        e.a = intern(c.lhs());
        e.b = intern(c.rhs());
        break;
      case K::Exists:
      case K::Forall:
        e.a = intern(c.operand());
        e.role = role_id(c.role().name);
        e.inverse = c.role().inverse;
        break;
      case K::Nominal: e.object = object_id(c.name()); break;
      case K::Datatype: e.dt = c.datatype_tag(); break;
      default: break;
    }
    int id = static_cast<int>(entries_.size());
    entries_.push_back(e);
    concepts_.push_back(c);
    neg_.push_back(-1);
    ids_.emplace(c, id);
    return id;
  }

  int negation(int id) {
    if (neg_[id] < 0) {
      int n = intern(negated_nnf(concepts_[id]));
      neg_[id] = n;
      neg_[n] = id;
    }
    return neg_[id];
  }

  const Entry& operator[](int id) const { return entries_[id]; }

  int role_id(const std::string& name) {
    auto [it, inserted] = roles_.emplace(name, static_cast<int>(roles_.size()));
    return it->second;
  }
  int object_id(const std::string& name) {
    auto [it, inserted] = objects_.emplace(name, static_cast<int>(object_names_.size()));
    if (inserted) object_names_.push_back(name);
    return it->second;
  }
  std::size_t object_count() const { return object_names_.size(); }
  const std::string& object_name(int id) const { return object_names_[id]; }

 private:
  std::unordered_map<Concept, int, ConceptHash> ids_;
  std::vector<Entry> entries_;
  std::vector<Concept> concepts_;
  std::vector<int> neg_;
  std::map<std::string, int> roles_;
  std::map<std::string, int> objects_;
  std::vector<std::string> object_names_;
};

/// Dependency sets (sorted branch ids) are interned; a fact stores the id
/// of the set of branch points it depends on. Id 0 is the empty set.
class DepTable {
 public:
  DepTable() { intern({}); }

  int intern(std::vector<int> d) {
    auto [it, inserted] = ids_.emplace(std::move(d), static_cast<int>(sets_.size()));
    if (inserted) sets_.push_back(&it->first);
    return it->second;
  }
  const std::vector<int>& operator[](int id) const { return *sets_[id]; }

  int join(int a, int b) {
    if (a == b || b == 0) return a;
    if (a == 0) return b;
    if (a > b) std::swap(a, b);
    auto key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    if (auto it = joins_.find(key); it != joins_.end()) return it->second;
    std::vector<int> r;
    std::set_union((*this)[a].begin(), (*this)[a].end(), (*this)[b].begin(), (*this)[b].end(),
                   std::back_inserter(r));
    int id = intern(std::move(r));
    joins_.emplace(key, id);
    return id;
  }

 private:
  std::map<std::vector<int>, int> ids_;
  std::vector<const std::vector<int>*> sets_;
  std::unordered_map<std::uint64_t, int> joins_;
};

/// `inverse` false: x -role-> other; true: other -role-> x.
struct Edge {
  int role;
  bool inverse;
  int other;
  int dep;
};

struct Node {
  std::vector<int> label;  // sorted concept ids
  std::vector<int> deps;   // parallel to label
  std::vector<Edge> edges;
  int parent = -1;
  bool root = false;
  bool alive = true;

  bool has(int c) const { return std::binary_search(label.begin(), label.end(), c); }
  int dep(int c) const { return deps[std::lower_bound(label.begin(), label.end(), c) - label.begin()]; }
};

/// Completion graph. Nodes are shared between the copies made at branch
/// points and cloned on first write.
struct Graph {
  std::vector<std::shared_ptr<Node>> nodes;
  std::vector<int> nominal;  // object id -> node id
  std::vector<int> dirty;
  std::vector<char> queued;

  std::size_t size() const { return nodes.size(); }
  const Node& at(int x) const { return *nodes[x]; }
  Node& mut(int x) {
    auto& p = nodes[x];
    if (p.use_count() > 1) p = std::make_shared<Node>(*p);
    return *p;
  }

  void touch(int x) {
    if (static_cast<std::size_t>(x) >= queued.size()) queued.resize(nodes.size(), 0);
    if (!queued[x]) {
      queued[x] = 1;
      dirty.push_back(x);
    }
  }

  bool add(int x, int c, int dep) {
    const auto& l = at(x).label;
    auto pos = std::lower_bound(l.begin(), l.end(), c) - l.begin();
    if (pos < static_cast<std::ptrdiff_t>(l.size()) && l[pos] == c) return false;
    Node& n = mut(x);
    n.label.insert(n.label.begin() + pos, c);
    n.deps.insert(n.deps.begin() + pos, dep);
    touch(x);
    return true;
  }

  bool has_edge(int from, int role, int to) const {
    for (const Edge& e : at(from).edges)
      if (!e.inverse && e.role == role && e.other == to) return true;
    return false;
  }

  void add_edge(int from, int role, int to, int dep) {
    if (has_edge(from, role, to)) return;
    mut(from).edges.push_back({role, false, to, dep});
    mut(to).edges.push_back({role, true, from, dep});
    touch(from);
    touch(to);
  }

  void erase_edge(int from, int role, int to) {
    auto drop = [](std::vector<Edge>& es, int role, bool inverse, int other) {
      for (auto it = es.begin(); it != es.end(); ++it)
        if (it->role == role && it->inverse == inverse && it->other == other) {
          es.erase(it);
          return;
        }
    };
    drop(mut(from).edges, role, false, to);
    drop(mut(to).edges, role, true, from);
  }

  /// Nodes y with (x, y) in role (or role^- when `inverse`), with the
  /// dependency of the edge.
  template <class F>
  void for_each_neighbor(int x, int role, bool inverse, F&& f) const {
    for (const Edge& e : at(x).edges)
      if (e.role == role && e.inverse == inverse) f(e.other, e.dep);
  }
};

struct Blocking {
  std::vector<char> direct, indirect;
  bool blocked(int x) const { return direct[x] || indirect[x]; }
};

struct Clash {
  int dep;
};

class Engine {
 public:
  Engine(const KnowledgeBase& kb, const TableauProblem& problem, const TableauLimits& limits, TableauStats* stats)
      : kb_(kb), problem_(problem), limits_(limits), stats_(stats),
        deadline_(std::chrono::steady_clock::now() + limits.max_time) {}

  bool run() {
    Graph g = initial_graph();
    return !expand(std::move(g)).has_value();
  }

 private:
  // -- preprocessing -------------------------------------------------------

  void told(const Concept& lhs, const Concept& rhs) {
    told_[table_.intern(lhs)].push_back(table_.intern(negation_normal_form(rhs)));
  }

  static bool unfoldable(const Concept& c) { return c.is(K::Atomic) || c.is(K::Nominal); }

  /// Places `lhs ⊑ rhs` either as a lazily unfolded rule on a name or as a
  /// universal constraint, rewriting into an equivalent inclusion first.
  void absorb(const Concept& lhs, const Concept& rhs) {
    switch (lhs.kind()) {
      case K::Top: universal_.push_back(table_.intern(negation_normal_form(rhs))); return;
      case K::Bottom: return;
      case K::Atomic:
      case K::Nominal: told(lhs, rhs); return;
      case K::Exists: absorb(lhs.operand(), Concept::forall(lhs.role().inverted(), rhs)); return;
      case K::Or:
        absorb(lhs.lhs(), rhs);
        absorb(lhs.rhs(), rhs);
        return;
      case K::And:
        if (unfoldable(lhs.lhs())) {
          told(lhs.lhs(), Concept::disjunction(Concept::negation(lhs.rhs()), rhs));
          return;
        }
        if (unfoldable(lhs.rhs())) {
          told(lhs.rhs(), Concept::disjunction(Concept::negation(lhs.lhs()), rhs));
          return;
        }
        break;
      default: break;
    }
    universal_.push_back(
        table_.intern(negation_normal_form(Concept::disjunction(Concept::negation(lhs), rhs))));
  }

  Graph initial_graph() {
    for (const auto& inc : kb_.inclusions()) absorb(inc.sub, inc.sup);
    std::sort(universal_.begin(), universal_.end());
    universal_.erase(std::unique(universal_.begin(), universal_.end()), universal_.end());

    std::vector<std::pair<int, int>> constraints;  // object, concept
    std::vector<std::array<int, 3>> role_edges;
    std::vector<std::pair<int, int>> equalities;
    std::vector<std::tuple<int, int, std::size_t>> data_edges;  // subject, role, literal index
    for (const auto& o : kb_.signature().objects) table_.object_id(o);
    const auto& lits = kb_.literals();
    for (const auto& ax : kb_.abox()) {
      if (auto* a = std::get_if<ConceptAssertion>(&ax)) {
        constraints.emplace_back(table_.object_id(a->object), table_.intern(negation_normal_form(a->expr)));
      } else if (auto* r = std::get_if<RoleAssertion>(&ax)) {
        int s = table_.object_id(r->subject), o = table_.object_id(r->object);
        if (r->role.inverse) std::swap(s, o);
        role_edges.push_back({s, table_.role_id(r->role.name), o});
      } else if (auto* d = std::get_if<DataAssertion>(&ax)) {
        std::size_t li = std::find(lits.begin(), lits.end(), d->value) - lits.begin();
        data_edges.emplace_back(table_.object_id(d->subject), table_.role_id(d->role), li);
      } else if (auto* e = std::get_if<ObjectEquivalence>(&ax)) {
        equalities.emplace_back(table_.object_id(e->a), table_.object_id(e->b));
      }
    }
    for (const auto& [obj, c] : problem_.object_constraints)
      constraints.emplace_back(table_.object_id(obj), table_.intern(negation_normal_form(c)));
    std::vector<int> fresh;
    for (const auto& c : problem_.fresh_individual) fresh.push_back(table_.intern(negation_normal_form(c)));

    Graph g;
    const std::size_t nobj = table_.object_count();
    std::vector<int> nominal_ids(nobj);
    for (std::size_t o = 0; o < nobj; ++o)
      nominal_ids[o] = table_.intern(Concept::nominal(table_.object_name(static_cast<int>(o))));
    g.nominal.resize(nobj);
    for (std::size_t o = 0; o < nobj; ++o) {
      int id = new_node(g, -1, true, 0);
      g.nominal[o] = id;
      g.add(id, nominal_ids[o], 0);
    }
    for (const auto& [o, c] : constraints) g.add(g.nominal[o], c, 0);
    for (const auto& [s, r, o] : role_edges) g.add_edge(g.nominal[s], r, g.nominal[o], 0);
    for (const auto& [a, b] : equalities) g.add(g.nominal[a], nominal_ids[b], 0);
    std::vector<int> literal_nodes;
    for (const auto& lit : lits) {
      int id = new_node(g, -1, true, 0);
      g.add(id, table_.intern(Concept::datatype(datatype_of(lit))), 0);
      literal_nodes.push_back(id);
    }
    for (const auto& [s, r, li] : data_edges) g.add_edge(g.nominal[s], r, literal_nodes[li], 0);
    if (!fresh.empty()) {
      int id = new_node(g, -1, true, 0);
      for (int c : fresh) g.add(id, c, 0);
    }
    return g;
  }

  /// Universal constraints of the new node depend on whatever made it exist.
  int new_node(Graph& g, int parent, bool root, int dep) {
    if (stats_) ++stats_->nodes_created;
    if (++created_ > limits_.max_nodes)
      throw ResourceLimit("tableau node budget of " + std::to_string(limits_.max_nodes) + " nodes exceeded");
    auto n = std::make_shared<Node>();
    n->parent = parent;
    n->root = root;
    n->label = universal_;
    n->deps.assign(universal_.size(), dep);
    g.nodes.push_back(std::move(n));
    int id = static_cast<int>(g.nodes.size()) - 1;
    g.touch(id);
    return id;
  }

  void check_time() const {
    if (std::chrono::steady_clock::now() > deadline_)
      throw ResourceLimit("tableau time budget of " + std::to_string(limits_.max_time.count()) + " ms exceeded");
  }

  // -- merging -------------------------------------------------------------

  void kill(Graph& g, int x) {
    Node& n = g.mut(x);
    n.alive = false;
    n.label.clear();
    n.deps.clear();
    n.edges.clear();
  }

  /// Removes every tree descendant of x (children always have larger ids).
  void prune_children(Graph& g, int x) {
    std::vector<char> doomed(g.size(), 0);
    doomed[x] = 1;
    for (std::size_t c = static_cast<std::size_t>(x) + 1; c < g.size(); ++c) {
      const Node& n = g.at(static_cast<int>(c));
      if (!n.alive || n.root || !doomed[n.parent]) continue;
      doomed[c] = 1;
      int v = static_cast<int>(c);
      std::vector<Edge> edges = n.edges;
      for (const Edge& e : edges) {
        if (e.inverse)
          g.erase_edge(e.other, e.role, v);
        else
          g.erase_edge(v, e.role, e.other);
        g.touch(e.other);
      }
      kill(g, v);
    }
  }

  /// Moves `from` onto `into`: its label, and every edge that does not lead
  /// to one of its tree children. Tree children are pruned and regenerated.
  /// Everything moved also depends on `why`.
  void merge(Graph& g, int from, int into, int why) {
    std::vector<Edge> edges = g.at(from).edges;
    for (const Edge& e : edges) {
      if (e.inverse)
        g.erase_edge(e.other, e.role, from);
      else
        g.erase_edge(from, e.role, e.other);
    }
    prune_children(g, from);
    for (const Edge& e : edges) {
      if (e.other != from && !g.at(e.other).alive) continue;
      int other = e.other == from ? into : e.other;
      int d = deps_.join(e.dep, why);
      if (e.inverse)
        g.add_edge(other, e.role, into, d);
      else
        g.add_edge(into, e.role, other, d);
    }
    const Node& src = g.at(from);
    std::vector<int> label = src.label, deps = src.deps;
    for (std::size_t i = 0; i < label.size(); ++i) g.add(into, label[i], deps_.join(deps[i], why));
    kill(g, from);
    for (auto& n : g.nominal)
      if (n == from) n = into;
    g.touch(into);
  }

  // -- deterministic rules -------------------------------------------------

  /// Clash detection plus all non-branching, non-generating rules, run to a
  /// fixpoint over the dirty nodes. Throws Clash.
  void saturate(Graph& g) {
    std::size_t tick = 0;
    while (!g.dirty.empty()) {
      if ((++tick & 63) == 0) check_time();
      int x = g.dirty.back();
      g.dirty.pop_back();
      g.queued[x] = 0;
      if (!g.at(x).alive) continue;
      int string_at = -1, boolean_at = -1;
      std::vector<int> snapshot = g.at(x).label;
      for (int c : snapshot) {
        const Entry e = table_[c];
        const int dc = g.at(x).dep(c);
        switch (e.kind) {
          case K::Bottom: throw Clash{dc};
          case K::Not:
            if (g.at(x).has(e.a)) throw Clash{deps_.join(dc, g.at(x).dep(e.a))};
            break;
          case K::Datatype:
            (e.dt == Datatype::String ? string_at : boolean_at) = c;
            if (string_at >= 0 && boolean_at >= 0)
              throw Clash{deps_.join(g.at(x).dep(string_at), g.at(x).dep(boolean_at))};
            break;
          case K::And:
            g.add(x, e.a, dc);
            g.add(x, e.b, dc);
            break;
          case K::Or: {
            const Node& n = g.at(x);
            if (n.has(e.a) || n.has(e.b)) break;
            if (int na = table_.negation(e.a); n.has(na))
              g.add(x, e.b, deps_.join(dc, n.dep(na)));
            else if (int nb = table_.negation(e.b); n.has(nb))
              g.add(x, e.a, deps_.join(dc, n.dep(nb)));
            break;
          }
          case K::Forall: {
            std::vector<std::pair<int, int>> ys;
            g.for_each_neighbor(x, e.role, e.inverse, [&](int y, int d) { ys.emplace_back(y, deps_.join(dc, d)); });
            for (const auto& [y, d] : ys) g.add(y, e.a, d);
            break;
          }
          case K::Atomic:
          case K::Nominal:
            if (auto it = told_.find(c); it != told_.end())
              for (int d : it->second) g.add(x, d, dc);
            if (e.kind == K::Nominal) {
              int target = g.nominal[e.object];
              if (target != x) {
                merge(g, x, target, deps_.join(dc, g.at(target).dep(c)));
                goto next_node;
              }
            }
            break;
          default: break;
        }
      }
    next_node:;
    }
  }

  // -- blocking ------------------------------------------------------------

  static std::uint64_t mix(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
  }
  static std::uint64_t label_hash(const std::vector<int>& l) {
    std::uint64_t h = l.size();
    for (int c : l) h = mix(h * 31 + static_cast<std::uint64_t>(c));
    return h;
  }
  /// Edges between parent p and x as sorted (role, direction) pairs.
  static std::vector<std::pair<int, int>> link(const Graph& g, int p, int x) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : g.at(p).edges)
      if (e.other == x) out.emplace_back(e.role, e.inverse ? 1 : 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Pairwise anywhere blocking: x is directly blocked by an earlier node
  /// with the same label, the same parent label and the same edges from its
  /// parent. Descendants of blocked nodes are indirectly blocked.
  Blocking compute_blocking(const Graph& g) const {
    Blocking b;
    b.direct.assign(g.size(), 0);
    b.indirect.assign(g.size(), 0);
    std::unordered_map<std::uint64_t, int> first;
    for (std::size_t xi = 0; xi < g.size(); ++xi) {
      const int x = static_cast<int>(xi);
      const Node& n = g.at(x);
      if (!n.alive || n.root) continue;
      const int p = n.parent;
      if (b.blocked(p)) {
        b.indirect[xi] = 1;
        continue;
      }
      std::uint64_t h = mix(label_hash(n.label) ^ (label_hash(g.at(p).label) * 0x9e3779b97f4a7c15ULL));
      for (const Edge& e : g.at(p).edges)
        if (e.other == x) h += mix(static_cast<std::uint64_t>(e.role) * 2 + (e.inverse ? 1 : 0) + 1);
      auto [it, inserted] = first.emplace(h, x);
      if (inserted) continue;
      const int y = it->second;
      const int q = g.at(y).parent;
      if (n.label == g.at(y).label && g.at(p).label == g.at(q).label && link(g, p, x) == link(g, q, y))
        b.direct[xi] = 1;
    }
    return b;
  }

  // -- search --------------------------------------------------------------

  /// Nullopt when a complete clash-free graph is found; otherwise the branch
  /// points the failure depends on. A failed left branch whose clash does
  /// not involve its own choice is returned directly without trying the
  /// right branch.
  std::optional<int> expand(Graph g) {
    for (;;) {
      check_time();
      try {
        saturate(g);
      } catch (const Clash& c) {
        return c.dep;
      }
      Blocking blk = compute_blocking(g);

      int bx = -1, bc = -1;
      for (std::size_t xi = 0; xi < g.size() && bx < 0; ++xi) {
        const Node& n = g.at(static_cast<int>(xi));
        if (!n.alive || blk.indirect[xi]) continue;
        for (int c : n.label) {
          const Entry& e = table_[c];
          if (e.kind == K::Or && !n.has(e.a) && !n.has(e.b)) {
            bx = static_cast<int>(xi);
            bc = c;
            break;
          }
        }
      }
      if (bx >= 0) {
        const Entry e = table_[bc];
        const int dc = g.at(bx).dep(bc);
        if (stats_) ++stats_->branches;
        const int level = next_branch_++;
        Graph left = g;
        left.add(bx, e.a, deps_.join(dc, deps_.intern({level})));
        auto failed = expand(std::move(left));
        if (!failed) return std::nullopt;
        std::vector<int> why = deps_[*failed];
        auto it = std::lower_bound(why.begin(), why.end(), level);
        if (it == why.end() || *it != level) return failed;
        why.erase(it);
        int right = deps_.join(dc, deps_.intern(std::move(why)));
        g.add(bx, e.b, right);
        g.add(bx, table_.negation(e.a), right);
        continue;
      }

      if (!generate(g, blk)) return std::nullopt;
    }
  }

  /// Exists rule on the first node that needs it. False when the graph is
  /// complete.
  bool generate(Graph& g, const Blocking& blk) {
    for (std::size_t xi = 0; xi < g.size(); ++xi) {
      int x = static_cast<int>(xi);
      if (!g.at(x).alive || blk.blocked(x)) continue;
      bool any = false;
      std::vector<int> label = g.at(x).label;
      for (int c : label) {
        const Entry& e = table_[c];
        if (e.kind != K::Exists) continue;
        bool witnessed = false;
        g.for_each_neighbor(x, e.role, e.inverse, [&](int y, int) {
          if (g.at(y).has(e.a)) witnessed = true;
        });
        if (witnessed) continue;
        const int dc = g.at(x).dep(c);
        int y = new_node(g, x, false, dc);
        g.add(y, e.a, dc);
        if (e.inverse)
          g.add_edge(y, e.role, x, dc);
        else
          g.add_edge(x, e.role, y, dc);
        any = true;
      }
      if (any) return true;
    }
    return false;
  }

  const KnowledgeBase& kb_;
  const TableauProblem& problem_;
  TableauLimits limits_;
  TableauStats* stats_;
  std::chrono::steady_clock::time_point deadline_;
  std::size_t created_ = 0;
  int next_branch_ = 0;

  ConceptTable table_;
  DepTable deps_;
  std::vector<int> universal_;
  std::unordered_map<int, std::vector<int>> told_;
};

}  // namespace

bool tableau_satisfiable(const KnowledgeBase& kb, const TableauProblem& problem, const TableauLimits& limits,
                         TableauStats* stats) {
  Engine engine(kb, problem, limits, stats);
  return engine.run();
}

}  // namespace lambdadl::detail
