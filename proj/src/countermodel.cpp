#include "lambdadl/countermodel.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sat.hpp"

namespace lambdadl {

namespace {

using K = Concept::Kind;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

struct Names {
  std::set<std::string> concepts, roles, objects;
  std::vector<Primitive> literals;

  void add_literal(const Primitive& p) {
    if (std::find(literals.begin(), literals.end(), p) == literals.end()) literals.push_back(p);
  }

  void visit(const Concept& c) {
    switch (c.kind()) {
      case K::Atomic: concepts.insert(c.name()); break;
      case K::Nominal: objects.insert(c.name()); break;
      case K::Not: visit(c.operand()); break;
      case K::And:
      case K::Or:
        visit(c.lhs());
        visit(c.rhs());
        break;
      case K::Exists:
      case K::Forall:
        roles.insert(c.role().name);
        visit(c.operand());
        break;
      default: break;
    }
  }

  void visit(const Axiom& ax) {
    std::visit(overloaded{
                   [&](const Subsumption& s) {
                     visit(s.sub);
                     visit(s.sup);
                   },
                   [&](const ConceptEquality& e) {
                     visit(e.lhs);
                     visit(e.rhs);
                   },
                   [&](const ConceptAssertion& a) {
                     objects.insert(a.object);
                     visit(a.expr);
                   },
                   [&](const RoleAssertion& r) {
                     objects.insert(r.subject);
                     objects.insert(r.object);
                     roles.insert(r.role.name);
                   },
                   [&](const DataAssertion& d) {
                     objects.insert(d.subject);
                     roles.insert(d.role);
                     add_literal(d.value);
                   },
                   [&](const ObjectEquivalence& e) {
                     objects.insert(e.a);
                     objects.insert(e.b);
                   },
               },
               ax);
  }
};

using detail::Lit;

/// Ground propositional encoding of "kb holds and goal fails" over a fixed
/// universe size.
class Encoder {
 public:
  Encoder(const Names& names, int n) : names_(names), n_(n) {
    truth_ = s_.new_var();
    s_.add_clause({truth_});
    int index = 0;
    auto constant = [&](std::vector<int>& vars) {
      vars.resize(n_);
      std::vector<Lit> some;
      for (int e = 0; e < n_; ++e) {
        vars[e] = s_.new_var();
        // Elements are interchangeable: constant i may use only 0..i.
        if (e > index)
          s_.add_clause({-vars[e]});
        else
          some.push_back(vars[e]);
      }
      s_.add_clause(some);
      for (int e = 0; e < n_; ++e)
        for (int f = e + 1; f < n_; ++f) s_.add_clause({-vars[e], -vars[f]});
      ++index;
    };
    for (const auto& o : names_.objects) constant(obj_[o]);
    for (const auto& l : names_.literals) constant(lit_[l]);
    for (const auto& a : names_.concepts) atom_[a] = fresh_row();
    for (const auto& r : names_.roles) {
      auto& m = role_[r];
      m.resize(n_);
      for (int e = 0; e < n_; ++e) m[e] = fresh_row();
    }
    strings_ = fresh_row();
    booleans_ = fresh_row();
    for (int e = 0; e < n_; ++e) s_.add_clause({-strings_[e], -booleans_[e]});
    for (const auto& l : names_.literals) {
      const auto& row = datatype_of(l) == Datatype::String ? strings_ : booleans_;
      for (int e = 0; e < n_; ++e) s_.add_clause({-lit_[l][e], row[e]});
    }
  }

  void require(const Axiom& ax) {
    std::visit(overloaded{
                   [&](const Subsumption& s) { everywhere(implication(s.sub, s.sup)); },
                   [&](const ConceptEquality& e) {
                     everywhere(implication(e.lhs, e.rhs));
                     everywhere(implication(e.rhs, e.lhs));
                   },
                   [&](const ConceptAssertion& a) {
                     Concept c = negation_normal_form(a.expr);
                     for (int e = 0; e < n_; ++e) s_.add_clause({-obj_[a.object][e], holds(c, e)});
                   },
                   [&](const RoleAssertion& r) { pair_clauses(obj_[r.subject], obj_[r.object], r.role, true); },
                   [&](const DataAssertion& d) { pair_clauses(obj_[d.subject], lit_[d.value], RoleExpr(d.role), true); },
                   [&](const ObjectEquivalence& q) {
                     for (int e = 0; e < n_; ++e) {
                       s_.add_clause({-obj_[q.a][e], obj_[q.b][e]});
                       s_.add_clause({-obj_[q.b][e], obj_[q.a][e]});
                     }
                   },
               },
               ax);
  }

  void violate(const Axiom& ax) {
    std::visit(overloaded{
                   [&](const Subsumption& s) {
                     somewhere(negation_normal_form(Concept::conjunction(s.sub, Concept::negation(s.sup))));
                   },
                   [&](const ConceptEquality& e) {
                     somewhere(negation_normal_form(
                         Concept::disjunction(Concept::conjunction(e.lhs, Concept::negation(e.rhs)),
                                              Concept::conjunction(e.rhs, Concept::negation(e.lhs)))));
                   },
                   [&](const ConceptAssertion& a) {
                     Concept c = negated_nnf(a.expr);
                     for (int e = 0; e < n_; ++e) s_.add_clause({-obj_[a.object][e], holds(c, e)});
                   },
                   [&](const RoleAssertion& r) { pair_clauses(obj_[r.subject], obj_[r.object], r.role, false); },
                   [&](const DataAssertion& d) {
                     pair_clauses(obj_[d.subject], lit_[d.value], RoleExpr(d.role), false);
                   },
                   [&](const ObjectEquivalence& q) {
                     for (int e = 0; e < n_; ++e) s_.add_clause({-obj_[q.a][e], -obj_[q.b][e]});
                   },
               },
               ax);
  }

  std::optional<FiniteInterpretation> solve() {
    if (!s_.solve()) return std::nullopt;
    FiniteInterpretation I;
    I.universe = n_;
    auto one_hot = [&](const std::vector<int>& vars) {
      for (int e = 0; e < n_; ++e)
        if (s_.value(vars[e])) return e;
      throw std::logic_error("countermodel decoding: constant without an element");
    };
    for (const auto& [o, vars] : obj_) I.objects[o] = one_hot(vars);
    for (const auto& [l, vars] : lit_) I.literals[l] = one_hot(vars);
    for (const auto& [a, row] : atom_) {
      auto& ext = I.concepts[a];
      for (int e = 0; e < n_; ++e)
        if (s_.value(row[e])) ext.insert(e);
    }
    for (const auto& [r, m] : role_) {
      auto& ext = I.roles[r];
      for (int e = 0; e < n_; ++e)
        for (int f = 0; f < n_; ++f)
          if (s_.value(m[e][f])) ext.emplace(e, f);
    }
    for (int e = 0; e < n_; ++e) {
      if (s_.value(strings_[e])) I.strings.insert(e);
      if (s_.value(booleans_[e])) I.booleans.insert(e);
    }
    return I;
  }

 private:
  std::vector<int> fresh_row() {
    std::vector<int> row(n_);
    for (auto& v : row) v = s_.new_var();
    return row;
  }

  static Concept implication(const Concept& c, const Concept& d) {
    return negation_normal_form(Concept::disjunction(Concept::negation(c), d));
  }

  void everywhere(const Concept& nnf) {
    for (int e = 0; e < n_; ++e) s_.add_clause({holds(nnf, e)});
  }

  void somewhere(const Concept& nnf) {
    std::vector<Lit> clause;
    for (int e = 0; e < n_; ++e) clause.push_back(holds(nnf, e));
    s_.add_clause(clause);
  }

  Lit edge(const RoleExpr& r, int e, int f) {
    const auto& m = role_.at(r.name);
    return r.inverse ? m[f][e] : m[e][f];
  }

  void pair_clauses(const std::vector<int>& a, const std::vector<int>& b, const RoleExpr& r, bool positive) {
    for (int e = 0; e < n_; ++e)
      for (int f = 0; f < n_; ++f) s_.add_clause({-a[e], -b[f], positive ? edge(r, e, f) : -edge(r, e, f)});
  }

  /// A literal that implies membership of element e in the NNF concept c.
  Lit holds(const Concept& c, int e) {
    switch (c.kind()) {
      case K::Top: return truth_;
      case K::Bottom: return -truth_;
      case K::Atomic: return atom_.at(c.name())[e];
      case K::Nominal: return obj_.at(c.name())[e];
      case K::Datatype: return (c.datatype_tag() == Datatype::String ? strings_ : booleans_)[e];
      case K::Not: return -holds(c.operand(), e);
      default: break;
    }
    if (auto it = defined_.find(c); it != defined_.end()) return it->second[e];
    return define(c)[e];
  }

  std::vector<int> define(const Concept& c) {
    std::vector<int> row = fresh_row();
    defined_.emplace(c, row);
    for (int e = 0; e < n_; ++e) {
      Lit x = row[e];
      switch (c.kind()) {
        case K::And:
          s_.add_clause({-x, holds(c.lhs(), e)});
          s_.add_clause({-x, holds(c.rhs(), e)});
          break;
        case K::Or: s_.add_clause({-x, holds(c.lhs(), e), holds(c.rhs(), e)}); break;
        case K::Exists: {
          std::vector<Lit> some{-x};
          for (int f = 0; f < n_; ++f) {
            int y = s_.new_var();
            s_.add_clause({-y, edge(c.role(), e, f)});
            s_.add_clause({-y, holds(c.operand(), f)});
            some.push_back(y);
          }
          s_.add_clause(some);
          break;
        }
        case K::Forall:
          for (int f = 0; f < n_; ++f) s_.add_clause({-x, -edge(c.role(), e, f), holds(c.operand(), f)});
          break;
        default: throw std::logic_error("countermodel encoding: concept not in negation normal form");
      }
    }
    return row;
  }

  const Names& names_;
  int n_;
  detail::SatSolver s_;
  int truth_ = 0;
  std::map<std::string, std::vector<int>> obj_;
  std::map<Primitive, std::vector<int>> lit_;
  std::map<std::string, std::vector<int>> atom_;
  std::map<std::string, std::vector<std::vector<int>>> role_;
  std::vector<int> strings_, booleans_;
  std::unordered_map<Concept, std::vector<int>, ConceptHash> defined_;
};

std::set<int> everything(const FiniteInterpretation& I) {
  std::set<int> all;
  for (int e = 0; e < I.universe; ++e) all.insert(e);
  return all;
}

}  // namespace

std::set<int> concept_extension(const FiniteInterpretation& I, const Concept& c) {
  switch (c.kind()) {
    case K::Top: return everything(I);
    case K::Bottom: return {};
    case K::Atomic: {
      auto it = I.concepts.find(c.name());
      return it == I.concepts.end() ? std::set<int>{} : it->second;
    }
    case K::Nominal: {
      auto it = I.objects.find(c.name());
      return it == I.objects.end() ? std::set<int>{} : std::set<int>{it->second};
    }
    case K::Datatype: return c.datatype_tag() == Datatype::String ? I.strings : I.booleans;
    case K::Not: {
      std::set<int> inner = concept_extension(I, c.operand()), out;
      for (int e = 0; e < I.universe; ++e)
        if (!inner.contains(e)) out.insert(e);
      return out;
    }
    case K::And: {
      std::set<int> l = concept_extension(I, c.lhs()), r = concept_extension(I, c.rhs()), out;
      std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::inserter(out, out.end()));
      return out;
    }
    case K::Or: {
      std::set<int> out = concept_extension(I, c.lhs()), r = concept_extension(I, c.rhs());
      out.insert(r.begin(), r.end());
      return out;
    }
    case K::Exists:
    case K::Forall: {
      std::set<int> filler = concept_extension(I, c.operand()), out;
      auto it = I.roles.find(c.role().name);
      std::set<std::pair<int, int>> empty;
      const auto& pairs = it == I.roles.end() ? empty : it->second;
      for (int x = 0; x < I.universe; ++x) {
        bool any = false, all = true;
        for (int y = 0; y < I.universe; ++y) {
          bool related = c.role().inverse ? pairs.contains({y, x}) : pairs.contains({x, y});
          if (!related) continue;
          if (filler.contains(y))
            any = true;
          else
            all = false;
        }
        if (c.is(K::Exists) ? any : all) out.insert(x);
      }
      return out;
    }
  }
  return {};
}

bool satisfies(const FiniteInterpretation& I, const Axiom& ax) {
  auto related = [&](const std::string& role, int x, int y) {
    auto it = I.roles.find(role);
    return it != I.roles.end() && it->second.contains({x, y});
  };
  return std::visit(
      overloaded{
          [&](const Subsumption& s) {
            auto l = concept_extension(I, s.sub), r = concept_extension(I, s.sup);
            return std::includes(r.begin(), r.end(), l.begin(), l.end());
          },
          [&](const ConceptEquality& e) { return concept_extension(I, e.lhs) == concept_extension(I, e.rhs); },
          [&](const ConceptAssertion& a) {
            auto it = I.objects.find(a.object);
            return it != I.objects.end() && concept_extension(I, a.expr).contains(it->second);
          },
          [&](const RoleAssertion& r) {
            auto s = I.objects.find(r.subject), o = I.objects.find(r.object);
            if (s == I.objects.end() || o == I.objects.end()) return false;
            return r.role.inverse ? related(r.role.name, o->second, s->second)
                                  : related(r.role.name, s->second, o->second);
          },
          [&](const DataAssertion& d) {
            auto s = I.objects.find(d.subject);
            auto v = I.literals.find(d.value);
            return s != I.objects.end() && v != I.literals.end() && related(d.role, s->second, v->second);
          },
          [&](const ObjectEquivalence& q) {
            auto a = I.objects.find(q.a), b = I.objects.find(q.b);
            return a != I.objects.end() && b != I.objects.end() && a->second == b->second;
          },
      },
      ax);
}

bool is_model(const FiniteInterpretation& I, const KnowledgeBase& kb) {
  if (I.universe < 1) return false;
  for (const auto& o : kb.signature().objects) {
    auto it = I.objects.find(o);
    if (it == I.objects.end() || it->second < 0 || it->second >= I.universe) return false;
  }
  for (const auto& l : kb.literals()) {
    auto it = I.literals.find(l);
    if (it == I.literals.end()) return false;
    const auto& dt = datatype_of(l) == Datatype::String ? I.strings : I.booleans;
    if (!dt.contains(it->second)) return false;
  }
  for (int e : I.strings)
    if (I.booleans.contains(e)) return false;
  for (const auto& ax : kb.tbox())
    if (!satisfies(I, ax)) return false;
  for (const auto& ax : kb.abox())
    if (!satisfies(I, ax)) return false;
  return true;
}

std::optional<FiniteInterpretation> find_countermodel(const KnowledgeBase& kb, const Axiom& goal, int max_size) {
  Names names;
  for (const auto& ax : kb.tbox()) names.visit(ax);
  for (const auto& ax : kb.abox()) names.visit(ax);
  names.visit(goal);
  for (int n = 1; n <= max_size; ++n) {
    Encoder enc(names, n);
    for (const auto& ax : kb.tbox()) enc.require(ax);
    for (const auto& ax : kb.abox()) enc.require(ax);
    enc.violate(goal);
    if (auto I = enc.solve()) {
      if (!is_model(*I, kb)) throw std::logic_error("countermodel check failed: not a model of the knowledge base");
      if (satisfies(*I, goal)) throw std::logic_error("countermodel check failed: goal holds");
      return I;
    }
  }
  return std::nullopt;
}

std::string to_string(const FiniteInterpretation& I) {
  std::string out = "universe " + std::to_string(I.universe) + "\n";
  auto set_str = [](const std::set<int>& s) {
    std::string r = "{";
    for (int e : s) r += (r.size() > 1 ? ", " : "") + std::to_string(e);
    return r + "}";
  };
  for (const auto& [o, e] : I.objects) out += "  " + o + " -> " + std::to_string(e) + "\n";
  for (const auto& [l, e] : I.literals) out += "  " + primitive_to_string(l) + " -> " + std::to_string(e) + "\n";
  for (const auto& [a, s] : I.concepts) out += "  " + a + " = " + set_str(s) + "\n";
  for (const auto& [r, s] : I.roles) {
    out += "  " + r + " = {";
    bool first = true;
    for (const auto& [x, y] : s) {
      out += (first ? "" : ", ") + std::string("(") + std::to_string(x) + "," + std::to_string(y) + ")";
      first = false;
    }
    out += "}\n";
  }
  if (!I.strings.empty()) out += "  xsd:string = " + set_str(I.strings) + "\n";
  if (!I.booleans.empty()) out += "  xsd:boolean = " + set_str(I.booleans) + "\n";
  return out;
}

}  // namespace lambdadl
