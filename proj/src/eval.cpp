#include "lambdadl/eval.hpp"

#include <ostream>

namespace lambdadl {

namespace {

using K = Term::Kind;
using Out = EvalOutcome;

Out stepped(Term t, std::string rule) { return Out{Out::Kind::Stepped, std::move(t), std::nullopt, std::move(rule)}; }

[[noreturn]] void no_rule(const Term& t) {
  throw EvalError("no reduction rule applies to " + to_string(t, Notation::Ascii));
}

Value list_value(std::vector<Value> items, const Type& elem) {
  Value v = Value::nil(elem);
  for (auto it = items.rbegin(); it != items.rend(); ++it) v = Value::cons(*it, v);
  return v;
}

class Stepper {
 public:
  explicit Stepper(const KnowledgeSystem& ks) : ks_(ks) {}

  // Reduces the subterm `sub` and rebuilds the enclosing term with `wrap`.
  template <class Wrap>
  Out congruence(const Term& sub, const char* rule, Wrap wrap) {
    Out o = step(sub);
    if (o.is(Out::Kind::Stepped)) return stepped(wrap(*o.next), rule);
    return o;
  }

  Out step(const Term& t) {
    if (auto v = term_to_value(t)) return Out{Out::Kind::Done, std::nullopt, *v, ""};
    const SourceLocation loc = t.location();
    switch (t.kind()) {
      case K::Var: no_rule(t);
      case K::Let:
        if (!is_value(t.child(0)))
          return congruence(t.child(0), "E-LET", [&](Term s) { return Term::let(t.name(), s, t.child(1), loc); });
        return stepped(substitute(t.child(1), t.name(), t.child(0)), "E-LETV");
      case K::Fix: {
        const Term& f = t.child(0);
        if (!is_value(f)) return congruence(f, "E-FIX", [&](Term s) { return Term::fix(s, loc); });
        if (!f.is(K::Abs)) no_rule(t);
        return stepped(substitute(f.child(0), f.name(), t), "E-FIXV");
      }
      case K::App: {
        const Term& f = t.child(0);
        const Term& a = t.child(1);
        if (!is_value(f)) return congruence(f, "E-APP1", [&](Term s) { return Term::app(s, a, loc); });
        if (!is_value(a)) return congruence(a, "E-APP2", [&](Term s) { return Term::app(f, s, loc); });
        if (!f.is(K::Abs)) no_rule(t);
        return stepped(substitute(f.child(0), f.name(), a), "E-APPABS");
      }
      case K::If: {
        const Term& c = t.child(0);
        if (!is_value(c))
          return congruence(c, "E-IF", [&](Term s) { return Term::if_(s, t.child(1), t.child(2), loc); });
        if (!c.is(K::Prim) || !std::holds_alternative<bool>(c.primitive())) no_rule(t);
        return std::get<bool>(c.primitive()) ? stepped(t.child(1), "E-IF-TRUE") : stepped(t.child(2), "E-IF-FALSE");
      }
      case K::Cons: {
        // Only reached when some component is not a value.
        const Term& h = t.child(0);
        const Term& tl = t.child(1);
        if (!is_value(h)) return congruence(h, "E-CONS1", [&](Term s) { return Term::cons(s, tl, loc); });
        if (!is_value(tl)) return congruence(tl, "E-CONS2", [&](Term s) { return Term::cons(h, s, loc); });
        no_rule(t);
      }
      case K::Null:
      case K::Head:
      case K::Tail: {
        const Term& l = t.child(0);
        const char* name = t.is(K::Null) ? "E-NULL" : t.is(K::Head) ? "E-HEAD" : "E-TAIL";
        if (!is_value(l))
          return congruence(l, name, [&](Term s) {
            return t.is(K::Null) ? Term::null(s, loc) : t.is(K::Head) ? Term::head(s, loc) : Term::tail(s, loc);
          });
        if (l.is(K::Nil)) {
          if (t.is(K::Null)) return stepped(Term::prim(true, loc), "E-NULL-TRUE");
          return Out{t.is(K::Head) ? Out::Kind::StuckHeadNil : Out::Kind::StuckTailNil, std::nullopt, std::nullopt,
                     ""};
        }
        if (!l.is(K::Cons)) no_rule(t);
        if (t.is(K::Null)) return stepped(Term::prim(false, loc), "E-NULL-FALSE");
        if (t.is(K::Head)) return stepped(l.child(0), "E-HEADV");
        return stepped(l.child(1), "E-TAILV");
      }
      case K::Query:
        return stepped(value_to_term(materialize_query(ks_, t.query_concept(), Type::from_concept(t.query_concept()))),
                       "E-QUERY");
      case K::Proj: {
        const Term& s = t.child(0);
        if (!is_value(s)) return congruence(s, "E-PROJ", [&](Term x) { return Term::proj(x, t.role(), loc); });
        if (!s.is(K::Object)) no_rule(t);
        return stepped(value_to_term(materialize_projection(ks_, s.name(), t.role(), projection_element(s.name(), t.role()))),
                       "E-PROJV");
      }
      case K::Eq: {
        const Term& a = t.child(0);
        const Term& b = t.child(1);
        if (!is_value(a)) return congruence(a, "E-EQ1", [&](Term s) { return Term::eq(s, b, loc); });
        if (!is_value(b)) return congruence(b, "E-EQ2", [&](Term s) { return Term::eq(a, s, loc); });
        if (a.is(K::Object) && b.is(K::Object)) {
          bool same = ks_.are_equivalent_objects(a.name(), b.name());
          return stepped(Term::prim(same, loc), same ? "EQ-NOMINAL-TRUE" : "EQ-NOMINAL-FALSE");
        }
        if (a.is(K::Prim) && b.is(K::Prim)) {
          bool same = a.primitive() == b.primitive();
          return stepped(Term::prim(same, loc), same ? "EQ-PRIM-TRUE" : "EQ-PRIM-FALSE");
        }
        no_rule(t);
      }
      case K::Case: {
        const Term& s = t.child(0);
        if (!is_value(s))
          return congruence(s, "E-DISPATCH", [&](Term x) { return Term::case_(x, t.arms(), t.child(1), loc); });
        if (!s.is(K::Object)) no_rule(t);
        const auto& arms = t.arms();
        if (arms.empty()) return stepped(t.child(1), "E-DISPATCH-DEF");
        if (ks_.is_instance(s.name(), arms.front().concept_type))
          return stepped(substitute(arms.front().term(), arms.front().binder, s), "E-DISPATCH-SUCC");
        return stepped(Term::case_(s, std::vector<CaseArm>(arms.begin() + 1, arms.end()), t.child(1), loc),
                       "E-DISPATCH-FAIL");
      }
      default: no_rule(t);
    }
  }

  Type projection_element(const std::string& a, const RoleExpr& r) {
    if (ks_.kb().signature().is_data_role(r.name)) {
      auto range = ks_.data_range(r.name);
      if (!range) throw EvalError("data role '" + r.name + "' has no datatype range");
      return *range == Datatype::String ? Type::string() : Type::boolean();
    }
    return Type::from_concept(Concept::exists(r.inverted(), Concept::nominal(a)));
  }

 private:
  const KnowledgeSystem& ks_;
};

}  // namespace

EvalOutcome step(const KnowledgeSystem& ks, const Term& t) { return Stepper(ks).step(t); }

std::vector<std::string> matching_rules(const KnowledgeSystem& ks, const Term& t) {
  std::vector<std::string> out;
  auto add = [&](bool cond, const char* rule) {
    if (cond) out.emplace_back(rule);
  };
  auto val = [](const Term& x) { return is_value(x); };
  auto is_bool = [](const Term& x, bool b) {
    return x.is(K::Prim) && std::holds_alternative<bool>(x.primitive()) && std::get<bool>(x.primitive()) == b;
  };
  switch (t.kind()) {
    case K::Let:
      add(!val(t.child(0)), "E-LET");
      add(val(t.child(0)), "E-LETV");
      break;
    case K::Fix:
      add(!val(t.child(0)), "E-FIX");
      add(t.child(0).is(K::Abs), "E-FIXV");
      break;
    case K::App:
      add(!val(t.child(0)), "E-APP1");
      add(val(t.child(0)) && !val(t.child(1)), "E-APP2");
      add(t.child(0).is(K::Abs) && val(t.child(1)), "E-APPABS");
      break;
    case K::If:
      add(!val(t.child(0)), "E-IF");
      add(is_bool(t.child(0), true), "E-IF-TRUE");
      add(is_bool(t.child(0), false), "E-IF-FALSE");
      break;
    case K::Cons:
      add(!val(t.child(0)), "E-CONS1");
      add(val(t.child(0)) && !val(t.child(1)), "E-CONS2");
      break;
    case K::Null:
      add(!val(t.child(0)), "E-NULL");
      add(t.child(0).is(K::Nil), "E-NULL-TRUE");
      add(t.child(0).is(K::Cons) && val(t.child(0)), "E-NULL-FALSE");
      break;
    case K::Head:
      add(!val(t.child(0)), "E-HEAD");
      add(t.child(0).is(K::Cons) && val(t.child(0)), "E-HEADV");
      break;
    case K::Tail:
      add(!val(t.child(0)), "E-TAIL");
      add(t.child(0).is(K::Cons) && val(t.child(0)), "E-TAILV");
      break;
    case K::Query: add(true, "E-QUERY"); break;
    case K::Proj:
      add(!val(t.child(0)), "E-PROJ");
      add(t.child(0).is(K::Object), "E-PROJV");
      break;
    case K::Eq: {
      const Term& a = t.child(0);
      const Term& b = t.child(1);
      add(!val(a), "E-EQ1");
      add(val(a) && !val(b), "E-EQ2");
      if (a.is(K::Object) && b.is(K::Object)) {
        bool same = ks.are_equivalent_objects(a.name(), b.name());
        add(same, "EQ-NOMINAL-TRUE");
        add(!same, "EQ-NOMINAL-FALSE");
      }
      add(a.is(K::Prim) && b.is(K::Prim) && a.primitive() == b.primitive(), "EQ-PRIM-TRUE");
      add(a.is(K::Prim) && b.is(K::Prim) && !(a.primitive() == b.primitive()), "EQ-PRIM-FALSE");
      break;
    }
    case K::Case: {
      const Term& s = t.child(0);
      add(!val(s), "E-DISPATCH");
      if (s.is(K::Object)) {
        add(t.arms().empty(), "E-DISPATCH-DEF");
        if (!t.arms().empty()) {
          bool hit = ks.is_instance(s.name(), t.arms().front().concept_type);
          add(hit, "E-DISPATCH-SUCC");
          add(!hit, "E-DISPATCH-FAIL");
        }
      }
      break;
    }
    default: break;
  }
  return out;
}

Value materialize_query(const KnowledgeSystem& ks, const Concept& c, const Type& elem) {
  std::vector<Value> items;
  for (const auto& a : ks.query_instances(c)) items.push_back(Value::object(a));
  return list_value(std::move(items), elem);
}

Value materialize_projection(const KnowledgeSystem& ks, const std::string& a, const RoleExpr& r, const Type& elem) {
  std::vector<Value> items;
  if (ks.kb().signature().is_data_role(r.name)) {
    for (const auto& p : ks.query_data_successors(a, r.name)) items.push_back(Value::prim(p));
  } else {
    for (const auto& b : ks.query_role_successors(a, r)) items.push_back(Value::object(b));
  }
  return list_value(std::move(items), elem);
}

EvalResult evaluate(const KnowledgeSystem& ks, const Term& t, const EvalConfig& cfg, std::ostream* trace_out) {
  Stepper stepper(ks);
  Term cur = t;
  std::size_t steps = 0;
  auto trace = [&] {
    if (cfg.trace && trace_out) *trace_out << steps << ": " << to_string(cur, cfg.notation) << '\n';
  };
  trace();
  for (;;) {
    Out o = stepper.step(cur);
    switch (o.kind) {
      case Out::Kind::Done: return EvalResult{EvalResult::Status::Value, o.value, cur, steps};
      case Out::Kind::StuckHeadNil: return EvalResult{EvalResult::Status::StuckHeadNil, std::nullopt, cur, steps};
      case Out::Kind::StuckTailNil: return EvalResult{EvalResult::Status::StuckTailNil, std::nullopt, cur, steps};
      case Out::Kind::Stepped: break;
    }
    if (steps >= cfg.step_limit) return EvalResult{EvalResult::Status::StepLimitExceeded, std::nullopt, cur, steps};
    cur = *o.next;
    ++steps;
    trace();
  }
}

}  // namespace lambdadl
