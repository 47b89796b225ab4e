#include "lambdadl/typecheck.hpp"

#include <algorithm>

namespace lambdadl {

TypingContext TypingContext::extended(std::string name, Type t) const {
  TypingContext c = *this;
  c.bind(std::move(name), std::move(t));
  return c;
}

std::optional<Type> TypingContext::lookup(const std::string& name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

std::vector<std::string> TypingContext::names() const {
  std::vector<std::string> out;
  for (const auto& [n, t] : bindings_)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return out;
}

const char* type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::Mismatch: return "Mismatch";
    case TypeErrorKind::UnsatisfiableQuery: return "UnsatisfiableQuery";
    case TypeErrorKind::EmptyIntersection: return "EmptyIntersection";
    case TypeErrorKind::SubsumedCase: return "SubsumedCase";
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::UnknownObject: return "UnknownObject";
    case TypeErrorKind::UnknownName: return "UnknownName";
    case TypeErrorKind::NonConceptProjection: return "NonConceptProjection";
    case TypeErrorKind::NonListElim: return "NonListElim";
    case TypeErrorKind::NotAFunction: return "NotAFunction";
    case TypeErrorKind::UnsupportedEquality: return "UnsupportedEquality";
  }
  return "?";
}

TypeError::TypeError(TypeErrorKind kind, std::string rule, SourceLocation loc, std::string message)
    : std::runtime_error(loc.to_string() + ": " + type_error_kind_name(kind) + " [" + rule + "] " + message),
      kind_(kind),
      rule_(std::move(rule)),
      loc_(loc),
      message_(std::move(message)) {}

// ---------------------------------------------------------------------------
// lub / glb / subtyping
// ---------------------------------------------------------------------------

namespace {

std::string show(const Type& t) { return to_string(t, Notation::Unicode); }

Type bound(const Type& s, const Type& t, bool upper) {
  const char* rule = upper ? "lub" : "glb";
  auto mismatch = [&]() -> TypeError {
    return TypeError(TypeErrorKind::Mismatch, upper ? "LUB" : "GLB", {},
                     std::string(rule) + "(" + show(s) + ", " + show(t) + ") is undefined");
  };
  if (s.kind() != t.kind()) throw mismatch();
  switch (s.kind()) {
    case Type::Kind::Prim:
      if (s.prim_tag() != t.prim_tag()) throw mismatch();
      return s;
    case Type::Kind::Concept:
      if (s.as_concept() == t.as_concept()) return s;
      return Type::from_concept(upper ? Concept::disjunction(s.as_concept(), t.as_concept())
                                      : Concept::conjunction(s.as_concept(), t.as_concept()));
    case Type::Kind::List: return Type::list(bound(s.element(), t.element(), upper));
    case Type::Kind::Func:
      return Type::func(bound(s.domain(), t.domain(), !upper), bound(s.codomain(), t.codomain(), upper));
  }
  throw mismatch();
}

}  // namespace

Type lub(const Type& s, const Type& t) { return bound(s, t, true); }
Type glb(const Type& s, const Type& t) { return bound(s, t, false); }

std::optional<std::string> subtype_failure(const KnowledgeSystem& ks, const Type& s, const Type& t) {
  if (s == t) return std::nullopt;
  if (s.kind() != t.kind())
    return "no subtyping rule relates " + show(s) + " and " + show(t);
  switch (s.kind()) {
    case Type::Kind::Prim: return "primitive types " + show(s) + " and " + show(t) + " differ";
    case Type::Kind::Concept:
      if (ks.is_subsumed(s.as_concept(), t.as_concept())) return std::nullopt;
      return "S-CONCEPT: K does not entail " + to_string(s.as_concept(), Notation::Unicode) + " ⊑ " +
             to_string(t.as_concept(), Notation::Unicode);
    case Type::Kind::List:
      if (auto why = subtype_failure(ks, s.element(), t.element())) return "S-LIST: " + *why;
      return std::nullopt;
    case Type::Kind::Func:
      if (auto why = subtype_failure(ks, t.domain(), s.domain())) return "S-FUNC (domain): " + *why;
      if (auto why = subtype_failure(ks, s.codomain(), t.codomain())) return "S-FUNC (codomain): " + *why;
      return std::nullopt;
  }
  return "unreachable";
}

bool is_subtype(const KnowledgeSystem& ks, const Type& s, const Type& t) { return !subtype_failure(ks, s, t); }

// ---------------------------------------------------------------------------
// Typing
// ---------------------------------------------------------------------------

namespace {

class Checker {
 public:
  Checker(const KnowledgeSystem& ks, TypingMode mode) : ks_(ks), mode_(mode) {}

  Type check(const TypingContext& ctx, const Term& t) {
    using K = Term::Kind;
    const SourceLocation loc = t.location();
    switch (t.kind()) {
      case K::Var: {
        if (auto ty = ctx.lookup(t.name())) return *ty;
        throw TypeError(TypeErrorKind::UnboundVariable, "T-VAR", loc, "unbound variable '" + t.name() + "'");
      }
      case K::Object:
        if (!ks_.kb().signature().objects.contains(t.name()))
          throw TypeError(TypeErrorKind::UnknownObject, "T-OBJECT", loc,
                          "'" + t.name() + "' is neither a bound variable nor an object of the knowledge base");
        return Type::from_concept(Concept::nominal(t.name()));
      case K::Prim:
        return std::holds_alternative<bool>(t.primitive()) ? Type::boolean() : Type::string();
      case K::Nil: validate(t.type(), "T-NIL", loc); return Type::list(t.type());
      case K::Abs: {
        validate(t.type(), "T-ABS", loc);
        Type body = check(ctx.extended(t.name(), t.type()), t.child(0));
        return Type::func(t.type(), body);
      }
      case K::Let: {
        Type bound = check(ctx, t.child(0));
        return check(ctx.extended(t.name(), bound), t.child(1));
      }
      case K::Fix: {
        Type f = check(ctx, t.child(0));
        if (!f.is(Type::Kind::Func))
          throw TypeError(TypeErrorKind::NotAFunction, "T-FIX", loc, "fix expects a function, got " + show(f));
        if (auto why = subtype_failure(ks_, f.codomain(), f.domain()))
          throw TypeError(TypeErrorKind::Mismatch, "T-FIX", loc,
                          "fix needs T -> T; codomain " + show(f.codomain()) + " is not a subtype of domain " +
                              show(f.domain()) + " (" + *why + ")");
        return f.codomain();
      }
      case K::App: {
        Type f = check(ctx, t.child(0));
        if (!f.is(Type::Kind::Func))
          throw TypeError(TypeErrorKind::NotAFunction, "T-APP", loc, "cannot apply a term of type " + show(f));
        Type arg = check(ctx, t.child(1));
        if (auto why = subtype_failure(ks_, arg, f.domain()))
          throw TypeError(TypeErrorKind::Mismatch, "T-APP", t.child(1).location(),
                          "argument of type " + show(arg) + " does not match parameter type " + show(f.domain()) +
                              "; " + *why);
        return f.codomain();
      }
      case K::If: {
        Type c = check(ctx, t.child(0));
        if (!(c == Type::boolean()))
          throw TypeError(TypeErrorKind::Mismatch, "T-IF", t.child(0).location(),
                          "condition has type " + show(c) + ", expected bool");
        return join(check(ctx, t.child(1)), check(ctx, t.child(2)), "T-IF", loc);
      }
      case K::Cons: {
        Type h = check(ctx, t.child(0));
        Type tl = check(ctx, t.child(1));
        if (!tl.is(Type::Kind::List))
          throw TypeError(TypeErrorKind::NonListElim, "T-CONS", t.child(1).location(),
                          "cons expects a list as second argument, got " + show(tl));
        return Type::list(join(h, tl.element(), "T-CONS", loc));
      }
      case K::Null: list_of(ctx, t, "T-NULL"); return Type::boolean();
      case K::Head: return list_of(ctx, t, "T-HEAD").element();
      case K::Tail: return list_of(ctx, t, "T-TAIL");
      case K::Query: {
        if (!ks_.is_satisfiable(t.query_concept()))
          throw TypeError(TypeErrorKind::UnsatisfiableQuery, "T-QUERY", loc,
                          "query concept " + to_string(t.query_concept(), Notation::Unicode) + " is unsatisfiable");
        validate(Type::from_concept(t.query_concept()), "T-QUERY", loc);
        return Type::list(Type::from_concept(t.query_concept()));
      }
      case K::Proj: return projection(ctx, t);
      case K::Eq: return equality(ctx, t);
      case K::Case: return dispatch(ctx, t);
    }
    throw TypeError(TypeErrorKind::Mismatch, "?", loc, "unknown term");
  }

 private:
  void validate(const Type& ty, const char* rule, SourceLocation loc) {
    switch (ty.kind()) {
      case Type::Kind::Concept:
        try {
          ks_.kb().validate_concept(ty.as_concept());
        } catch (const SemanticError& e) {
          throw TypeError(TypeErrorKind::UnknownName, rule, loc, e.what());
        }
        return;
      case Type::Kind::Prim: return;
      case Type::Kind::List: validate(ty.element(), rule, loc); return;
      case Type::Kind::Func:
        validate(ty.domain(), rule, loc);
        validate(ty.codomain(), rule, loc);
        return;
    }
  }

  Type join(const Type& a, const Type& b, const char* rule, SourceLocation loc) {
    try {
      return lub(a, b);
    } catch (const TypeError& e) {
      throw TypeError(TypeErrorKind::Mismatch, rule, loc, e.message());
    }
  }

  Type list_of(const TypingContext& ctx, const Term& t, const char* rule) {
    Type l = check(ctx, t.child(0));
    if (!l.is(Type::Kind::List))
      throw TypeError(TypeErrorKind::NonListElim, rule, t.child(0).location(), "expected a list, got " + show(l));
    return l;
  }

  Type projection(const TypingContext& ctx, const Term& t) {
    const SourceLocation loc = t.location();
    Type s = check(ctx, t.child(0));
    if (!s.is(Type::Kind::Concept))
      throw TypeError(TypeErrorKind::NonConceptProjection, "T-PROJ", loc,
                      "projection needs an object of concept type, got " + show(s));
    const RoleExpr& r = t.role();
    const auto& sig = ks_.kb().signature();
    if (sig.is_data_role(r.name)) {
      if (r.inverse)
        throw TypeError(TypeErrorKind::UnknownName, "T-PROJ", loc, "data role '" + r.name + "' cannot be inverted");
      auto range = ks_.data_range(r.name);
      if (!range)
        throw TypeError(TypeErrorKind::UnknownName, "T-PROJ", loc,
                        "data role '" + r.name + "' has no entailed datatype range");
      return Type::list(*range == Datatype::String ? Type::string() : Type::boolean());
    }
    if (!sig.is_object_role(r.name))
      throw TypeError(TypeErrorKind::UnknownName, "T-PROJ", loc, "unknown role '" + r.name + "'");
    return Type::list(Type::from_concept(Concept::exists(r.inverted(), s.as_concept())));
  }

  Type equality(const TypingContext& ctx, const Term& t) {
    const SourceLocation loc = t.location();
    Type a = check(ctx, t.child(0));
    Type b = check(ctx, t.child(1));
    if (a.is(Type::Kind::Concept) && b.is(Type::Kind::Concept)) {
      if (mode_ == TypingMode::Source &&
          !ks_.is_satisfiable(Concept::conjunction(a.as_concept(), b.as_concept())))
        throw TypeError(TypeErrorKind::EmptyIntersection, "T-EQN", loc,
                        show(a) + " ⊓ " + show(b) + " is unsatisfiable, so the objects can never be equal");
      return Type::boolean();
    }
    if (a.is(Type::Kind::Prim) && b.is(Type::Kind::Prim)) {
      if (a.prim_tag() != b.prim_tag())
        throw TypeError(TypeErrorKind::Mismatch, "T-EQP", loc,
                        "cannot compare " + show(a) + " with " + show(b));
      return Type::boolean();
    }
    if ((a.is(Type::Kind::Concept) && b.is(Type::Kind::Prim)) || (a.is(Type::Kind::Prim) && b.is(Type::Kind::Concept)))
      throw TypeError(TypeErrorKind::Mismatch, "T-EQN", loc, "cannot compare " + show(a) + " with " + show(b));
    throw TypeError(TypeErrorKind::UnsupportedEquality, "T-EQN", loc,
                    "equality is defined on objects and primitive values only, got " + show(a) + " and " + show(b));
  }

  Type dispatch(const TypingContext& ctx, const Term& t) {
    const SourceLocation loc = t.location();
    Type d = check(ctx, t.child(0));
    if (!d.is(Type::Kind::Concept))
      throw TypeError(TypeErrorKind::Mismatch, "T-DISPATCH", t.child(0).location(),
                      "case needs a scrutinee of concept type, got " + show(d));
    const auto& arms = t.arms();
    std::vector<Type> results;
    for (std::size_t j = 0; j < arms.size(); ++j) {
      const Concept& cj = arms[j].concept_type;
      validate(Type::from_concept(cj), "T-DISPATCH", loc);
      for (std::size_t i = 0; i < j; ++i) {
        if (ks_.is_subsumed(cj, arms[i].concept_type))
          throw TypeError(TypeErrorKind::SubsumedCase, "T-DISPATCH", arms[j].term().location(),
                          "arm " + std::to_string(j + 1) + " (" + to_string(cj, Notation::Unicode) +
                              ") is subsumed by earlier arm " + std::to_string(i + 1) + " (" +
                              to_string(arms[i].concept_type, Notation::Unicode) + ") and can never be taken");
      }
      if (mode_ == TypingMode::Source && !ks_.is_satisfiable(Concept::conjunction(cj, d.as_concept())))
        throw TypeError(TypeErrorKind::EmptyIntersection, "T-DISPATCH", arms[j].term().location(),
                        "arm " + std::to_string(j + 1) + ": " + to_string(cj, Notation::Unicode) + " ⊓ " + show(d) +
                            " is unsatisfiable, so the arm can never match");
      results.push_back(check(ctx.extended(arms[j].binder, Type::from_concept(cj)), arms[j].term()));
    }
    Type w = check(ctx, t.child(1));
    for (auto it = results.rbegin(); it != results.rend(); ++it) w = join(*it, w, "T-DISPATCH", loc);
    return w;
  }

  const KnowledgeSystem& ks_;
  TypingMode mode_;
};

}  // namespace

Type typecheck(const KnowledgeSystem& ks, const TypingContext& ctx, const Term& t, TypingMode mode) {
  return Checker(ks, mode).check(ctx, t);
}

}  // namespace lambdadl
