#include <gtest/gtest.h>

#include "../support/generators.hpp"
#include "lambdadl/kb.hpp"

using namespace lambdadl;

namespace {

const std::string kRoot = LAMBDADL_SOURCE_DIR;

Concept A(const char* n) { return Concept::atomic(n); }

}  // namespace

TEST(ParseKb, ExistsSubsumption) {
  KnowledgeBase kb = parse_kb("exists recorded.Song sub MusicArtist");
  ASSERT_EQ(kb.tbox().size(), 1u);
  EXPECT_TRUE(kb.abox().empty());
  EXPECT_EQ(kb.tbox()[0], Axiom(Subsumption{Concept::exists(RoleExpr("recorded"), A("Song")), A("MusicArtist")}));
  EXPECT_EQ(kb.signature().roles, std::set<std::string>{"recorded"});
  EXPECT_EQ(kb.signature().concepts, (std::set<std::string>{"MusicArtist", "Song"}));
}

TEST(ParseKb, RangeDeclaresDataRole) {
  KnowledgeBase kb = parse_kb("Range(artistName, xsd:string)");
  ASSERT_EQ(kb.tbox().size(), 1u);
  EXPECT_EQ(kb.tbox()[0], Axiom(Subsumption{Concept::top(), Concept::forall(RoleExpr("artistName"),
                                                                             Concept::datatype(Datatype::String))}));
  EXPECT_TRUE(kb.signature().is_data_role("artistName"));
  EXPECT_FALSE(kb.signature().is_object_role("artistName"));
}

TEST(ParseKb, DomainAbbreviation) {
  KnowledgeBase kb = parse_kb("Domain(recorded, MusicArtist)");
  EXPECT_EQ(kb.tbox()[0],
            Axiom(Subsumption{Concept::exists(RoleExpr("recorded"), Concept::top()), A("MusicArtist")}));
}

TEST(ParseKb, EmptyInput) {
  KnowledgeBase kb = parse_kb("");
  EXPECT_TRUE(kb.empty());
  EXPECT_EQ(kb.signature(), Signature{});
  EXPECT_TRUE(parse_kb("// only a comment\n\n").empty());
}

TEST(ParseKb, AssertionsKeepSourceOrder) {
  KnowledgeBase kb = parse_kb("b : B\n(a, b) : r\na == b\n(a, \"x\\\"y\") : p\nc : C\n");
  ASSERT_EQ(kb.abox().size(), 5u);
  EXPECT_EQ(kb.abox()[0], Axiom(ConceptAssertion{"b", A("B")}));
  EXPECT_EQ(kb.abox()[1], Axiom(RoleAssertion{"a", "b", RoleExpr("r")}));
  EXPECT_EQ(kb.abox()[2], Axiom(ObjectEquivalence{"a", "b"}));
  EXPECT_EQ(kb.abox()[3], Axiom(DataAssertion{"a", "p", Primitive(std::string("x\"y"))}));
  EXPECT_EQ(kb.abox()[4], Axiom(ConceptAssertion{"c", A("C")}));
  EXPECT_EQ(kb.signature().objects, (std::set<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(kb.signature().is_data_role("p"));
}

TEST(ParseKb, EquivalenceExpandsToTwoInclusions) {
  KnowledgeBase kb = parse_kb("A equiv B & C");
  ASSERT_EQ(kb.tbox().size(), 1u);
  ASSERT_EQ(kb.inclusions().size(), 2u);
  Concept bc = Concept::conjunction(A("B"), A("C"));
  EXPECT_EQ(kb.inclusions()[0], (Subsumption{A("A"), bc}));
  EXPECT_EQ(kb.inclusions()[1], (Subsumption{bc, A("A")}));
}

TEST(ParseKb, Precedence) {
  Concept c = parse_concept("!A & B | exists r^-.C & D");
  Concept expected = Concept::disjunction(
      Concept::conjunction(Concept::negation(A("A")), A("B")),
      Concept::conjunction(Concept::exists(RoleExpr("r", true), A("C")), A("D")));
  EXPECT_EQ(c, expected);
  EXPECT_EQ(parse_concept("{a}"), Concept::nominal("a"));
  EXPECT_EQ(parse_concept("Top"), Concept::top());
  EXPECT_EQ(parse_concept("Bot"), Concept::bottom());
}

TEST(ParseKb, ParseErrorsCarryLocation) {
  try {
    parse_kb("A sub B\nA sub & C\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 2);
  }
  EXPECT_THROW(parse_kb("A sub"), ParseError);
  EXPECT_THROW(parse_kb("(a, b) : "), ParseError);
  EXPECT_THROW(parse_kb("Range(p, xsd:integer)"), ParseError);
}

TEST(ParseKb, SemanticErrors) {
  // role used as concept
  EXPECT_THROW(parse_kb("exists r.A sub B\nr sub A"), SemanticError);
  // data role used with an object filler
  EXPECT_THROW(parse_kb("(a, \"x\") : p\n(a, b) : p"), SemanticError);
  EXPECT_THROW(parse_kb("Range(p, xsd:string)\nexists p.A sub B"), SemanticError);
}

TEST(RoleExpr, DoubleInversionCollapses) {
  RoleExpr r("r");
  EXPECT_EQ(r.inverted().inverted(), r);
  EXPECT_EQ(parse_concept("exists r^-^-.A"), Concept::exists(RoleExpr("r"), A("A")));
}

TEST(Nnf, Examples) {
  Concept c = A("C"), d = A("D");
  EXPECT_EQ(negation_normal_form(Concept::negation(Concept::conjunction(c, d))),
            Concept::disjunction(Concept::negation(c), Concept::negation(d)));
  RoleExpr r("R");
  EXPECT_EQ(negation_normal_form(Concept::negation(Concept::exists(r, c))),
            Concept::forall(r, Concept::negation(c)));
  EXPECT_EQ(negation_normal_form(Concept::negation(Concept::negation(A("A")))), A("A"));
  EXPECT_EQ(negation_normal_form(Concept::negation(Concept::top())), Concept::bottom());
}

TEST(Nnf, IdempotentAndNormal) {
  std::mt19937 rng(11);
  testgen::NamePool pool;
  for (int i = 0; i < 500; ++i) {
    Concept c = testgen::random_concept(rng, pool, 4);
    Concept n = negation_normal_form(c);
    EXPECT_TRUE(is_nnf(n)) << to_string(c);
    EXPECT_EQ(negation_normal_form(n), n);
    EXPECT_EQ(negated_nnf(c), negation_normal_form(Concept::negation(c)));
  }
}

TEST(Nnf, PreservesExtension) {
  std::mt19937 rng(12);
  testgen::NamePool pool;
  pool.use_data = false;
  for (int i = 0; i < 400; ++i) {
    FiniteInterpretation I = testgen::random_interpretation(rng, pool, 1 + testgen::pick(rng, 4));
    Concept c = testgen::random_concept(rng, pool, 4);
    EXPECT_EQ(concept_extension(I, c), concept_extension(I, negation_normal_form(c))) << to_string(c);
  }
}

TEST(Serialize, MusicKbRoundTrips) {
  KnowledgeBase kb = load_kb_file(kRoot + "/examples/music.kb");
  EXPECT_EQ(parse_kb(serialize_kb(kb)), kb);
}

TEST(Serialize, EmptyKb) {
  KnowledgeBase kb;
  EXPECT_TRUE(parse_kb(serialize_kb(kb)).empty());
}

TEST(Serialize, InverseRoleAssertion) {
  KnowledgeBase kb = parse_kb("(a, b) : r^-");
  std::string text = serialize_kb(kb);
  EXPECT_NE(text.find("r^-"), std::string::npos);
  EXPECT_EQ(parse_kb(text), kb);
}

TEST(Serialize, RandomKbsRoundTrip) {
  std::mt19937 rng(13);
  for (int i = 0; i < 300; ++i) {
    KnowledgeBase kb = testgen::random_kb(rng);
    EXPECT_EQ(parse_kb(serialize_kb(kb)), kb) << serialize_kb(kb);
  }
}

namespace {

void collect(const Concept& c, Signature& s) {
  switch (c.kind()) {
    case Concept::Kind::Atomic: s.concepts.insert(c.name()); break;
    case Concept::Kind::Nominal: s.objects.insert(c.name()); break;
    case Concept::Kind::Not: collect(c.operand(), s); break;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      collect(c.lhs(), s);
      collect(c.rhs(), s);
      break;
    case Concept::Kind::Exists:
    case Concept::Kind::Forall:
      (c.operand().is(Concept::Kind::Datatype) ? s.data_roles : s.roles).insert(c.role().name);
      collect(c.operand(), s);
      break;
    default: break;
  }
}

}  // namespace

TEST(Signature, ClosedOverAxiomNames) {
  std::mt19937 rng(14);
  for (int i = 0; i < 300; ++i) {
    KnowledgeBase kb = testgen::random_kb(rng);
    Signature used;
    for (const auto& axs : {kb.tbox(), kb.abox()}) {
      for (const auto& ax : axs) {
        std::visit(
            [&](const auto& a) {
              using X = std::decay_t<decltype(a)>;
              if constexpr (std::is_same_v<X, Subsumption>) {
                collect(a.sub, used);
                collect(a.sup, used);
              } else if constexpr (std::is_same_v<X, ConceptEquality>) {
                collect(a.lhs, used);
                collect(a.rhs, used);
              } else if constexpr (std::is_same_v<X, ConceptAssertion>) {
                used.objects.insert(a.object);
                collect(a.expr, used);
              } else if constexpr (std::is_same_v<X, RoleAssertion>) {
                used.objects.insert(a.subject);
                used.objects.insert(a.object);
                used.roles.insert(a.role.name);
              } else if constexpr (std::is_same_v<X, DataAssertion>) {
                used.objects.insert(a.subject);
                used.data_roles.insert(a.role);
              } else {
                used.objects.insert(a.a);
                used.objects.insert(a.b);
              }
            },
            ax);
      }
    }
    EXPECT_EQ(kb.signature(), used) << serialize_kb(kb);
    for (const auto& r : kb.signature().roles) EXPECT_FALSE(kb.signature().data_roles.contains(r));
  }
}

TEST(Printing, UnicodeAndAscii) {
  Concept c = parse_concept("MusicArtist & exists recorded.Song");
  EXPECT_EQ(to_string(c, Notation::Unicode), "MusicArtist ⊓ ∃recorded.Song");
  EXPECT_EQ(parse_concept(to_string(c)), c);
  Concept inv = parse_concept("forall r^-.!{a} | Bot");
  EXPECT_EQ(to_string(inv, Notation::Unicode), "∀r⁻.¬{a} ⊔ ⊥");
  EXPECT_EQ(parse_concept(to_string(inv)), inv);
}

TEST(Printing, RandomConceptsRoundTrip) {
  std::mt19937 rng(15);
  testgen::NamePool pool;
  for (int i = 0; i < 500; ++i) {
    Concept c = testgen::random_concept(rng, pool, 4);
    EXPECT_EQ(parse_concept(to_string(c)), c) << to_string(c);
  }
}
