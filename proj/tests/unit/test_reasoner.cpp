#include <gtest/gtest.h>

#include <future>

#include "../support/generators.hpp"

using namespace lambdadl;

namespace {

const std::string kRoot = LAMBDADL_SOURCE_DIR;

Concept A(const char* n) { return Concept::atomic(n); }
Concept C(const char* text) { return parse_concept(text); }

class Music : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { kb_ = new KnowledgeBase(load_kb_file(kRoot + "/examples/music.kb")); }
  static void TearDownTestSuite() { delete kb_; }

  const KnowledgeBase& kb() const { return *kb_; }
  TableauReasoner ks{*kb_};
  static KnowledgeBase* kb_;
};
KnowledgeBase* Music::kb_ = nullptr;

}  // namespace

TEST_F(Music, Satisfiability) {
  EXPECT_TRUE(ks.is_consistent());
  EXPECT_TRUE(ks.is_satisfiable(C("MusicArtist & exists recorded.Song")));
  EXPECT_FALSE(ks.is_satisfiable(C("MusicArtist & !MusicArtist")));
  EXPECT_FALSE(ks.is_satisfiable(C("MusicGroup & forall recorded.Bot & exists playedAt.RadioStation")));
}

TEST_F(Music, Subsumption) {
  EXPECT_TRUE(ks.is_subsumed(A("MusicGroup"), A("MusicArtist")));
  EXPECT_FALSE(ks.is_subsumed(A("MusicArtist"), C("exists influencedBy.Top")));
  EXPECT_TRUE(ks.is_subsumed(A("Song"), A("Song")));
  EXPECT_TRUE(ks.is_subsumed(C("MusicGroup & exists playedAt.RadioStation"), C("exists recorded.Song")));
}

TEST_F(Music, Instances) {
  EXPECT_TRUE(ks.is_instance("hendrix", A("MusicArtist")));
  EXPECT_TRUE(ks.is_instance("beatles", C("exists recorded.Song")));
  EXPECT_FALSE(ks.is_instance("beatles", C("exists influencedBy.Top")));
  EXPECT_FALSE(ks.is_instance("beatles", C("!(exists influencedBy.Top)")));
  EXPECT_TRUE(ks.is_instance("hendrix", C("exists artistName.xsd:string")));
}

TEST_F(Music, ObjectEquivalence) {
  EXPECT_FALSE(ks.are_equivalent_objects("hendrix", "beatles"));
  EXPECT_TRUE(ks.are_equivalent_objects("hendrix", "hendrix"));
  KnowledgeBase eq = parse_kb("a == b\n(a, c) : r");
  TableauReasoner eks(eq);
  EXPECT_TRUE(eks.are_equivalent_objects("a", "b"));
  EXPECT_TRUE(eks.are_equivalent_objects("b", "a"));
  EXPECT_TRUE(eks.entails_role_assertion("b", "c", RoleExpr("r")));
}

TEST_F(Music, Queries) {
  EXPECT_EQ(ks.query_instances(C("MusicArtist & exists recorded.Song")),
            (std::vector<std::string>{"beatles", "hendrix"}));
  EXPECT_TRUE(ks.query_instances(C("MusicArtist & !MusicArtist")).empty());
  EXPECT_EQ(ks.query_instances(A("MusicGroup")), std::vector<std::string>{"beatles"});
  EXPECT_EQ(ks.query_instances(A("RadioStation")), std::vector<std::string>{"coolFm"});
}

TEST_F(Music, RoleSuccessors) {
  EXPECT_EQ(ks.query_role_successors("hendrix", RoleExpr("recorded")), std::vector<std::string>{"machineGun"});
  EXPECT_TRUE(ks.query_role_successors("beatles", RoleExpr("recorded")).empty());
  EXPECT_EQ(ks.query_role_successors("machineGun", RoleExpr("recorded", true)), std::vector<std::string>{"hendrix"});
  EXPECT_EQ(ks.query_role_successors("coolFm", RoleExpr("playedAt", true)),
            (std::vector<std::string>{"beatles", "hendrix"}));
}

TEST_F(Music, DataSuccessors) {
  EXPECT_EQ(ks.query_data_successors("hendrix", "artistName"),
            std::vector<Primitive>{Primitive(std::string("Jimmy Hendrix"))});
  EXPECT_TRUE(ks.query_data_successors("coolFm", "artistName").empty());
  EXPECT_EQ(ks.query_data_successors("beatles", "artistName"),
            std::vector<Primitive>{Primitive(std::string("The Beatles"))});
  EXPECT_EQ(ks.data_range("artistName"), Datatype::String);
}

TEST_F(Music, UncachedWrappersAgree) {
  EXPECT_EQ(query_instances(kb(), A("MusicArtist")), ks.query_instances(A("MusicArtist")));
  EXPECT_TRUE(is_subsumed(kb(), A("MusicGroup"), A("MusicArtist")));
  EXPECT_TRUE(is_instance(kb(), "hendrix", A("MusicArtist")));
  EXPECT_FALSE(are_equivalent_objects(kb(), "hendrix", "beatles"));
}

TEST_F(Music, Countermodels) {
  EXPECT_FALSE(find_countermodel(kb(), ConceptAssertion{"hendrix", A("MusicArtist")}, 4).has_value());
  auto m = find_countermodel(kb(), ConceptAssertion{"beatles", C("exists influencedBy.Top")}, 4);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(is_model(*m, kb()));
  EXPECT_FALSE(satisfies(*m, ConceptAssertion{"beatles", C("exists influencedBy.Top")}));
  EXPECT_TRUE(find_countermodel(kb(), ObjectEquivalence{"hendrix", "beatles"}, 4).has_value());
}

TEST(Reasoner, TrivialCases) {
  KnowledgeBase empty;
  EXPECT_FALSE(is_satisfiable(empty, C("A & !A")));
  EXPECT_TRUE(is_subsumed(empty, C("A & B"), C("A")));
  EXPECT_FALSE(find_countermodel(parse_kb("a : Top"), ConceptAssertion{"a", Concept::top()}, 1).has_value());
}

TEST(Reasoner, InfiniteModel) {
  TableauReasoner ks(load_kb_file(kRoot + "/examples/infinite.kb"));
  EXPECT_TRUE(ks.is_satisfiable(A("Person")));
  EXPECT_EQ(ks.query_instances(A("Person")), std::vector<std::string>{"someone"});
  EXPECT_TRUE(ks.is_subsumed(A("Person"), C("exists hasFather.exists hasFather.Person")));
}

TEST(Reasoner, InverseAndNominals) {
  TableauReasoner ks(parse_kb("A sub forall r.B\n(a, b) : r\na : A\nC sub {a}\nc : C"));
  EXPECT_TRUE(ks.is_instance("b", A("B")));
  EXPECT_TRUE(ks.is_instance("b", C("exists r^-.A")));
  EXPECT_TRUE(ks.are_equivalent_objects("a", "c"));
  EXPECT_TRUE(ks.is_subsumed(A("C"), A("A")));
  EXPECT_TRUE(ks.is_subsumed(C("exists r^-.C"), A("B")));
}

TEST(Reasoner, InconsistentKbEntailsEverything) {
  TableauReasoner ks(parse_kb("a : A & !A"));
  EXPECT_FALSE(ks.is_consistent());
  EXPECT_TRUE(ks.is_instance("a", A("B")));
  EXPECT_FALSE(ks.is_satisfiable(Concept::top()));
}

TEST(Reasoner, DatatypesAreDisjoint) {
  TableauReasoner ks(parse_kb("(a, \"x\") : p\n(b, true) : p\nRange(p, xsd:string)"));
  EXPECT_FALSE(ks.is_consistent());
  TableauReasoner ok(parse_kb("(a, \"x\") : p"));
  EXPECT_TRUE(ok.is_consistent());
  EXPECT_TRUE(ok.is_instance("a", C("exists p.xsd:string")));
  EXPECT_FALSE(ok.is_instance("a", C("exists p.xsd:boolean")));
}

TEST(Reasoner, BudgetExceededIsReported) {
  Budget tiny{3, std::chrono::milliseconds(5000)};
  TableauReasoner ks(load_kb_file(kRoot + "/examples/infinite.kb"), tiny);
  EXPECT_THROW(ks.is_satisfiable(A("Person")), ResourceLimit);
}

// -- properties over random KBs ----------------------------------------------

TEST(ReasonerProperty, SubsumptionIsUnsatisfiabilityOfDifference) {
  std::mt19937 rng(21);
  for (int k = 0; k < 150; ++k) {
    KnowledgeBase kb = testgen::random_kb(rng);
    TableauReasoner ks(kb);
    auto names = testgen::names_of(kb);
    for (int i = 0; i < 4; ++i) {
      Concept c = testgen::random_concept(rng, names, 2), d = testgen::random_concept(rng, names, 2);
      EXPECT_EQ(ks.is_subsumed(c, d), !ks.is_satisfiable(Concept::conjunction(c, Concept::negation(d))))
          << serialize_kb(kb) << to_string(c) << " sub " << to_string(d);
    }
  }
}

TEST(ReasonerProperty, InstanceMatchesNominalReduction) {
  std::mt19937 rng(22);
  for (int k = 0; k < 150; ++k) {
    KnowledgeBase kb = testgen::random_kb(rng);
    TableauReasoner ks(kb);
    auto names = testgen::names_of(kb);
    for (const auto& a : names.objects) {
      Concept c = testgen::random_concept(rng, names, 2);
      bool direct = ks.is_instance(a, c);
      EXPECT_EQ(direct, ks.is_instance_via_nominal(a, c)) << serialize_kb(kb) << a << " : " << to_string(c);
      EXPECT_EQ(direct, ks.is_subsumed(Concept::nominal(a), c));
    }
  }
}

TEST(ReasonerProperty, QueriesAreMonotoneAndDlSafe) {
  std::mt19937 rng(23);
  int extended = 0;
  for (int k = 0; k < 150; ++k) {
    KnowledgeBase kb = testgen::random_kb(rng);
    TableauReasoner ks(kb);
    if (!ks.is_consistent()) continue;
    auto names = testgen::names_of(kb);
    Concept q = testgen::random_concept(rng, names, 2);
    auto before = ks.query_instances(q);
    for (const auto& a : before) EXPECT_TRUE(kb.signature().objects.contains(a));

    std::vector<Axiom> axioms = kb.tbox();
    axioms.insert(axioms.end(), kb.abox().begin(), kb.abox().end());
    if (names.objects.empty()) continue;
    const auto& o = testgen::pick_from(rng, names.objects);
    if (testgen::chance(rng, 0.5))
      axioms.push_back(ConceptAssertion{o, Concept::atomic(testgen::pick_from(rng, names.concepts))});
    else
      axioms.push_back(RoleAssertion{o, testgen::pick_from(rng, names.objects),
                                     RoleExpr(testgen::pick_from(rng, names.roles))});
    KnowledgeBase bigger;
    try {
      bigger = KnowledgeBase(axioms);
    } catch (const SemanticError&) {
      continue;
    }
    TableauReasoner ks2(bigger);
    if (!ks2.is_consistent()) continue;
    ++extended;
    auto after = ks2.query_instances(q);
    for (const auto& a : before)
      EXPECT_TRUE(std::find(after.begin(), after.end(), a) != after.end())
          << serialize_kb(bigger) << "lost " << a << " for " << to_string(q);
  }
  EXPECT_GT(extended, 50);
}

TEST(ReasonerProperty, CacheIsObservationallyPure) {
  std::mt19937 rng(24);
  for (int k = 0; k < 80; ++k) {
    KnowledgeBase kb = testgen::random_kb(rng);
    TableauReasoner cached(kb);
    auto names = testgen::names_of(kb);
    std::vector<Concept> cs;
    for (int i = 0; i < 5; ++i) cs.push_back(testgen::random_concept(rng, names, 2));
    for (int round = 0; round < 2; ++round)
      for (const auto& c : cs) {
        EXPECT_EQ(cached.is_satisfiable(c), is_satisfiable(kb, c));
        EXPECT_EQ(cached.query_instances(c), query_instances(kb, c));
      }
    EXPECT_GT(cached.stats().cache_hits, 0u);
    cached.clear_cache();
    for (const auto& c : cs) EXPECT_EQ(cached.is_satisfiable(c), is_satisfiable(kb, c));
  }
}

TEST(ReasonerProperty, ConcurrentQueriesAgree) {
  KnowledgeBase kb = load_kb_file(kRoot + "/examples/music.kb");
  TableauReasoner shared(kb);
  std::vector<Concept> cs{A("MusicArtist"), C("exists recorded.Song"), C("exists influencedBy.Top"),
                          C("MusicGroup | Song"), C("!RadioStation"), C("exists playedAt^-.Top")};
  std::vector<std::vector<std::string>> expected;
  for (const auto& c : cs) expected.push_back(query_instances(kb, c));
  std::vector<std::future<bool>> jobs;
  for (int t = 0; t < 8; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      bool ok = true;
      for (int i = 0; i < 30; ++i) {
        std::size_t j = static_cast<std::size_t>(t + i) % cs.size();
        ok &= shared.query_instances(cs[j]) == expected[j];
      }
      return ok;
    }));
  for (auto& j : jobs) EXPECT_TRUE(j.get());
}

TEST(ReasonerProperty, OracleAgreesWithTableau) {
  std::mt19937 rng(25);
  int models = 0;
  for (int k = 0; k < 200; ++k) {
    KnowledgeBase kb = testgen::random_kb(rng);
    TableauReasoner ks(kb);
    auto names = testgen::names_of(kb);
    Axiom goal = testgen::random_goal(rng, names);
    auto m = find_countermodel(kb, goal, 3);
    if (!m) continue;
    ++models;
    EXPECT_TRUE(is_model(*m, kb));
    EXPECT_FALSE(satisfies(*m, goal));
    EXPECT_FALSE(testgen::tableau_entails(ks, goal)) << serialize_kb(kb) << to_string(goal);
  }
  EXPECT_GT(models, 50);
}

TEST(ReasonerProperty, TerminatesWithinBudget) {
  std::mt19937 rng(26);
  for (int k = 0; k < 300; ++k) {
    KnowledgeBase kb = testgen::random_kb(rng);
    TableauReasoner ks(kb);
    auto names = testgen::names_of(kb);
    for (int i = 0; i < 5; ++i)
      EXPECT_NO_THROW(testgen::tableau_entails(ks, testgen::random_goal(rng, names))) << serialize_kb(kb);
  }
}
