#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "../support/generators.hpp"

using namespace lambdadl;

namespace {

const std::string kRoot = LAMBDADL_SOURCE_DIR;

Concept C(const char* text) { return parse_concept(text); }
Type T(const char* text) { return parse_type(text); }

std::string read(const std::string& rel) {
  std::ifstream in(kRoot + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Music : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { ks_ = new TableauReasoner(load_kb_file(kRoot + "/examples/music.kb")); }
  static void TearDownTestSuite() { delete ks_; }

  Type type_of(const std::string& text) const { return typecheck(*ks_, {}, parse_term(text)); }

  TypeError error_of(const std::string& text) const {
    try {
      type_of(text);
    } catch (const TypeError& e) {
      return e;
    }
    ADD_FAILURE() << "accepted: " << text;
    return TypeError(TypeErrorKind::Mismatch, "", {}, "");
  }

  static TableauReasoner* ks_;
};
TableauReasoner* Music::ks_ = nullptr;

}  // namespace

TEST(Lub, Examples) {
  EXPECT_EQ(lub(Type::boolean(), Type::boolean()), Type::boolean());
  EXPECT_EQ(lub(T("MusicArtist"), T("Song")), T("MusicArtist | Song"));
  EXPECT_EQ(lub(T("C list"), T("D list")), T("(C | D) list"));
  EXPECT_EQ(lub(T("C -> bool"), T("D -> bool")), T("C & D -> bool"));
  EXPECT_EQ(lub(T("A"), T("A")), T("A"));
  EXPECT_THROW(lub(Type::boolean(), Type::string()), TypeError);
  EXPECT_THROW(lub(T("A"), T("A list")), TypeError);
  EXPECT_THROW(lub(T("A -> A"), T("A")), TypeError);
}

TEST(Glb, Examples) {
  EXPECT_EQ(glb(T("C"), T("D")), T("C & D"));
  EXPECT_EQ(glb(Type::boolean(), Type::boolean()), Type::boolean());
  EXPECT_EQ(glb(T("C -> bool"), T("D -> bool")), T("C | D -> bool"));
  EXPECT_EQ(glb(T("A list"), T("B list")), T("(A & B) list"));
  EXPECT_THROW(glb(Type::string(), Type::boolean()), TypeError);
  try {
    glb(T("A"), Type::boolean());
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind(), TypeErrorKind::Mismatch);
  }
}

TEST_F(Music, SubtypeExamples) {
  EXPECT_TRUE(is_subtype(*ks_, T("{hendrix}"), T("MusicArtist")));
  EXPECT_FALSE(is_subtype(*ks_, T("MusicArtist"), T("exists influencedBy.Top")));
  EXPECT_TRUE(is_subtype(*ks_, T("C list"), T("C list")));
  EXPECT_TRUE(is_subtype(*ks_, T("MusicArtist -> MusicGroup"), T("MusicGroup -> MusicArtist")));
  EXPECT_FALSE(is_subtype(*ks_, T("MusicGroup -> MusicGroup"), T("MusicArtist -> MusicArtist")));
  EXPECT_FALSE(is_subtype(*ks_, T("bool"), T("string")));
  EXPECT_FALSE(is_subtype(*ks_, T("MusicArtist"), T("MusicArtist list")));
  auto why = subtype_failure(*ks_, T("MusicArtist"), T("exists influencedBy.Top"));
  ASSERT_TRUE(why.has_value());
  EXPECT_NE(why->find("S-CONCEPT"), std::string::npos);
  EXPECT_NE(subtype_failure(*ks_, T("MusicArtist list"), T("Song list"))->find("S-LIST"), std::string::npos);
  EXPECT_FALSE(subtype_failure(*ks_, T("MusicGroup list"), T("MusicArtist list")).has_value());
}

TEST_F(Music, ListingsTypecheck) {
  EXPECT_EQ(type_of(read("examples/programs/query.ldl")), T("(MusicArtist & exists recorded.Song) list"));
  EXPECT_EQ(type_of(read("examples/programs/mappingSongs.ldl")), T("(exists recorded^-.exists recorded.Song) list"));
  EXPECT_EQ(type_of(read("examples/programs/mappingName.ldl")), Type::string());
  EXPECT_EQ(type_of(read("examples/programs/getInfluences.ldl")), T("string list"));
  EXPECT_EQ(type_of(read("examples/programs/musicArtistInfluences.ldl")), T("string list"));
}

TEST_F(Music, KbConstructs) {
  EXPECT_EQ(type_of("hendrix"), T("{hendrix}"));
  EXPECT_EQ(type_of("hendrix.recorded"), T("(exists recorded^-.{hendrix}) list"));
  EXPECT_EQ(type_of("hendrix.artistName"), T("string list"));
  EXPECT_EQ(type_of("hendrix = beatles"), Type::boolean());
  EXPECT_EQ(type_of("\"a\" = \"b\""), Type::boolean());
  EXPECT_EQ(type_of("query MusicGroup"), T("MusicGroup list"));
}

TEST_F(Music, GeneralConstructs) {
  EXPECT_EQ(type_of("true"), Type::boolean());
  EXPECT_EQ(type_of("fun(x: MusicArtist). x"), T("MusicArtist -> MusicArtist"));
  EXPECT_EQ(type_of("(fun(x: MusicArtist). x) beatles"), T("MusicArtist"));
  EXPECT_EQ(type_of("if true then hendrix else beatles"), T("{hendrix} | {beatles}"));
  EXPECT_EQ(type_of("cons hendrix (cons beatles nil[Song])"), T("({hendrix} | ({beatles} | Song)) list"));
  EXPECT_EQ(type_of("let x = coolFm in x"), T("{coolFm}"));
  EXPECT_EQ(type_of("fix (fun(f: MusicArtist -> bool). fun(x: MusicArtist). f x)"), T("MusicArtist -> bool"));
  EXPECT_EQ(type_of("null nil[bool]"), Type::boolean());
  EXPECT_EQ(type_of("tail (query Song)"), T("Song list"));
  EXPECT_EQ(type_of("case hendrix of | default true"), Type::boolean());
  EXPECT_EQ(type_of("case hendrix of | type MusicGroup as x -> x | default machineGun"), T("MusicGroup | {machineGun}"));
}

TEST_F(Music, RejectedListing) {
  TypeError e = error_of(read("examples/programs/rejected.ldl"));
  EXPECT_EQ(e.kind(), TypeErrorKind::Mismatch);
  EXPECT_EQ(e.rule(), "T-APP");
  EXPECT_NE(e.message().find("S-CONCEPT"), std::string::npos);
  EXPECT_EQ(e.location().line, 3);
  EXPECT_NE(std::string(e.what()).find("Mismatch [T-APP]"), std::string::npos);
}

TEST_F(Music, DispatchSideConditions) {
  TypeError sub = error_of(read("examples/programs/subsumedCase.ldl"));
  EXPECT_EQ(sub.kind(), TypeErrorKind::SubsumedCase);
  EXPECT_EQ(sub.rule(), "T-DISPATCH");
  TypeError empty = error_of(read("examples/programs/emptyArm.ldl"));
  EXPECT_EQ(empty.kind(), TypeErrorKind::EmptyIntersection);
  EXPECT_EQ(empty.rule(), "T-DISPATCH");
  EXPECT_NO_THROW(type_of("case hendrix of | type MusicGroup as x -> true | type MusicArtist as y -> false | default true"));
  EXPECT_EQ(error_of("case elvis of | default true").kind(), TypeErrorKind::UnknownObject);
  EXPECT_EQ(error_of("case true of | default true").kind(), TypeErrorKind::Mismatch);
}

TEST_F(Music, ErrorKinds) {
  EXPECT_EQ(error_of("query (A & !A)").kind(), TypeErrorKind::UnsatisfiableQuery);
  EXPECT_EQ(error_of("query MusicArtist & !MusicArtist").rule(), "T-QUERY");
  EXPECT_EQ(error_of("query Unicorn").kind(), TypeErrorKind::UnknownName);
  EXPECT_EQ(error_of("fun(x: Unicorn). x").kind(), TypeErrorKind::UnknownName);
  EXPECT_EQ(error_of("elvis").kind(), TypeErrorKind::UnknownObject);
  // distinct names may denote one element, so only disjoint concepts clash
  EXPECT_NO_THROW(type_of("hendrix = machineGun"));
  EXPECT_EQ(error_of("fun(x: Song). fun(y: !Song). x = y").kind(), TypeErrorKind::EmptyIntersection);
  EXPECT_EQ(error_of("hendrix = true").kind(), TypeErrorKind::Mismatch);
  EXPECT_EQ(error_of("nil[bool] = nil[bool]").kind(), TypeErrorKind::UnsupportedEquality);
  EXPECT_EQ(error_of("true.recorded").kind(), TypeErrorKind::NonConceptProjection);
  EXPECT_EQ(error_of("head true").kind(), TypeErrorKind::NonListElim);
  EXPECT_EQ(error_of("null hendrix").kind(), TypeErrorKind::NonListElim);
  EXPECT_EQ(error_of("true false").kind(), TypeErrorKind::NotAFunction);
  EXPECT_EQ(error_of("if hendrix then true else false").kind(), TypeErrorKind::Mismatch);
  EXPECT_EQ(error_of("if true then true else hendrix").kind(), TypeErrorKind::Mismatch);
  EXPECT_EQ(error_of("cons true nil[string]").kind(), TypeErrorKind::Mismatch);
  EXPECT_EQ(error_of("fix true").kind(), TypeErrorKind::NotAFunction);
  EXPECT_EQ(error_of("fix (fun(f: MusicArtist -> MusicGroup). fun(x: MusicGroup). x)").rule(), "T-FIX");
  EXPECT_THROW(typecheck(*ks_, {}, Term::var("x")), TypeError);
  try {
    typecheck(*ks_, {}, Term::var("x"));
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind(), TypeErrorKind::UnboundVariable);
    EXPECT_EQ(e.rule(), "T-VAR");
  }
}

TEST_F(Music, ContextShadowing) {
  TypingContext ctx;
  ctx.bind("x", Type::boolean());
  ctx.bind("x", T("Song"));
  EXPECT_EQ(ctx.lookup("x"), T("Song"));
  EXPECT_EQ(typecheck(*ks_, ctx, Term::var("x")), T("Song"));
  TypingContext inner = ctx.extended("y", Type::string());
  EXPECT_EQ(inner.lookup("y"), Type::string());
  EXPECT_FALSE(ctx.lookup("y").has_value());
}

TEST_F(Music, RuntimeModeSkipsEmptinessPremises) {
  Term eq = parse_term("fun(x: Song). fun(y: !Song). x = y");
  EXPECT_THROW(typecheck(*ks_, {}, eq), TypeError);
  EXPECT_NO_THROW(typecheck(*ks_, {}, eq, TypingMode::Runtime));
  eq = parse_term("machineGun = coolFm");
  ASSERT_NO_THROW(typecheck(*ks_, {}, eq));
  EXPECT_EQ(typecheck(*ks_, {}, eq, TypingMode::Runtime), Type::boolean());
  Term c = parse_term(read("examples/programs/emptyArm.ldl"));
  EXPECT_EQ(typecheck(*ks_, {}, c, TypingMode::Runtime), Type::boolean());
}

// -- properties ---------------------------------------------------------------

TEST(TypecheckProperty, LubAndGlbAreBounds) {
  std::mt19937 rng(41);
  int checked = 0;
  for (int k = 0; k < 10; ++k) {
    TableauReasoner ks(testgen::random_program_kb(rng));
    testgen::TermGen gen(ks, rng);
    for (int i = 0; i < 60; ++i) {
      Type s = gen.random_type(2), t = gen.random_type(2);
      Type w(Type::boolean()), m(Type::boolean());
      try {
        w = lub(s, t);
        m = glb(s, t);
      } catch (const TypeError&) {
        continue;
      }
      ++checked;
      EXPECT_TRUE(is_subtype(ks, s, w) && is_subtype(ks, t, w)) << to_string(s) << " , " << to_string(t);
      EXPECT_TRUE(is_subtype(ks, m, s) && is_subtype(ks, m, t)) << to_string(s) << " , " << to_string(t);
      EXPECT_EQ(lub(s, s), s);
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(TypecheckProperty, SubtypingIsReflexiveAndTransitive) {
  std::mt19937 rng(42);
  for (int k = 0; k < 10; ++k) {
    TableauReasoner ks(testgen::random_program_kb(rng));
    testgen::TermGen gen(ks, rng);
    for (int i = 0; i < 60; ++i) {
      Type a = Type::from_concept(gen.random_pool_concept());
      Type b = Type::from_concept(gen.random_pool_concept());
      Type c = Type::from_concept(gen.random_pool_concept());
      EXPECT_TRUE(is_subtype(ks, a, a));
      if (is_subtype(ks, a, b) && is_subtype(ks, b, c)) EXPECT_TRUE(is_subtype(ks, a, c));
      Type f = gen.random_type(2);
      EXPECT_TRUE(is_subtype(ks, f, f)) << to_string(f);
    }
  }
}

TEST(TypecheckProperty, GeneratedTermsAreWellTyped) {
  std::mt19937 rng(43);
  for (int k = 0; k < 5; ++k) {
    TableauReasoner ks(testgen::random_program_kb(rng));
    testgen::TermGen gen(ks, rng);
    for (int i = 0; i < 200; ++i) {
      Term t = gen.closed_term(4);
      EXPECT_NO_THROW(typecheck(ks, {}, t)) << to_string(t);
    }
  }
}
