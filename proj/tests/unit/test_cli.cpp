#include <gtest/gtest.h>

#include <sstream>

#include "../support/generators.hpp"
#include "lambdadl/commands.hpp"
#include "lambdadl/session.hpp"

using namespace lambdadl;

namespace {

const std::string kRoot = LAMBDADL_SOURCE_DIR;
const std::string kMusic = kRoot + "/examples/music.kb";

std::string program(const char* name) { return kRoot + "/examples/programs/" + name; }

struct Io {
  std::ostringstream out, err;
  int code = -1;
};

Io check(const ProgramSource& p, CommandOptions opts = {}) {
  Io io;
  io.code = cmd_check(kMusic, p, opts, io.out, io.err);
  return io;
}

Io run(const ProgramSource& p, CommandOptions opts = {}) {
  Io io;
  io.code = cmd_run(kMusic, p, opts, io.out, io.err);
  return io;
}

Io repl(const std::string& input, CommandOptions opts = {}) {
  Io io;
  std::istringstream in(input);
  io.code = cmd_repl(kMusic, opts, in, io.out, io.err, false);
  return io;
}

bool traced(const Io& io) { return io.err.str().starts_with("0: ") || io.err.str().find("\n0: ") != std::string::npos; }

CommandOptions ascii() {
  CommandOptions o;
  o.eval.notation = Notation::Ascii;
  return o;
}

}  // namespace

TEST(Check, PrintsType) {
  Io io = check(ProgramSource::file(program("query.ldl")), ascii());
  EXPECT_EQ(io.code, kExitOk) << io.err.str();
  EXPECT_EQ(io.out.str(), "(MusicArtist & exists recorded.Song) list\n");
}

TEST(Check, TypeErrorsExitOne) {
  for (const char* f : {"rejected.ldl", "subsumedCase.ldl", "emptyArm.ldl"}) {
    Io io = check(ProgramSource::file(program(f)));
    EXPECT_EQ(io.code, kExitTypeError) << f;
    EXPECT_TRUE(io.out.str().empty());
    EXPECT_NE(io.err.str().find("type error"), std::string::npos) << io.err.str();
  }
  Io sub = check(ProgramSource::file(program("subsumedCase.ldl")));
  EXPECT_NE(sub.err.str().find("SubsumedCase"), std::string::npos) << sub.err.str();
}

TEST(Check, InputErrorsExitTwo) {
  EXPECT_EQ(check(ProgramSource::inline_text("let x = in x")).code, kExitInput);
  Io io;
  io.code = cmd_check(kRoot + "/examples/missing.kb", ProgramSource::inline_text("true"), {}, io.out, io.err);
  EXPECT_EQ(io.code, kExitInput);
  EXPECT_THROW(ProgramSource::file(kRoot + "/examples/programs/missing.ldl"), std::exception);
}

TEST(Run, Programs) {
  EXPECT_EQ(run(ProgramSource::file(program("getInfluences.ldl"))).out.str(), "cons \"The Beatles\" nil\n");
  EXPECT_EQ(run(ProgramSource::file(program("mappingName.ldl"))).out.str(), "\"Jimmy Hendrix\"\n");
  EXPECT_EQ(run(ProgramSource::file(program("mappingSongs.ldl"))).out.str(), "cons machineGun nil\n");
  Io q = run(ProgramSource::file(program("query.ldl")));
  EXPECT_EQ(q.code, kExitOk);
  EXPECT_EQ(q.out.str(), "cons beatles (cons hendrix nil)\n");
}

TEST(Run, ExitCodes) {
  Io stuck = run(ProgramSource::inline_text("head (beatles.recorded)"));
  EXPECT_EQ(stuck.code, kExitStuck);
  EXPECT_NE(stuck.err.str().find("head of an empty list"), std::string::npos);
  EXPECT_EQ(run(ProgramSource::inline_text("tail nil[Song]")).code, kExitStuck);

  CommandOptions opts;
  opts.eval.step_limit = 50;
  Io loop = run(ProgramSource::inline_text("(fix (fun(f: bool -> bool). fun(x: bool). f x)) true"), opts);
  EXPECT_EQ(loop.code, kExitStepLimit);

  CommandOptions tiny;
  tiny.budget.max_nodes = 1;
  EXPECT_EQ(run(ProgramSource::inline_text("query MusicArtist & exists recorded.Song"), tiny).code, kExitBudget);
}

TEST(Run, NeverEvaluatesRejectedPrograms) {
  CommandOptions opts;
  opts.eval.trace = true;
  Io io = run(ProgramSource::file(program("rejected.ldl")), opts);
  EXPECT_EQ(io.code, kExitTypeError);
  EXPECT_TRUE(io.out.str().empty());
  EXPECT_FALSE(traced(io));
}

TEST(Run, TraceGoesToStderr) {
  CommandOptions opts;
  opts.eval.trace = true;
  Io io = run(ProgramSource::inline_text("if true then hendrix else beatles"), opts);
  EXPECT_EQ(io.out.str(), "hendrix\n");
  EXPECT_NE(io.err.str().find("0: if true"), std::string::npos);
  EXPECT_NE(io.err.str().find("1: hendrix"), std::string::npos);
}

TEST(Query, ListsInstances) {
  Io io;
  io.code = cmd_query(kMusic, "MusicArtist & exists recorded.Song", {}, io.out, io.err);
  EXPECT_EQ(io.code, kExitOk);
  EXPECT_EQ(io.out.str(), "beatles\nhendrix\n");

  Io radio;
  radio.code = cmd_query(kMusic, "exists influencedBy.Top", {}, radio.out, radio.err);
  EXPECT_EQ(radio.out.str(), "hendrix\n");

  Io empty;
  empty.code = cmd_query(kMusic, "Song & !Song", {}, empty.out, empty.err);
  EXPECT_EQ(empty.code, kExitOk);
  EXPECT_TRUE(empty.out.str().empty());
  EXPECT_NE(empty.err.str().find("unsatisfiable"), std::string::npos);

  Io bad;
  bad.code = cmd_query(kMusic, "Song &", {}, bad.out, bad.err);
  EXPECT_EQ(bad.code, kExitInput);
}

TEST(Repl, TypeBindAndQuit) {
  Io io = repl(":type query MusicGroup\nlet names = hendrix.artistName\nnames\n:quit\nnames\n");
  EXPECT_EQ(io.code, kExitOk);
  EXPECT_EQ(io.out.str(),
            "MusicGroup list\n"
            "names : string list = cons \"Jimmy Hendrix\" nil\n"
            "- : string list = cons \"Jimmy Hendrix\" nil\n");
  EXPECT_TRUE(io.err.str().empty()) << io.err.str();
}

TEST(Repl, ErrorsDoNotEndTheSession) {
  Io io = repl("head nil[Song]\nlet x = in\n1\nlet y = hendrix = beatles\n:nope\ny\n", ascii());
  EXPECT_EQ(io.code, kExitOk);
  EXPECT_NE(io.err.str().find("head of an empty list"), std::string::npos);
  EXPECT_NE(io.err.str().find("unknown command"), std::string::npos);
  EXPECT_NE(io.out.str().find("y : bool = false"), std::string::npos);
  EXPECT_NE(io.out.str().find("- : bool = false"), std::string::npos);
}

TEST(Repl, RejectedBindingIsNotAdded) {
  Io io = repl("let f = fun(x: exists influencedBy.Top). x.influencedBy\nlet bad = f beatles\n:type bad\n", ascii());
  EXPECT_NE(io.out.str().find("f : "), std::string::npos);
  EXPECT_EQ(io.out.str().find("bad :"), std::string::npos);
  EXPECT_NE(io.err.str().find("type error"), std::string::npos);
}

TEST(Repl, LoadClearsBindings) {
  Io io = repl("let x = true\n:load " + kRoot + "/examples/infinite.kb\nx\nquery Person\n", ascii());
  EXPECT_NE(io.out.str().find("loaded"), std::string::npos);
  EXPECT_NE(io.err.str().find("error"), std::string::npos);
  EXPECT_NE(io.out.str().find("cons someone nil"), std::string::npos);
}

TEST(Repl, MissingKbExitsTwo) {
  Io io;
  std::istringstream in(":quit\n");
  io.code = cmd_repl(kRoot + "/examples/missing.kb", {}, in, io.out, io.err, false);
  EXPECT_EQ(io.code, kExitInput);
}

// -- session invariants ------------------------------------------------------

TEST(SessionProperty, BindingsStayWellTyped) {
  std::mt19937 rng(61);
  for (int k = 0; k < 4; ++k) {
    Session s(testgen::random_program_kb(rng));
    testgen::TermGen gen(s.ks(), rng);
    int bound = 0;
    for (int i = 0; i < 60; ++i) {
      std::string name = "v" + std::to_string(i);
      std::string text = "let " + name + " = " + to_string(gen.closed_term(3));
      try {
        auto o = s.submit(text);
        ASSERT_TRUE(o.name.has_value());
        if (o.result.ok()) {
          ++bound;
          EXPECT_TRUE(s.bindings().contains(name));
        } else {
          EXPECT_FALSE(s.bindings().contains(name));
        }
      } catch (const ResourceLimit&) {
      }
      for (const auto& [x, v] : s.bindings()) {
        auto declared = s.context().lookup(x);
        ASSERT_TRUE(declared.has_value()) << x;
        Type actual = typecheck(s.ks(), {}, value_to_term(v), TypingMode::Runtime);
        EXPECT_TRUE(is_subtype(s.ks(), actual, *declared)) << x << " = " << to_string(v);
      }
      EXPECT_EQ(s.bindings().size(), s.context().bindings().size());
    }
    EXPECT_GT(bound, 30);
    // later terms may mention earlier names
    if (s.bindings().contains("v0")) EXPECT_NO_THROW(s.type_of(s.parse("v0")));
  }
}

TEST(SessionProperty, RunOnlyAfterCheck) {
  std::mt19937 rng(62);
  TableauReasoner ks(load_kb_file(kMusic));
  testgen::TermGen gen(ks, rng);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 200; ++i) {
    // wrapping in a conditional rejects every non-boolean term
    std::string text = to_string(gen.closed_term(3));
    if (i % 2) text = "if (" + text + ") then true else false";
    Io c = check(ProgramSource::inline_text(text));
    CommandOptions opts;
    opts.eval.trace = true;
    Io r = run(ProgramSource::inline_text(text), opts);
    if (c.code == kExitOk) {
      ++accepted;
      EXPECT_NE(r.code, kExitTypeError) << text;
    } else {
      ++rejected;
      EXPECT_EQ(r.code, c.code) << text;
      EXPECT_TRUE(r.out.str().empty());
      EXPECT_FALSE(traced(r)) << text;
    }
  }
  EXPECT_GT(accepted, 0);
  EXPECT_GT(rejected, 0);
}
