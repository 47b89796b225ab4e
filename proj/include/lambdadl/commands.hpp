#pragma once

#include <iosfwd>
#include <string>

#include "lambdadl/eval.hpp"
#include "lambdadl/reasoner.hpp"

namespace lambdadl {

enum ExitCode : int {
  kExitOk = 0,
  kExitTypeError = 1,
  kExitInput = 2,  // parse or IO failure
  kExitStuck = 3,
  kExitStepLimit = 4,
  kExitBudget = 5
};

struct CommandOptions {
  Budget budget = Budget::from_env();
  EvalConfig eval;
};

/// A program given either as a file path or as inline text.
struct ProgramSource {
  std::string text;
  std::string origin;  // file path, or "<expr>"

  static ProgramSource file(const std::string& path);
  static ProgramSource inline_text(std::string text);
};

/// Prints the program's type on stdout; diagnostics go to `err`.
int cmd_check(const std::string& kb_path, const ProgramSource& program, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);
/// Type checks, then evaluates and prints the value. Never evaluates a
/// program that cmd_check would reject.
int cmd_run(const std::string& kb_path, const ProgramSource& program, const CommandOptions& opts, std::ostream& out,
            std::ostream& err);
/// Prints the named instances of a concept, one per line.
int cmd_query(const std::string& kb_path, const std::string& concept_text, const CommandOptions& opts,
              std::ostream& out, std::ostream& err);
int cmd_repl(const std::string& kb_path, const CommandOptions& opts, std::istream& in, std::ostream& out,
             std::ostream& err, bool prompt = true);

}  // namespace lambdadl
