#include <CLI11.hpp>

#include <iostream>

#include "lambdadl/commands.hpp"

using namespace lambdadl;

int main(int argc, char** argv) {
  CLI::App app{"lambdadl: a typed functional language over description-logic knowledge bases"};
  app.require_subcommand(1);

  std::string kb_path;
  std::string program_path;
  std::string expr;
  std::string concept_text;
  std::size_t step_limit = 1000000;
  std::size_t node_budget = 0;
  long time_budget_ms = 0;
  bool trace = false;
  bool ascii = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--kb", kb_path, "Knowledge base file (.kb)")->required();
    sub->add_option("--node-budget", node_budget, "Tableau node limit per reasoning task");
    sub->add_option("--time-budget-ms", time_budget_ms, "Tableau time limit per reasoning task");
    sub->add_flag("--ascii", ascii, "Print types and values in ASCII notation");
  };
  auto program = [&](CLI::App* sub) {
    auto* file = sub->add_option("program", program_path, "Program file (.ldl)");
    auto* e = sub->add_option("-e,--expr", expr, "Program text given inline");
    file->excludes(e);
    e->excludes(file);
  };

  auto* check = app.add_subcommand("check", "Type check a program and print its type");
  common(check);
  program(check);

  auto* run = app.add_subcommand("run", "Type check and evaluate a program");
  common(run);
  program(run);
  run->add_flag("--trace", trace, "Print every reduction step to stderr");
  run->add_option("--step-limit", step_limit, "Maximum number of reduction steps")->check(CLI::PositiveNumber);

  auto* query = app.add_subcommand("query", "List the named instances of a concept");
  common(query);
  query->add_option("concept", concept_text, "Concept expression")->required();

  auto* repl = app.add_subcommand("repl", "Interactive session");
  common(repl);
  repl->add_flag("--trace", trace, "Print every reduction step");
  repl->add_option("--step-limit", step_limit, "Maximum number of reduction steps")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  CommandOptions opts;
  if (node_budget > 0) opts.budget.max_nodes = node_budget;
  if (time_budget_ms > 0) opts.budget.max_time = std::chrono::milliseconds(time_budget_ms);
  opts.eval.step_limit = step_limit;
  opts.eval.trace = trace;
  opts.eval.notation = ascii ? Notation::Ascii : Notation::Unicode;

  auto source = [&]() -> ProgramSource {
    if (!expr.empty()) return ProgramSource::inline_text(expr);
    if (program_path.empty()) throw std::ios_base::failure("no program given (pass a file or -e)");
    return ProgramSource::file(program_path);
  };

  try {
    if (*check) return cmd_check(kb_path, source(), opts, std::cout, std::cerr);
    if (*run) return cmd_run(kb_path, source(), opts, std::cout, std::cerr);
    if (*query) return cmd_query(kb_path, concept_text, opts, std::cout, std::cerr);
    if (*repl) return cmd_repl(kb_path, opts, std::cin, std::cout, std::cerr);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
