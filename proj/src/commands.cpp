#include "lambdadl/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "lambdadl/session.hpp"
#include "lambdadl/typecheck.hpp"

namespace lambdadl {

ProgramSource ProgramSource::file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ProgramSource{ss.str(), path};
}

ProgramSource ProgramSource::inline_text(std::string text) { return ProgramSource{std::move(text), "<expr>"}; }

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs `body` and maps every failure to its exit code.
template <class F>
int guarded(const std::string& origin, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const TypeError& e) {
    err << origin << ":" << e.location().to_string() << ": type error: " << type_error_kind_name(e.kind()) << " ["
        << e.rule() << "] " << e.message() << '\n';
    return kExitTypeError;
  } catch (const ParseError& e) {
    err << origin << ":" << e.what() << '\n';
    return kExitInput;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResourceLimit& e) {
    err << "reasoner budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const EvalError& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitStuck;
  }
}

KnowledgeBase load(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw InputError("cannot read knowledge base " + path);
  try {
    return load_kb_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  } catch (const SemanticError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

int cmd_check(const std::string& kb_path, const ProgramSource& program, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(program.origin, err, [&] {
    TableauReasoner ks(load(kb_path), opts.budget);
    Term t = parse_term(program.text);
    out << to_string(typecheck(ks, {}, t), opts.eval.notation) << '\n';
    return int(kExitOk);
  });
}

int cmd_run(const std::string& kb_path, const ProgramSource& program, const CommandOptions& opts, std::ostream& out,
            std::ostream& err) {
  return guarded(program.origin, err, [&] {
    TableauReasoner ks(load(kb_path), opts.budget);
    Term t = parse_term(program.text);
    typecheck(ks, {}, t);
    EvalResult r = evaluate(ks, t, opts.eval, &err);
    const Notation n = opts.eval.notation;
    switch (r.status) {
      case EvalResult::Status::Value: out << to_string(*r.value, n) << '\n'; return int(kExitOk);
      case EvalResult::Status::StuckHeadNil:
        err << "runtime error: head of an empty list in " << to_string(r.last, n) << '\n';
        return int(kExitStuck);
      case EvalResult::Status::StuckTailNil:
        err << "runtime error: tail of an empty list in " << to_string(r.last, n) << '\n';
        return int(kExitStuck);
      case EvalResult::Status::StepLimitExceeded:
        err << "step limit of " << opts.eval.step_limit << " exceeded\n";
        return int(kExitStepLimit);
    }
    return int(kExitOk);
  });
}

int cmd_query(const std::string& kb_path, const std::string& concept_text, const CommandOptions& opts,
              std::ostream& out, std::ostream& err) {
  return guarded("<query>", err, [&] {
    TableauReasoner ks(load(kb_path), opts.budget);
    Concept c = parse_concept(concept_text);
    ks.kb().validate_concept(c);
    if (!ks.is_satisfiable(c)) {
      err << "warning: " << to_string(c, opts.eval.notation) << " is unsatisfiable; no object can be an instance\n";
      return int(kExitOk);
    }
    for (const auto& a : ks.query_instances(c)) out << a << '\n';
    return int(kExitOk);
  });
}

int cmd_repl(const std::string& kb_path, const CommandOptions& opts, std::istream& in, std::ostream& out,
             std::ostream& err, bool prompt) {
  return guarded(kb_path, err, [&] {
    Session s(load(kb_path), opts.budget, opts.eval);
    run_repl(s, in, out, err, prompt);
    return int(kExitOk);
  });
}

}  // namespace lambdadl
