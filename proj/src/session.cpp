#include "lambdadl/session.hpp"

#include <istream>
#include <ostream>
#include <regex>

namespace lambdadl {

Session::Session(KnowledgeBase kb, Budget budget, EvalConfig cfg)
    : budget_(budget), cfg_(cfg), ks_(std::make_unique<TableauReasoner>(std::move(kb), budget)) {}

Term Session::parse(std::string_view text) const { return parse_term(text, ctx_.names()); }

Type Session::type_of(const Term& t) const { return typecheck(*ks_, ctx_, t); }

Term Session::close(const Term& t) const {
  Term out = t;
  for (const auto& [name, v] : values_) out = substitute(out, name, v);
  return out;
}

Session::Outcome Session::submit(std::string_view input, std::ostream* trace_out) {
  static const std::regex binding(R"(^\s*let\s+([A-Za-z_][A-Za-z0-9_']*)\s*=([\s\S]*)$)");
  std::optional<std::string> name;
  std::optional<Term> term;
  try {
    term = parse(input);
  } catch (const ParseError&) {
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(input.begin(), input.end(), m, binding)) throw;
    name = m[1].str();
    term = parse(m[2].str());
  }
  Type ty = type_of(*term);
  EvalResult r = evaluate(*ks_, close(*term), cfg_, trace_out);
  if (name && r.ok()) {
    ctx_.bind(*name, ty);
    values_.insert_or_assign(*name, *r.value);
  }
  return Outcome{name, ty, r};
}

void Session::reset(KnowledgeBase kb) {
  ks_ = std::make_unique<TableauReasoner>(std::move(kb), budget_);
  ctx_ = TypingContext();
  values_.clear();
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void report_eval_failure(const EvalResult& r, std::ostream& err, Notation n) {
  switch (r.status) {
    case EvalResult::Status::StuckHeadNil: err << "runtime error: head of an empty list in " << to_string(r.last, n) << '\n'; break;
    case EvalResult::Status::StuckTailNil: err << "runtime error: tail of an empty list in " << to_string(r.last, n) << '\n'; break;
    case EvalResult::Status::StepLimitExceeded: err << "step limit exceeded after " << r.steps << " steps\n"; break;
    case EvalResult::Status::Value: break;
  }
}

}  // namespace

void run_repl(Session& s, std::istream& in, std::ostream& out, std::ostream& err, bool prompt) {
  const auto n = [&] { return s.config().notation; };
  std::string line;
  for (;;) {
    if (prompt) out << "λ> " << std::flush;
    if (!std::getline(in, line)) break;
    line = trim(line);
    if (line.empty() || line.starts_with("//")) continue;
    try {
      if (line == ":quit" || line == ":q") break;
      if (line == ":help") {
        out << "let x = t      bind x to the value of t\n"
               "t              evaluate t\n"
               ":type t        show the type of t\n"
               ":kb            print the knowledge base\n"
               ":load <path>   load another knowledge base (clears bindings)\n"
               ":quit          leave\n";
        continue;
      }
      if (line == ":kb") {
        out << serialize_kb(s.ks().kb());
        continue;
      }
      if (line.starts_with(":load")) {
        std::string path = trim(line.substr(5));
        s.reset(load_kb_file(path));
        out << "loaded " << path << '\n';
        continue;
      }
      if (line.starts_with(":type")) {
        out << to_string(s.type_of(s.parse(trim(line.substr(5)))), n()) << '\n';
        continue;
      }
      if (line.starts_with(":")) {
        err << "unknown command " << line << " (try :help)\n";
        continue;
      }
      auto o = s.submit(line, s.config().trace ? &out : nullptr);
      if (!o.result.ok()) {
        report_eval_failure(o.result, err, n());
        continue;
      }
      out << (o.name ? *o.name : "-") << " : " << to_string(o.type, n()) << " = " << to_string(*o.result.value, n())
          << '\n';
    } catch (const TypeError& e) {
      err << "type error: " << e.what() << '\n';
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
    }
  }
}

}  // namespace lambdadl
