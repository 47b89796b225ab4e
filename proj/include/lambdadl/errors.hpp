#pragma once

#include <stdexcept>
#include <string>

namespace lambdadl {

struct SourceLocation {
  int line = 0;
  int column = 0;

  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(column); }
};

/// Malformed input text (KB or program).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceLocation loc)
      : std::runtime_error(loc.to_string() + ": " + msg), loc_(loc) {}
  SourceLocation location() const { return loc_; }

 private:
  SourceLocation loc_;
};

/// Well-formed text that violates a knowledge-base well-formedness rule, e.g.
/// a name used both as a role and as a concept.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The reasoner exceeded its node or time budget. Never a substitute for a
/// boolean answer.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lambdadl
