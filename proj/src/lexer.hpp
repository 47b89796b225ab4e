#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lambdadl/errors.hpp"

namespace lambdadl::detail {

enum class Tok {
  Ident,
  String,
  XsdString,
  XsdBoolean,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Amp,
  Bar,
  Bang,
  Eq,
  EqEq,
  Arrow,
  Inverse,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

/// Splits KB or program text into tokens. `//` starts a line comment. The DL
/// glyphs (⊓ ⊔ ¬ ∃ ∀ ⊤ ⊥ ⁻ ⊑ ≡ → λ) are accepted as aliases of their ASCII
/// spellings.
std::vector<Token> tokenize(std::string_view text);

const char* token_name(Tok t);
std::string describe(const Token& t);

/// Cursor over a token vector shared by the KB and program parsers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  bool at_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const char* what);
  void expect_word(std::string_view w);

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().loc); }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t p) { pos_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace lambdadl::detail
