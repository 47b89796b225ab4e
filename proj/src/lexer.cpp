#include "lexer.hpp"

#include <cctype>
#include <utility>

namespace lambdadl::detail {

namespace {

struct Glyph {
  std::string_view utf8;
  Tok kind;
  std::string_view text;
};

constexpr Glyph kGlyphs[] = {
    {"⊓", Tok::Amp, "&"},        {"⊔", Tok::Bar, "|"},        {"¬", Tok::Bang, "!"},
    {"∃", Tok::Ident, "exists"}, {"∀", Tok::Ident, "forall"}, {"⊤", Tok::Ident, "Top"},
    {"⊥", Tok::Ident, "Bot"},    {"⁻", Tok::Inverse, "^-"},   {"⊑", Tok::Ident, "sub"},
    {"≡", Tok::Ident, "equiv"},  {"→", Tok::Arrow, "->"},     {"λ", Tok::Ident, "fun"},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

const char* token_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string literal";
    case Tok::XsdString: return "xsd:string";
    case Tok::XsdBoolean: return "xsd:boolean";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Eq: return "'='";
    case Tok::EqEq: return "'=='";
    case Tok::Arrow: return "'->'";
    case Tok::Inverse: return "'^-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto push = [&](Tok k, std::string text, SourceLocation loc) { out.push_back({k, std::move(text), loc}); };

  while (i < src.size()) {
    char c = src[i];
    SourceLocation loc{line, col};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      if (word == "xsd" && j < src.size() && src[j] == ':') {
        std::size_t k = j + 1;
        while (k < src.size() && ident_char(src[k])) ++k;
        std::string tag(src.substr(j + 1, k - j - 1));
        if (tag == "string" || tag == "String") {
          push(Tok::XsdString, "xsd:string", loc);
        } else if (tag == "boolean" || tag == "Boolean") {
          push(Tok::XsdBoolean, "xsd:boolean", loc);
        } else {
          throw ParseError("unsupported datatype 'xsd:" + tag + "'", loc);
        }
        advance(k - i);
        continue;
      }
      push(Tok::Ident, word, loc);
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string value;
      advance(1);
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i + 1 >= src.size()) break;
          char e = src[i + 1];
          switch (e) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            default: throw ParseError(std::string("unknown escape '\\") + e + "'", SourceLocation{line, col});
          }
          advance(2);
          continue;
        }
        if (d == '\n') break;
        value += d;
        advance(1);
      }
      if (!closed) throw ParseError("unterminated string literal", loc);
      push(Tok::String, value, loc);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "->") { push(Tok::Arrow, "->", loc); advance(2); continue; }
    if (two == "^-") { push(Tok::Inverse, "^-", loc); advance(2); continue; }
    if (two == "==") { push(Tok::EqEq, "==", loc); advance(2); continue; }
    bool glyph = false;
    for (const auto& g : kGlyphs) {
      if (src.substr(i, g.utf8.size()) == g.utf8) {
        push(g.kind, std::string(g.text), loc);
        advance(g.utf8.size());
        glyph = true;
        break;
      }
    }
    if (glyph) continue;
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '!': k = Tok::Bang; break;
      case '=': k = Tok::Eq; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", loc);
    }
    push(k, std::string(1, c), loc);
    advance(1);
  }
  out.push_back({Tok::End, "", SourceLocation{line, col}});
  return out;
}

const Token& TokenStream::expect(Tok k, const char* what) {
  if (!at(k)) fail(std::string("expected ") + what + ", found " + describe(peek()));
  return next();
}

void TokenStream::expect_word(std::string_view w) {
  if (!at_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
  next();
}

std::string describe(const Token& t) {
  if (t.kind == Tok::Ident) return "'" + t.text + "'";
  if (t.kind == Tok::String) return "string literal";
  return token_name(t.kind);
}

}  // namespace lambdadl::detail
