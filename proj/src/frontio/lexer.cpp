#include "cgvv/frontio/lexer.hpp"

#include <algorithm>
#include <array>

#include "cgvv/text.hpp"

namespace cgvv::frontio {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<std::string_view, 5> kTwoCharPunct = {"->", "<-", "<=", ">=", "!="};
constexpr std::string_view kOneCharPunct = "[](){}:;,<>=*@+-/|&!.";

}  // namespace

std::vector<Token> tokenize(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto loc = [&] { return SourceLoc{file, line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  // Identifier run starting at `j`: inner '-' and '.' must be followed by an
  // identifier character, and '-' must not start an arrow.
  auto ident_end = [&](std::size_t j) {
    while (j < src.size()) {
      char c = src[j];
      if (is_ident_char(c)) {
        ++j;
      } else if ((c == '-' || c == '.') && j + 1 < src.size() && is_ident_char(src[j + 1])) {
        ++j;
      } else {
        break;
      }
    }
    return j;
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceLoc start = loc();
    if (c == '\'' || c == '"') {
      const char quote_char = c;
      std::string text;
      advance(1);
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == quote_char) {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\n') break;
        if (d == '\\' && i + 1 < src.size()) {
          char e = src[i + 1];
          text += (e == 'n') ? '\n' : e;
          advance(2);
          continue;
        }
        text += d;
        advance(1);
      }
      if (!closed) throw ParseError("unterminated-string", "unterminated string literal", start);
      out.push_back({TokenKind::String, std::move(text), start});
      continue;
    }
    if (is_digit(c)) {
      // A digit run that continues into letters is an identifier-like atom.
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j + 1 < src.size() && src[j] == '.' && is_digit(src[j + 1])) {
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          j = k;
          while (j < src.size() && is_digit(src[j])) ++j;
        }
      }
      if (j < src.size() && is_ident_start(src[j])) {
        std::size_t e = ident_end(j);
        out.push_back({TokenKind::Identifier, std::string(src.substr(i, e - i)), start});
        advance(e - i);
      } else {
        out.push_back({TokenKind::Number, std::string(src.substr(i, j - i)), start});
        advance(j - i);
      }
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t e = ident_end(i);
      out.push_back({TokenKind::Identifier, std::string(src.substr(i, e - i)), start});
      advance(e - i);
      continue;
    }
    if (c == '$' && i + 1 < src.size() && is_ident_start(src[i + 1])) {
      std::size_t e = ident_end(i + 1);
      out.push_back({TokenKind::Placeholder, std::string(src.substr(i, e - i)), start});
      advance(e - i);
      continue;
    }
    if (i + 1 < src.size()) {
      std::string_view two = src.substr(i, 2);
      if (std::find(kTwoCharPunct.begin(), kTwoCharPunct.end(), two) != kTwoCharPunct.end()) {
        out.push_back({TokenKind::Punct, std::string(two), start});
        advance(2);
        continue;
      }
    }
    if (kOneCharPunct.find(c) != std::string_view::npos) {
      out.push_back({TokenKind::Punct, std::string(1, c), start});
      advance(1);
      continue;
    }
    throw ParseError("unexpected-character", std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({TokenKind::End, "", loc()});
  return out;
}

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::String:
      return "string " + quote(tok.text);
    default:
      return "'" + tok.text + "'";
  }
}

// ---------------------------------------------------------------------------

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::End) tokens_.push_back({});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::is_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Punct && t.text == p;
}

bool TokenStream::is_keyword(std::string_view kw, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Identifier && t.text == kw;
}

bool TokenStream::is_name(std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Identifier || (placeholders_ && t.kind == TokenKind::Placeholder);
}

bool TokenStream::accept_punct(std::string_view p) {
  if (!is_punct(p)) return false;
  next();
  return true;
}

bool TokenStream::accept_keyword(std::string_view kw) {
  if (!is_keyword(kw)) return false;
  next();
  return true;
}

const Token& TokenStream::expect_punct(std::string_view p) {
  if (!is_punct(p))
    fail("syntax", "expected '" + std::string(p) + "' but found " + describe(peek()));
  return next();
}

const Token& TokenStream::expect_keyword(std::string_view kw) {
  if (!is_keyword(kw))
    fail("syntax", "expected '" + std::string(kw) + "' but found " + describe(peek()));
  return next();
}

std::string TokenStream::expect_name(std::string_view what) {
  if (peek().kind == TokenKind::Placeholder && !placeholders_)
    fail("unexpected-placeholder", "placeholders are only allowed inside generic templates");
  if (!is_name())
    fail("syntax", "expected " + std::string(what) + " but found " + describe(peek()));
  return next().text;
}

std::string TokenStream::expect_atom(std::string_view what) {
  const Token& t = peek();
  if (t.kind == TokenKind::String || t.kind == TokenKind::Number) return next().text;
  return expect_name(what);
}

void TokenStream::fail(std::string code, const std::string& message) const {
  fail_at(peek(), std::move(code), message);
}

void TokenStream::fail_at(const Token& tok, std::string code, const std::string& message) const {
  throw ParseError(std::move(code), message, tok.loc);
}

void TokenStream::skip_to(std::initializer_list<std::string_view> keywords) {
  int depth = 0;
  // Always make progress past the offending token.
  if (!at_end()) {
    if (is_punct("{")) ++depth;
    if (is_punct("}")) --depth;
    next();
  }
  while (!at_end()) {
    if (depth <= 0 && peek().kind == TokenKind::Identifier &&
        std::find(keywords.begin(), keywords.end(), peek().text) != keywords.end())
      return;
    if (is_punct("{")) ++depth;
    if (is_punct("}")) depth = std::max(0, depth - 1);
    next();
  }
}

}  // namespace cgvv::frontio
