#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cgvv/error.hpp"

namespace cgvv::frontio {

enum class TokenKind { Identifier, Placeholder, String, Number, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // unescaped contents for strings
  SourceLoc loc;
};

/// The tokenizer shared by every grammar. `#` starts a comment running to the
/// end of the line. Multi-character punctuation: `->` `<-` `<=` `>=` `!=`.
/// Throws ParseError on stray characters or unterminated strings.
std::vector<Token> tokenize(std::string_view source, const std::string& file);

/// Cursor over a token vector with the LL(1) helpers the parsers use.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_keyword(std::string_view kw, std::size_t ahead = 0) const;
  bool is_name(std::size_t ahead = 0) const;
  bool accept_punct(std::string_view p);
  bool accept_keyword(std::string_view kw);

  const Token& expect_punct(std::string_view p);
  const Token& expect_keyword(std::string_view kw);
  /// Identifier (or placeholder, when enabled).
  std::string expect_name(std::string_view what);
  /// Identifier, placeholder, number or string; used for individual names
  /// and literal values.
  std::string expect_atom(std::string_view what);

  void allow_placeholders(bool on) { placeholders_ = on; }
  bool placeholders_allowed() const { return placeholders_; }

  [[noreturn]] void fail(std::string code, const std::string& message) const;
  [[noreturn]] void fail_at(const Token& tok, std::string code, const std::string& message) const;

  /// Error recovery: skip to the next brace-depth-0 token that is one of the
  /// given keywords.
  void skip_to(std::initializer_list<std::string_view> keywords);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool placeholders_ = false;
};

std::string describe(const Token& tok);

}  // namespace cgvv::frontio
