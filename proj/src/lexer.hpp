// Tokenizer shared by the FOF-subset and construct-format parsers.

#ifndef GDDP_LEXER_HPP_
#define GDDP_LEXER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gddp/problem.hpp"

namespace gddp::detail {

enum class Tok {
  ident, quoted, lparen, rparen, lbracket, rbracket, comma, dot, colon,
  bang, neq, amp, implies, equals, semicolon, end
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string_view describe(Tok t);

// Splits `text` into tokens; `comment` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text, char comment, std::size_t first_line = 1);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(Tok t) const { return peek().kind == t; }
  bool accept(Tok t);
  const Token& expect(Tok t, std::string_view what);

  [[noreturn]] void fail(const Token& at, const std::string& message) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace gddp::detail

#endif  // GDDP_LEXER_HPP_
