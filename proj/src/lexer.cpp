#include "lexer.hpp"

#include <cctype>

namespace gddp {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::string token)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string() : " near '" + token + "'")),
      message_(message),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace detail {

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::quoted: return "quoted name";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::colon: return "':'";
    case Tok::bang: return "'!'";
    case Tok::neq: return "'!='";
    case Tok::amp: return "'&'";
    case Tok::implies: return "'=>'";
    case Tok::equals: return "'='";
    case Tok::semicolon: return "';'";
    case Tok::end: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text, char comment, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line, col = 1, i = 0;
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == comment) {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 1;
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_'))
        ++len;
      push(Tok::ident, len);
      continue;
    }
    if (c == '\'') {
      std::size_t len = 1;
      while (i + len < text.size() && text[i + len] != '\'' && text[i + len] != '\n') ++len;
      if (i + len >= text.size() || text[i + len] != '\'')
        throw ParseError("unterminated quoted name", line, col, std::string(text.substr(i, len)));
      Token t{Tok::quoted, std::string(text.substr(i + 1, len - 1)), line, col};
      out.push_back(std::move(t));
      i += len + 1;
      col += len + 1;
      continue;
    }
    const char d = i + 1 < text.size() ? text[i + 1] : '\0';
    switch (c) {
      case '(': push(Tok::lparen, 1); continue;
      case ')': push(Tok::rparen, 1); continue;
      case '[': push(Tok::lbracket, 1); continue;
      case ']': push(Tok::rbracket, 1); continue;
      case ',': push(Tok::comma, 1); continue;
      case '.': push(Tok::dot, 1); continue;
      case ':': push(Tok::colon, 1); continue;
      case ';': push(Tok::semicolon, 1); continue;
      case '&': push(Tok::amp, 1); continue;
      case '!':
        if (d == '=') push(Tok::neq, 2);
        else push(Tok::bang, 1);
        continue;
      case '=':
        if (d == '>') push(Tok::implies, 2);
        else push(Tok::equals, 1);
        continue;
      case '-':
        if (d == '>') {
          push(Tok::implies, 2);
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError("unexpected character", line, col, std::string(1, c));
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  const std::size_t k = pos_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(Tok t) {
  if (!at(t)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Tok t, std::string_view what) {
  if (!at(t)) {
    fail(peek(), "expected " + std::string(what) + " (" + std::string(describe(t)) + "), found " +
                     std::string(describe(peek().kind)));
  }
  return next();
}

void TokenStream::fail(const Token& at, const std::string& message) const {
  throw ParseError(message, at.line, at.column, at.text);
}

}  // namespace detail
}  // namespace gddp
