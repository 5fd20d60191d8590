#pragma once

// Tokenizer shared by the scalar and polynomial expression parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "qma/error.hpp"

namespace qma::detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  bool accept(Tok k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what, cur_.pos);
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    cur_ = Token{};
    cur_.pos = pos_;
    if (pos_ >= src_.size()) {
      cur_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      cur_.kind = Tok::Number;
      cur_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '\''))
        ++pos_;
      cur_.kind = Tok::Ident;
      cur_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    switch (c) {
      case '+': cur_.kind = Tok::Plus; break;
      case '-': cur_.kind = Tok::Minus; break;
      case '*': cur_.kind = Tok::Star; break;
      case '/': cur_.kind = Tok::Slash; break;
      case '^': cur_.kind = Tok::Caret; break;
      case '(': cur_.kind = Tok::LParen; break;
      case ')': cur_.kind = Tok::RParen; break;
      default:
        throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'",
                    cur_.pos);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_;
};

/// Parses an optionally signed integer exponent after '^'.
inline long long parse_exponent(Lexer& lex, bool allow_negative) {
  bool neg = false;
  if (lex.peek().kind == Tok::Minus) {
    if (!allow_negative) lex.fail("negative exponent not allowed here");
    lex.take();
    neg = true;
  } else {
    lex.accept(Tok::Plus);
  }
  if (lex.peek().kind != Tok::Number) lex.fail("expected integer exponent");
  Token t = lex.take();
  if (t.text.size() > 9) throw Error(ErrorCode::SyntaxError, "exponent too large", t.pos);
  long long v = std::stoll(t.text);
  return neg ? -v : v;
}

}  // namespace qma::detail
