#pragma once

// Shared token stream for the regulation language and the protocol file
// grammar. Internal to the library.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "regula/atom.hpp"
#include "regula/regulation.hpp"

namespace regula::detail {

struct Token {
  enum class Kind { Ident, LParen, RParen, Comma, Colon, End };
  Kind kind;
  std::string text;
  std::size_t pos;  // 0-based offset into the lexed string
};

class Lexer {
 public:
  // Lexes the whole input up front. Throws SyntaxError on a character
  // outside the grammar.
  explicit Lexer(std::string_view text);

  const Token& peek() const { return toks_[i_]; }
  Token next() {
    Token t = toks_[i_];
    if (t.kind != Token::Kind::End) ++i_;
    return t;
  }
  bool at_end() const { return toks_[i_].kind == Token::Kind::End; }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// [a-z][a-z0-9_-]*
bool valid_identifier(std::string_view s);

// Keywords of the regulation language; unusable as fact names or labels.
bool reserved_word(std::string_view s);

// Parses a regulation starting at the cursor; stops at the first token
// that cannot extend the expression (Comma, unbalanced RParen, End).
Regulation parse_regulation_stream(Lexer& lx);

// Parses "name" or "status(label)" starting at the cursor.
Atom parse_atom_stream(Lexer& lx);

// Expects an identifier token that passes valid_identifier and is not
// reserved; `what` names the expected thing in the error message.
std::string expect_name(Lexer& lx, std::string_view what);

}  // namespace regula::detail
