#include "lexer.hpp"

#include <array>
#include <cctype>

#include "regula/errors.hpp"

namespace regula::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

}  // namespace

Lexer::Lexer(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '(') {
      toks_.push_back({Token::Kind::LParen, "(", i++});
    } else if (c == ')') {
      toks_.push_back({Token::Kind::RParen, ")", i++});
    } else if (c == ',') {
      toks_.push_back({Token::Kind::Comma, ",", i++});
    } else if (c == ':') {
      toks_.push_back({Token::Kind::Colon, ":", i++});
    } else if (ident_start(c)) {
      std::size_t start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      toks_.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), start});
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  toks_.push_back({Token::Kind::End, "", text.size()});
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

bool reserved_word(std::string_view s) {
  static constexpr std::array<std::string_view, 13> words = {
      "top",      "achieve",  "before",     "response", "coexist",  "and", "or",
      "created",  "detached", "discharged", "released", "cancelled", "violated"};
  for (auto w : words)
    if (w == s) return true;
  return false;
}

std::string expect_name(Lexer& lx, std::string_view what) {
  Token t = lx.next();
  if (t.kind != Token::Kind::Ident)
    throw SyntaxError("expected " + std::string(what), t.pos);
  if (reserved_word(t.text))
    throw SyntaxError("'" + t.text + "' is a reserved word and cannot name a " +
                          std::string(what),
                      t.pos);
  if (!valid_identifier(t.text))
    throw SyntaxError("invalid " + std::string(what) + " '" + t.text + "'", t.pos);
  return t.text;
}

Atom parse_atom_stream(Lexer& lx) {
  Token t = lx.next();
  if (t.kind != Token::Kind::Ident)
    throw SyntaxError("expected an atom", t.pos);
  if (auto status = lifecycle_status_from(t.text)) {
    if (lx.peek().kind != Token::Kind::LParen)
      throw SyntaxError("status keyword '" + t.text +
                            "' must be written as " + t.text + "(<label>)",
                        t.pos);
    lx.next();
    std::string label = expect_name(lx, "commitment label");
    Token close = lx.next();
    if (close.kind != Token::Kind::RParen)
      throw SyntaxError("expected ')' after commitment label", close.pos);
    return Atom::commitment(*status, std::move(label));
  }
  if (reserved_word(t.text))
    throw SyntaxError("'" + t.text + "' is a reserved word and cannot be an atom",
                      t.pos);
  if (!valid_identifier(t.text))
    throw SyntaxError("invalid atom '" + t.text + "'", t.pos);
  return Atom::fact(t.text);
}

namespace {

Regulation parse_term(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Token::Kind::LParen) {
    lx.next();
    Regulation inner = parse_regulation_stream(lx);
    Token close = lx.next();
    if (close.kind != Token::Kind::RParen)
      throw SyntaxError("expected ')'", close.pos);
    return inner;
  }
  if (t.kind != Token::Kind::Ident)
    throw SyntaxError("expected 'top', 'achieve', an atom or '('", t.pos);
  if (t.text == "top") {
    lx.next();
    return Regulation::top();
  }
  if (t.text == "achieve") {
    lx.next();
    return Regulation::achieve(parse_atom_stream(lx));
  }
  Atom left = parse_atom_stream(lx);
  Token op = lx.next();
  if (op.kind != Token::Kind::Ident)
    throw SyntaxError("expected a temporal operator after atom '" + left.str() + "'",
                      op.pos);
  if (op.text == "before") return Regulation::before(std::move(left), parse_atom_stream(lx));
  if (op.text == "response") return Regulation::response(std::move(left), parse_atom_stream(lx));
  if (op.text == "coexist") return Regulation::coexist(std::move(left), parse_atom_stream(lx));
  if (op.text == "and" || op.text == "or")
    throw SyntaxError("atom '" + left.str() +
                          "' is not a regulation by itself; expected 'before', "
                          "'response' or 'coexist'",
                      op.pos);
  throw UnknownOperator(op.text, op.pos);
}

Regulation parse_conj(Lexer& lx) {
  Regulation left = parse_term(lx);
  while (lx.peek().kind == Token::Kind::Ident && lx.peek().text == "and") {
    lx.next();
    left = Regulation::conj(std::move(left), parse_term(lx));
  }
  return left;
}

}  // namespace

Regulation parse_regulation_stream(Lexer& lx) {
  Regulation left = parse_conj(lx);
  while (lx.peek().kind == Token::Kind::Ident && lx.peek().text == "or") {
    lx.next();
    left = Regulation::disj(std::move(left), parse_conj(lx));
  }
  return left;
}

}  // namespace regula::detail
