#include "regula/protocol_text.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "lexer.hpp"
#include "regula/errors.hpp"

namespace regula {

namespace {

using detail::Lexer;
using detail::Token;

// Source lines split with comments stripped. `#` cannot occur inside
// any token, so it always starts a comment.
struct Line {
  std::size_t number;  // 1-based
  std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
      raw.pop_back();
    std::size_t start = raw.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    out.push_back({number, raw.substr(start)});
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw FileParseError(message, line);
}

void expect_end(Lexer& lx, std::size_t line) {
  if (!lx.at_end()) fail(line, "unexpected '" + lx.peek().text + "' after the declaration");
}

void expect(Lexer& lx, Token::Kind kind, const char* what, std::size_t line) {
  if (lx.peek().kind != kind) fail(line, std::string("expected ") + what);
  lx.next();
}

std::string name_or_fail(Lexer& lx, std::string_view what, std::size_t line) {
  try {
    return detail::expect_name(lx, what);
  } catch (const SyntaxError& e) {
    fail(line, e.what());
  }
}

// roles a, b   /   atoms x, y
std::vector<std::string> name_list(Lexer& lx, std::string_view what, std::size_t line) {
  std::vector<std::string> out;
  out.push_back(name_or_fail(lx, what, line));
  while (lx.peek().kind == Token::Kind::Comma) {
    lx.next();
    out.push_back(name_or_fail(lx, what, line));
  }
  expect_end(lx, line);
  return out;
}

ActionDef parse_action(Lexer& lx, std::size_t line) {
  ActionDef a;
  a.name = name_or_fail(lx, "action name", line);
  if (lx.peek().text != "by") fail(line, "expected 'by' after the action name");
  lx.next();
  a.actor = name_or_fail(lx, "role", line);
  if (lx.peek().text != "means") fail(line, "expected 'means' after the actor role");
  lx.next();
  try {
    a.effects.push_back(detail::parse_atom_stream(lx));
    while (lx.peek().kind == Token::Kind::Comma) {
      lx.next();
      a.effects.push_back(detail::parse_atom_stream(lx));
    }
  } catch (const SyntaxError& e) {
    fail(line, e.what());
  }
  while (lx.peek().kind == Token::Kind::Ident) {
    const std::string word = lx.peek().text;
    CommitmentOp::Kind kind;
    if (word == "creates")
      kind = CommitmentOp::Kind::Create;
    else if (word == "releases")
      kind = CommitmentOp::Kind::Release;
    else if (word == "cancels")
      kind = CommitmentOp::Kind::Cancel;
    else
      fail(line, "expected 'creates', 'releases' or 'cancels', got '" + word + "'");
    lx.next();
    a.ops.push_back({kind, name_or_fail(lx, "commitment label", line)});
  }
  expect_end(lx, line);
  return a;
}

CommitmentTemplate parse_commitment(Lexer& lx, std::size_t line) {
  CommitmentTemplate c;
  c.label = name_or_fail(lx, "commitment label", line);
  expect(lx, Token::Kind::Colon, "':' after the label", line);
  if (lx.peek().kind != Token::Kind::Ident || lx.peek().text != "C")
    fail(line, "expected C(debtor, creditor, antecedent, consequent)");
  lx.next();
  expect(lx, Token::Kind::LParen, "'(' after C", line);
  c.debtor = name_or_fail(lx, "debtor role", line);
  expect(lx, Token::Kind::Comma, "',' after the debtor role", line);
  c.creditor = name_or_fail(lx, "creditor role", line);
  expect(lx, Token::Kind::Comma, "',' after the creditor role", line);
  try {
    c.antecedent = detail::parse_regulation_stream(lx);
    expect(lx, Token::Kind::Comma, "',' after the antecedent", line);
    c.consequent = detail::parse_regulation_stream(lx);
  } catch (const SyntaxError& e) {
    fail(line, e.what());
  }
  expect(lx, Token::Kind::RParen, "')' closing the commitment", line);
  expect_end(lx, line);
  return c;
}

ConstraintDecl parse_constraint(Lexer& lx, std::size_t line) {
  ConstraintDecl c;
  c.id = name_or_fail(lx, "constraint id", line);
  if (lx.peek().kind == Token::Kind::Ident && lx.peek().text == "severity") {
    lx.next();
    if (lx.peek().kind != Token::Kind::Ident) fail(line, "expected a severity level");
    if (auto sev = severity_from(lx.peek().text))
      c.severity = *sev;
    else
      fail(line, "unknown severity '" + lx.peek().text + "'; use low, medium or high");
    lx.next();
  }
  expect(lx, Token::Kind::Colon, "':' before the regulation", line);
  try {
    c.expr = detail::parse_regulation_stream(lx);
  } catch (const SyntaxError& e) {
    fail(line, e.what());
  }
  expect_end(lx, line);
  return c;
}

}  // namespace

Protocol parse_protocol_text(const std::string& text) {
  const std::vector<Line> lines = split_lines(text);
  if (lines.empty()) fail(1, "empty protocol file; expected a 'protocol <name>' header");

  Protocol p;
  // Where each named declaration lives, for mapping validation issues
  // back to their source lines.
  std::map<std::pair<std::string, std::string>, std::size_t> decl_line;

  bool saw_header = false;
  for (const Line& ln : lines) {
    Lexer lx = [&] {
      try {
        return Lexer(ln.text);
      } catch (const SyntaxError& e) {
        fail(ln.number, e.what());
      }
    }();
    if (lx.peek().kind != Token::Kind::Ident)
      fail(ln.number, "expected a declaration keyword");
    const std::string head = lx.next().text;

    if (!saw_header) {
      if (head != "protocol")
        fail(ln.number, "expected the 'protocol <name>' header first");
      p.name = name_or_fail(lx, "protocol name", ln.number);
      expect_end(lx, ln.number);
      saw_header = true;
      continue;
    }

    if (head == "protocol") {
      fail(ln.number, "duplicate 'protocol' header");
    } else if (head == "roles") {
      for (auto& r : name_list(lx, "role", ln.number)) p.roles.push_back(std::move(r));
    } else if (head == "atoms") {
      for (auto& a : name_list(lx, "atom", ln.number))
        p.declared_atoms.push_back(Atom::fact(std::move(a)));
    } else if (head == "action") {
      ActionDef a = parse_action(lx, ln.number);
      decl_line[{"action", a.name}] = ln.number;
      p.actions.push_back(std::move(a));
    } else if (head == "commitment") {
      CommitmentTemplate c = parse_commitment(lx, ln.number);
      decl_line[{"commitment", c.label}] = ln.number;
      p.commitments.push_back(std::move(c));
    } else if (head == "constraint") {
      ConstraintDecl c = parse_constraint(lx, ln.number);
      decl_line[{"constraint", c.id}] = ln.number;
      p.constraints.push_back(std::move(c));
    } else {
      fail(ln.number, "unknown declaration '" + head + "'");
    }
  }
  if (!saw_header) fail(1, "expected a 'protocol <name>' header");

  const std::vector<ValidationIssue> problems = p.issues();
  if (!problems.empty()) {
    const ValidationIssue& first = problems.front();
    auto it = decl_line.find({first.subject_kind, first.subject_name});
    fail(it != decl_line.end() ? it->second : lines.front().number, first.message);
  }
  return p;
}

std::vector<TraceItem> parse_trace_text(const std::string& text) {
  std::vector<TraceItem> out;
  for (const Line& ln : split_lines(text)) {
    TraceItem item;
    item.line = ln.number;
    std::istringstream words(ln.text);
    std::string first, second, extra;
    words >> first >> second;
    if (words >> extra) fail(ln.number, "unexpected '" + extra + "' after the second word");
    if (first == "!activate" || first == "!retire") {
      item.kind = first == "!activate" ? TraceItem::Kind::Activate : TraceItem::Kind::Retire;
      if (second.empty() || !detail::valid_identifier(second))
        fail(ln.number, "expected a constraint id after '" + first + "'");
      item.constraint = second;
    } else {
      if (!detail::valid_identifier(first))
        fail(ln.number, "'" + first + "' is not a valid agent name");
      if (second.empty() || !detail::valid_identifier(second))
        fail(ln.number, "expected '<agent> <action>'");
      item.event = {first, second};
    }
    out.push_back(std::move(item));
  }
  return out;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileParseError("cannot read '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

Protocol load_protocol_file(const std::string& path) { return parse_protocol_text(slurp(path)); }

std::vector<TraceItem> load_trace_file(const std::string& path) {
  return parse_trace_text(slurp(path));
}

}  // namespace regula
