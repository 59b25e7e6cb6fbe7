#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "regula/model.hpp"

namespace regula {

// One parsed trace line. Meta lines switch a constraint's activation
// and consume no event index.
struct TraceItem {
  enum class Kind { Event, Activate, Retire };
  Kind kind = Kind::Event;
  Event event;              // Kind::Event only
  std::string constraint;   // meta kinds only
  std::size_t line = 0;     // 1-based source line
};

// Parses the line-oriented protocol grammar:
//   protocol <name>
//   roles a, b
//   atoms x, y                       (optional pre-declaration)
//   action <name> by <role> means <atom>, ... [creates L | releases L | cancels L] ...
//   commitment <label> : C(<debtor>, <creditor>, <antecedent>, <consequent>)
//   constraint <id> [severity low|medium|high] : <regulation>
// `#` starts a comment; blank lines are ignored. The result validates;
// any syntax or closed-world problem is thrown as a FileParseError
// carrying the offending 1-based line.
Protocol parse_protocol_text(const std::string& text);

// Parses a trace file: `<agent> <action>` per event line, meta lines
// `!activate <constraint-id>` / `!retire <constraint-id>`, `#`
// comments. Event indices follow file order starting at 0.
std::vector<TraceItem> parse_trace_text(const std::string& text);

// File-reading fronts; an unreadable path throws FileParseError with
// line 0.
Protocol load_protocol_file(const std::string& path);
std::vector<TraceItem> load_trace_file(const std::string& path);

}  // namespace regula
