#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regula/model.hpp"
#include "regula/regulation.hpp"
#include "regula/session.hpp"

namespace regula {

// Outcome of a bounded search for a jointly satisfying continuation.
// The witness, when present, is the shortest such extension, ties
// broken by lexicographic action-name order; it may be empty when the
// session already satisfies everything.
struct CompatibilityResult {
  bool compatible = false;
  std::vector<Event> witness;
  std::size_t bound_used = 0;  // the depth cap the search ran under
};

// Searches for an extension of the session's trace, at most `bound`
// events long, after which the regulation and every active constraint
// read satisfied and the extension replays without one new violation,
// end-of-trace settlement included. The regulation's cursor starts
// fresh at the current end of the trace; witness events use each
// action's declared actor. Default bound: product of the state counts
// of every participating monitor, which the dedup makes exact (the
// search stops early once no unseen joint state remains).
CompatibilityResult compatible_check(const Regulation& regulation, const TraceSession& session,
                                     std::optional<std::size_t> bound = std::nullopt);

// The same search asked of a declared commitment: can its consequent
// still be brought to satisfaction without violating the active
// constraints. A live instance keeps its anchored consequent cursor; a
// declared but never-instantiated label is checked as if created now.
// Throws UnknownCommitmentLabel, or TerminalCommitment when every
// instance of the label has settled.
CompatibilityResult compatible_check_commitment(const std::string& label,
                                                const TraceSession& session,
                                                std::optional<std::size_t> bound = std::nullopt);

// One row of brute-force ground truth: a trace over the protocol's
// actions and, per declared constraint, whether its expression holds
// on that whole trace.
struct OracleRow {
  std::vector<Event> trace;
  std::vector<std::pair<std::string, bool>> constraint_truth;
};

// Enumerates every action sequence of length <= max_len (the empty one
// included, lexicographic order) and reports each constraint's
// finite-trace truth computed directly from first occurrences of
// action effects, with no monitoring machinery involved. The sequence
// count is capped by REGULA_MAX_ORACLE (default 10^7); exceeding it
// throws BoundTooLarge.
void enumerate_oracle(const Protocol& protocol, std::size_t max_len,
                      const std::function<void(const OracleRow&)>& sink);

}  // namespace regula
