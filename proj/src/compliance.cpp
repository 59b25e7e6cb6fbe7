#include "regula/compliance.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <string>

#include "regula/automaton.hpp"
#include "regula/errors.hpp"

namespace regula {

namespace {

std::vector<const ActionDef*> sorted_actions(const Protocol& p) {
  std::vector<const ActionDef*> out;
  out.reserve(p.actions.size());
  for (const auto& a : p.actions) out.push_back(&a);
  std::sort(out.begin(), out.end(),
            [](const ActionDef* a, const ActionDef* b) { return a->name < b->name; });
  return out;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
  constexpr std::size_t kCap = 1'000'000'000;
  if (b != 0 && a > kCap / b) return kCap;
  return a * b;
}

// Product of the state counts of every monitor the session can still
// move: the queried regulation, the active constraints, and both slots
// of each live commitment. An upper bound on the joint-state diameter,
// so searching this deep decides compatibility outright.
std::size_t default_bound(const MonitorAutomaton& regaut, const TraceSession& s) {
  std::size_t b = regaut.state_count();
  for (const auto& t : s.constraint_tracks())
    if (t.active) b = sat_mul(b, t.aut->state_count());
  for (const auto& [label, tr] : s.commitment_tracks()) {
    b = sat_mul(b, tr.antecedent->state_count());
    b = sat_mul(b, tr.consequent->state_count());
  }
  return b;
}

// Atoms whose truth can still steer some monitor: the queried
// regulation's alphabet, the constraints', and every template's slots
// (an atom already true before a label is created can never feed that
// instance's cursor, so its truth matters to the future).
std::set<Atom> relevant_atoms(const MonitorAutomaton& regaut, const TraceSession& s) {
  std::set<Atom> rel(regaut.alphabet().begin(), regaut.alphabet().end());
  for (const auto& t : s.constraint_tracks())
    rel.insert(t.aut->alphabet().begin(), t.aut->alphabet().end());
  for (const auto& c : s.protocol().commitments) {
    const auto& tt = s.template_track(c.label);
    rel.insert(tt.antecedent->alphabet().begin(), tt.antecedent->alphabet().end());
    rel.insert(tt.consequent->alphabet().begin(), tt.consequent->alphabet().end());
  }
  return rel;
}

// Everything that decides how the future can unfold, flattened to a
// comparable key. Event index and frame counter are deliberately left
// out: they only stamp records, they never gate a transition.
std::string joint_key(const TraceSession& s, MonitorAutomaton::State reg_cursor,
                      const std::set<Atom>& relevant) {
  std::string k = "r" + std::to_string(reg_cursor);
  for (const auto& t : s.constraint_tracks()) {
    if (!t.active) continue;
    k += "|c" + t.decl.id + ":" + std::to_string(t.cursor);
  }
  for (const auto& [label, tr] : s.commitment_tracks()) {
    const CommitmentInstance& inst = s.state().live.at(label);
    k += "|l" + label + ":" + std::to_string(static_cast<int>(inst.state)) + ":" +
         std::to_string(tr.ant_cursor) + ":" + std::to_string(tr.cons_cursor);
  }
  k += "|t";
  for (const auto& [atom, occ] : s.state().true_atoms) {
    (void)occ;
    if (relevant.count(atom)) k += atom.str() + ",";
  }
  return k;
}

// The end condition: the regulation and every active constraint read
// satisfied if the trace stopped here, and stopping adds no violation
// (a detached commitment left hanging would).
bool accepting(const TraceSession& s, const MonitorAutomaton& regaut,
               MonitorAutomaton::State reg_cursor) {
  if (!satisfied_now(regaut.verdict(reg_cursor))) return false;
  for (const auto& t : s.constraint_tracks())
    if (t.active && !satisfied_now(t.aut->verdict(t.cursor))) return false;
  return s.close().violations.size() == s.violations().size();
}

struct Node {
  TraceSession session;
  MonitorAutomaton::State cursor;
  std::vector<Event> path;
};

// Breadth-first over forked sessions. A branch dies as soon as a step
// records a violation or the regulation's cursor settles negative;
// revisiting a joint state is skipped, so the frontier drains even
// under a bound far beyond the reachable space.
CompatibilityResult search(const MonitorAutomaton& regaut, MonitorAutomaton::State start,
                           const TraceSession& session, std::size_t bound) {
  CompatibilityResult res;
  res.bound_used = bound;

  const std::set<Atom> relevant = relevant_atoms(regaut, session);
  const std::vector<const ActionDef*> acts = sorted_actions(session.protocol());

  if (accepting(session, regaut, start)) {
    res.compatible = true;
    return res;
  }

  std::deque<Node> queue;
  std::set<std::string> seen;
  seen.insert(joint_key(session, start, relevant));
  queue.push_back(Node{session, start, {}});

  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (cur.path.size() >= bound) continue;
    for (const ActionDef* a : acts) {
      Node next{cur.session, cur.cursor, cur.path};
      const std::size_t before = next.session.violations().size();
      StepReport rep = next.session.step({a->actor, a->name});
      for (const auto& round : rep.rounds)
        next.cursor = regaut.advance(next.cursor, regaut.mask_of(round));
      if (next.session.violations().size() != before) continue;
      if (regaut.verdict(next.cursor) == Verdict::PermViol) continue;
      next.path.push_back({a->actor, a->name});
      if (accepting(next.session, regaut, next.cursor)) {
        res.compatible = true;
        res.witness = std::move(next.path);
        return res;
      }
      if (seen.insert(joint_key(next.session, next.cursor, relevant)).second)
        queue.push_back(std::move(next));
    }
  }
  return res;
}

void require_bound(const std::optional<std::size_t>& bound) {
  if (bound && *bound == 0) throw InvalidBound("search bound must be at least 1");
}

}  // namespace

CompatibilityResult compatible_check(const Regulation& regulation, const TraceSession& session,
                                     std::optional<std::size_t> bound) {
  require_bound(bound);
  for (const Atom& a : atoms_of(regulation))
    if (!session.protocol().resolvable(a))
      throw UnresolvedAtom("atom '" + a.str() + "' does not resolve in the protocol");
  MonitorAutomaton aut = compile_monitor(regulation);
  const std::size_t b = bound ? *bound : default_bound(aut, session);
  return search(aut, aut.initial(), session, b);
}

CompatibilityResult compatible_check_commitment(const std::string& label,
                                                const TraceSession& session,
                                                std::optional<std::size_t> bound) {
  require_bound(bound);
  if (!session.protocol().find_commitment(label))
    throw UnknownCommitmentLabel("no commitment labelled '" + label + "'");
  auto it = session.commitment_tracks().find(label);
  if (it != session.commitment_tracks().end()) {
    const auto& tr = it->second;
    const std::size_t b = bound ? *bound : default_bound(*tr.consequent, session);
    return search(*tr.consequent, tr.cons_cursor, session, b);
  }
  for (const auto& inst : session.state().archive)
    if (inst.label == label)
      throw TerminalCommitment("commitment '" + label + "' has settled; nothing is left to satisfy");
  const auto& tt = session.template_track(label);
  const std::size_t b = bound ? *bound : default_bound(*tt.consequent, session);
  return search(*tt.consequent, tt.consequent->initial(), session, b);
}

void enumerate_oracle(const Protocol& protocol, std::size_t max_len,
                      const std::function<void(const OracleRow&)>& sink) {
  std::size_t limit = 10'000'000;
  if (const char* env = std::getenv("REGULA_MAX_ORACLE")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') limit = static_cast<std::size_t>(parsed);
  }
  const std::size_t n = protocol.actions.size();
  std::size_t total = 1, layer = 1;
  for (std::size_t l = 1; l <= max_len; ++l) {
    layer = sat_mul(layer, n);
    total += layer;
    if (total > limit)
      throw BoundTooLarge("enumerating up to length " + std::to_string(max_len) + " means over " +
                          std::to_string(limit) + " sequences; raise REGULA_MAX_ORACLE to allow it");
  }

  const std::vector<const ActionDef*> acts = sorted_actions(protocol);
  OracleRow row;
  FirstOccurrence first;
  const auto emit = [&] {
    row.constraint_truth.clear();
    for (const auto& c : protocol.constraints)
      row.constraint_truth.emplace_back(c.id, eval_on_trace(c.expr, first));
    sink(row);
  };
  const std::function<void(std::size_t)> go = [&](std::size_t len) {
    emit();
    if (len == max_len) return;
    for (const ActionDef* a : acts) {
      std::vector<const Atom*> added;
      for (const Atom& e : a->effects)
        if (first.emplace(e, len).second) added.push_back(&e);
      row.trace.push_back({a->actor, a->name});
      go(len + 1);
      row.trace.pop_back();
      for (const Atom* e : added) first.erase(*e);
    }
  };
  go(0);
}

}  // namespace regula
