#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "regula/automaton.hpp"
#include "regula/model.hpp"

namespace regula {

struct ViolationRecord {
  std::string id;           // constraint id or commitment label
  std::size_t event_index;  // trace length for close-time records
  Severity severity;
  std::string culprit;      // agent, debtor role, or "end-of-trace"
};

struct LifecycleNote {
  std::string label;
  LifecycleStatus what;
  std::size_t event_index;
};

struct StepReport {
  std::size_t event_index = 0;
  Event event;
  std::vector<std::vector<Atom>> rounds;  // became-true per micro-frame
  std::vector<Atom> became_true;          // the same, flattened
  std::vector<std::pair<std::string, Verdict>> verdict_changes;
  std::vector<LifecycleNote> lifecycle;
  std::vector<ViolationRecord> violations;
};

struct ConstraintOutcome {
  std::string id;
  Verdict verdict;
  bool active;
  Severity severity;
};

struct FinalReport {
  std::size_t events = 0;
  std::vector<ConstraintOutcome> constraints;
  std::vector<CommitmentInstance> commitments;  // settled, creation order
  std::vector<ViolationRecord> violations;
};

// A running monitored enactment. Events advance the social state and
// every active cursor; commitments detach/discharge/violate as their
// cursors settle; lifecycle consequences of an event land in later
// micro-frames of the same event index, so same-event causality is
// ordered and never tied. Copyable: a copy is an independent fork.
class TraceSession {
 public:
  explicit TraceSession(Protocol protocol);  // throws ValidationError

  // Applies one event. Never blocked on regulative grounds; throws
  // UnknownAction / RoleMismatch on constitutive errors, leaving the
  // session unchanged.
  StepReport step(const Event& ev);

  // Report as if the trace ended now: close-time constraint violations,
  // commitment settlement. Pure; the session can keep stepping.
  FinalReport close() const;

  // Meta-actions. Activation restarts the cursor over the suffix from
  // here on; retirement freezes it. Idempotent. Throws UnknownConstraint.
  void set_constraint_active(const std::string& id, bool active);
  // Introduces a new constraint at runtime, active, anchored here.
  // Throws ValidationError on duplicate id or unresolved atoms.
  void add_constraint(ConstraintDecl decl);

  const Protocol& protocol() const { return protocol_; }
  const SocialState& state() const { return state_; }
  std::size_t events() const { return events_; }
  const std::vector<Event>& log() const { return log_; }
  const std::vector<ViolationRecord>& violations() const { return violations_; }

  Verdict constraint_verdict(const std::string& id) const;  // UnknownConstraint
  bool constraint_active(const std::string& id) const;      // UnknownConstraint

  struct ConstraintTrack {
    ConstraintDecl decl;
    std::shared_ptr<const MonitorAutomaton> aut;
    MonitorAutomaton::State cursor;
    bool active = true;
    bool violated = false;  // already reported this activation
  };
  struct CommitmentTrack {
    std::shared_ptr<const MonitorAutomaton> antecedent;
    std::shared_ptr<const MonitorAutomaton> consequent;
    MonitorAutomaton::State ant_cursor;
    MonitorAutomaton::State cons_cursor;
  };
  const std::vector<ConstraintTrack>& constraint_tracks() const { return tracks_; }
  const std::map<std::string, CommitmentTrack>& commitment_tracks() const {
    return ctracks_;
  }
  // Compiled automata for a declared template's slots (shared across
  // instances of the label).
  const CommitmentTrack& template_track(const std::string& label) const;

 private:
  Protocol protocol_;
  SocialState state_;
  std::vector<ConstraintTrack> tracks_;
  std::map<std::string, CommitmentTrack> ctracks_;  // live labels only
  std::map<std::string, CommitmentTrack> templates_;  // cursor fields unused
  std::vector<Event> log_;
  std::vector<ViolationRecord> violations_;
  std::size_t events_ = 0;

  ConstraintTrack* find_track(const std::string& id);
  const ConstraintTrack* find_track(const std::string& id) const;
};

}  // namespace regula
