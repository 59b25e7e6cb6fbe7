#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regula/atom.hpp"
#include "regula/regulation.hpp"

namespace regula {

enum class CommitmentState { Conditional, Detached, Discharged, Violated, Released, Cancelled };

std::string_view to_string(CommitmentState s);
bool is_terminal(CommitmentState s);

enum class CommitmentMove { Detach, Discharge, Violate, Release, Cancel };

std::string_view to_string(CommitmentMove m);
// Status atom asserted when the move happens.
LifecycleStatus status_of(CommitmentMove m);

// A live or settled commitment. Cursors over antecedent/consequent are
// anchored at (created_at, created_frame): occurrences before creation
// are invisible to this instance.
struct CommitmentInstance {
  std::string label;
  std::string debtor;    // role id
  std::string creditor;  // role id
  Regulation antecedent;
  Regulation consequent;
  CommitmentState state = CommitmentState::Conditional;
  std::size_t created_at = 0;     // event index
  std::size_t created_frame = 0;  // micro-frame within the session
  bool expired = false;           // Released at close because the antecedent never held

  // "Expired" for expired instances, the plain state name otherwise.
  std::string_view display_state() const;
};

// Pure lifecycle step. Throws IllegalTransition from terminal states and
// on moves the state machine does not admit (detach is Conditional-only;
// discharge/violate are Detached-only).
CommitmentInstance transition(const CommitmentInstance& c, CommitmentMove move,
                              std::size_t index);

struct CommitmentOp {
  enum class Kind { Create, Release, Cancel };
  Kind kind;
  std::string label;
};

struct ActionDef {
  std::string name;
  std::string actor;  // role id
  std::vector<Atom> effects;
  std::vector<CommitmentOp> ops;
};

struct CommitmentTemplate {
  std::string label;
  std::string debtor;
  std::string creditor;
  Regulation antecedent;
  Regulation consequent;
};

struct ValidationIssue {
  std::string message;
  std::string subject_kind;  // "protocol" | "role" | "action" | "commitment" | "constraint"
  std::string subject_name;
};

struct Protocol {
  std::string name;
  std::vector<std::string> roles;       // declaration order
  std::vector<Atom> declared_atoms;     // explicit `atoms` lines
  std::vector<ActionDef> actions;
  std::vector<CommitmentTemplate> commitments;
  std::vector<ConstraintDecl> constraints;

  const ActionDef* find_action(std::string_view name) const;
  const CommitmentTemplate* find_commitment(std::string_view label) const;
  const ConstraintDecl* find_constraint(std::string_view id) const;
  bool has_role(std::string_view role) const;

  // Declared atoms plus every action effect.
  std::set<Atom> fact_universe() const;
  // True when the atom can ever hold: a fact in the universe, or a
  // status observation of a declared label.
  bool resolvable(const Atom& a) const;

  // Closed-world checks; empty means the protocol validates.
  std::vector<ValidationIssue> issues() const;
  void validate() const;  // throws ValidationError with the first issue
};

struct Event {
  std::string agent;
  std::string action;
};

struct Occurrence {
  std::size_t event_index;
  std::size_t frame;
};

// Monotone record of everything that has become true, plus live and
// settled commitment instances. `frames` counts micro-frames: each event
// occupies one frame for its direct effects and one more per cascade
// round of lifecycle consequences.
struct SocialState {
  std::map<Atom, Occurrence> true_atoms;
  std::map<std::string, CommitmentInstance> live;
  std::vector<CommitmentInstance> archive;  // settlement order
  std::size_t frames = 0;

  bool holds(const Atom& a) const { return true_atoms.count(a) != 0; }
  // Returns true when the atom was not already true.
  bool assert_atom(const Atom& a, std::size_t index, std::size_t frame);
  // First-occurrence map (keyed by frame) restricted to occurrences at
  // or after `anchor_frame`; the evaluation view of a commitment
  // created at that frame.
  FirstOccurrence occurrences_since(std::size_t anchor_frame) const;
  // Live instances ordered by creation (frame, then label).
  std::vector<const CommitmentInstance*> live_in_creation_order() const;
};

// One applied commitment op, as reported by apply_action.
struct AppliedOp {
  std::string label;
  LifecycleStatus what;          // Created / Released / Cancelled
  bool cancelled_detached = false;  // cancel hit a Detached instance
  std::string debtor;            // for violation attribution
};

struct EventEffects {
  std::vector<Atom> became_true;  // all atoms newly asserted in this frame
  std::vector<AppliedOp> ops;
};

// Applies one event's fact effects and commitment ops at the given
// frame. Effects are monotone no-ops when already true; `creates` on a
// live label and `releases`/`cancels` on a non-live label are no-ops.
// Status atoms for applied ops land in the same frame. Throws
// UnknownAction, RoleMismatch (identity binding: agent must equal the
// action's actor role), UnknownCommitmentLabel.
EventEffects apply_action(SocialState& st, const Event& ev, const Protocol& p,
                          std::size_t index, std::size_t frame);

// Spec-level convenience: copy-in copy-out application of one event.
SocialState apply_event(const SocialState& st, const Event& ev, const Protocol& p,
                        std::size_t index);

struct CloseOutcome {
  std::string label;
  CommitmentState final_state;
  bool expired;
  std::string debtor;
};

// End-of-trace settlement: Detached commitments discharge or violate by
// their consequent's final truth value; Conditional ones expire
// (Released with the expired flag). Mutates `st` by archiving everything
// live. No status atoms are asserted; the trace is over.
std::vector<CloseOutcome> close_trace(SocialState& st, std::size_t close_index);

// agent -> roles it plays.
using RoleBinding = std::map<std::string, std::set<std::string>>;

// Every role played by the agent of the same name.
RoleBinding identity_binding(const Protocol& p);

}  // namespace regula
