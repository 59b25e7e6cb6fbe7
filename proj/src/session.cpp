#include "regula/session.hpp"

#include <algorithm>

#include "regula/errors.hpp"

namespace regula {

namespace {
constexpr Severity kCommitmentSeverity = Severity::High;
}

TraceSession::TraceSession(Protocol protocol) : protocol_(std::move(protocol)) {
  protocol_.validate();
  for (const auto& c : protocol_.constraints) {
    auto aut = std::make_shared<const MonitorAutomaton>(compile_monitor(c.expr));
    tracks_.push_back({c, aut, aut->initial(), true, false});
  }
  for (const auto& t : protocol_.commitments) {
    auto ant = std::make_shared<const MonitorAutomaton>(compile_monitor(t.antecedent));
    auto cons = std::make_shared<const MonitorAutomaton>(compile_monitor(t.consequent));
    templates_.emplace(t.label, CommitmentTrack{ant, cons, ant->initial(), cons->initial()});
  }
}

TraceSession::ConstraintTrack* TraceSession::find_track(const std::string& id) {
  for (auto& t : tracks_)
    if (t.decl.id == id) return &t;
  return nullptr;
}

const TraceSession::ConstraintTrack* TraceSession::find_track(const std::string& id) const {
  for (const auto& t : tracks_)
    if (t.decl.id == id) return &t;
  return nullptr;
}

const TraceSession::CommitmentTrack& TraceSession::template_track(
    const std::string& label) const {
  auto it = templates_.find(label);
  if (it == templates_.end())
    throw UnknownCommitmentLabel("unknown commitment label '" + label + "'");
  return it->second;
}

Verdict TraceSession::constraint_verdict(const std::string& id) const {
  const ConstraintTrack* t = find_track(id);
  if (!t) throw UnknownConstraint("unknown constraint '" + id + "'");
  return t->aut->verdict(t->cursor);
}

bool TraceSession::constraint_active(const std::string& id) const {
  const ConstraintTrack* t = find_track(id);
  if (!t) throw UnknownConstraint("unknown constraint '" + id + "'");
  return t->active;
}

void TraceSession::set_constraint_active(const std::string& id, bool active) {
  ConstraintTrack* t = find_track(id);
  if (!t) throw UnknownConstraint("unknown constraint '" + id + "'");
  if (t->active == active) return;
  t->active = active;
  if (active) {
    // Fresh cursor; only atoms that become true from here on feed it.
    t->cursor = t->aut->initial();
    t->violated = false;
  }
}

void TraceSession::add_constraint(ConstraintDecl decl) {
  if (find_track(decl.id))
    throw ValidationError("constraint '" + decl.id + "' already exists");
  for (const Atom& a : atoms_of(decl.expr))
    if (!protocol_.resolvable(a))
      throw ValidationError("constraint '" + decl.id +
                            "' references undeclared atom '" + a.str() + "'");
  auto aut = std::make_shared<const MonitorAutomaton>(compile_monitor(decl.expr));
  tracks_.push_back({std::move(decl), aut, aut->initial(), true, false});
}

StepReport TraceSession::step(const Event& ev) {
  StepReport rep;
  rep.event_index = events_;
  rep.event = ev;

  std::vector<std::pair<std::string, Verdict>> before;
  for (const auto& t : tracks_)
    before.emplace_back(t.decl.id, t.aut->verdict(t.cursor));

  // Round 0: the event itself. apply_action throws before any mutation
  // on constitutive errors, keeping the session unchanged.
  std::size_t frame = state_.frames;
  EventEffects fx = apply_action(state_, ev, protocol_, events_, frame);
  state_.frames = frame + 1;

  for (const AppliedOp& op : fx.ops) {
    rep.lifecycle.push_back({op.label, op.what, events_});
    if (op.what == LifecycleStatus::Created) {
      const CommitmentTrack& tpl = template_track(op.label);
      ctracks_[op.label] = CommitmentTrack{tpl.antecedent, tpl.consequent,
                                           tpl.antecedent->initial(),
                                           tpl.consequent->initial()};
    } else {
      ctracks_.erase(op.label);
      if (op.cancelled_detached) {
        ViolationRecord v{op.label, events_, kCommitmentSeverity, op.debtor};
        rep.violations.push_back(v);
        violations_.push_back(v);
      }
    }
  }

  // Cascade: feed each micro-frame's newly-true atoms to every cursor,
  // then let lifecycle moves settle; each move asserts its status atom
  // into the next frame. The lifecycle pass runs even on an empty frame
  // (a recreated label's status atoms are stale, an instant detach may
  // chain into an instant discharge); each pass that continues the loop
  // detaches or archives at least one instance, so it terminates.
  std::vector<Atom> newly = fx.became_true;
  while (true) {
    if (!newly.empty()) {
      rep.rounds.push_back(newly);
      rep.became_true.insert(rep.became_true.end(), newly.begin(), newly.end());

      for (auto& t : tracks_) {
        if (!t.active) continue;
        std::uint32_t mask = t.aut->mask_of(newly);
        if (mask == 0) continue;
        t.cursor = t.aut->advance(t.cursor, mask);
        if (t.aut->verdict(t.cursor) == Verdict::PermViol && !t.violated) {
          t.violated = true;
          ViolationRecord v{t.decl.id, events_, t.decl.severity, ev.agent};
          rep.violations.push_back(v);
          violations_.push_back(v);
        }
      }
      for (auto& [label, track] : ctracks_) {
        std::uint32_t amask = track.antecedent->mask_of(newly);
        if (amask) track.ant_cursor = track.antecedent->advance(track.ant_cursor, amask);
        std::uint32_t cmask = track.consequent->mask_of(newly);
        if (cmask) track.cons_cursor = track.consequent->advance(track.cons_cursor, cmask);
      }
    }

    // Lifecycle pass: at most one move per instance per pass, in
    // creation order. Status atoms land in the next frame so that a
    // consequence is strictly later than its cause.
    std::vector<Atom> next_newly;
    std::size_t next_frame = state_.frames;
    bool any_move = false;
    for (const CommitmentInstance* inst : state_.live_in_creation_order()) {
      const std::string label = inst->label;  // outlives the erase below
      CommitmentTrack& track = ctracks_.at(label);
      CommitmentInstance& live = state_.live.at(label);
      if (live.state == CommitmentState::Conditional &&
          satisfied_now(track.antecedent->verdict(track.ant_cursor))) {
        live = transition(live, CommitmentMove::Detach, events_);
        any_move = true;
        rep.lifecycle.push_back({label, LifecycleStatus::Detached, events_});
        Atom status = Atom::commitment(LifecycleStatus::Detached, label);
        if (state_.assert_atom(status, events_, next_frame)) next_newly.push_back(status);
        continue;
      }
      if (live.state != CommitmentState::Detached) continue;
      Verdict cons = track.consequent->verdict(track.cons_cursor);
      if (cons != Verdict::PermSat && cons != Verdict::PermViol) continue;
      bool good = cons == Verdict::PermSat;
      CommitmentMove move = good ? CommitmentMove::Discharge : CommitmentMove::Violate;
      CommitmentInstance settled = transition(live, move, events_);
      state_.archive.push_back(settled);
      state_.live.erase(label);
      ctracks_.erase(label);
      any_move = true;
      rep.lifecycle.push_back({label, status_of(move), events_});
      Atom status = Atom::commitment(status_of(move), label);
      if (state_.assert_atom(status, events_, next_frame)) next_newly.push_back(status);
      if (!good) {
        ViolationRecord v{label, events_, kCommitmentSeverity, settled.debtor};
        rep.violations.push_back(v);
        violations_.push_back(v);
      }
    }
    if (!next_newly.empty()) state_.frames = next_frame + 1;
    if (!any_move) break;
    newly = std::move(next_newly);
  }

  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    Verdict now = tracks_[i].aut->verdict(tracks_[i].cursor);
    if (i >= before.size() || before[i].second != now)
      rep.verdict_changes.emplace_back(tracks_[i].decl.id, now);
  }

  log_.push_back(ev);
  events_ += 1;
  return rep;
}

FinalReport TraceSession::close() const {
  FinalReport fr;
  fr.events = events_;
  fr.violations = violations_;

  for (const auto& t : tracks_) {
    Verdict v = t.aut->verdict(t.cursor);
    fr.constraints.push_back({t.decl.id, v, t.active, t.decl.severity});
    if (t.active && !t.violated && v == Verdict::TempViol)
      fr.violations.push_back({t.decl.id, events_, t.decl.severity, "end-of-trace"});
  }

  SocialState settled = state_;
  std::vector<CloseOutcome> outcomes = close_trace(settled, events_);
  for (const auto& o : outcomes)
    if (o.final_state == CommitmentState::Violated)
      fr.violations.push_back({o.label, events_, kCommitmentSeverity, o.debtor});

  fr.commitments = settled.archive;
  std::sort(fr.commitments.begin(), fr.commitments.end(),
            [](const CommitmentInstance& a, const CommitmentInstance& b) {
              if (a.created_frame != b.created_frame)
                return a.created_frame < b.created_frame;
              return a.label < b.label;
            });
  return fr;
}

}  // namespace regula
