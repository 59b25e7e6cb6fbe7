#include "regula/model.hpp"

#include <algorithm>

#include "regula/errors.hpp"

namespace regula {

std::string_view to_string(CommitmentState s) {
  switch (s) {
    case CommitmentState::Conditional: return "Conditional";
    case CommitmentState::Detached: return "Detached";
    case CommitmentState::Discharged: return "Discharged";
    case CommitmentState::Violated: return "Violated";
    case CommitmentState::Released: return "Released";
    case CommitmentState::Cancelled: return "Cancelled";
  }
  return "";
}

bool is_terminal(CommitmentState s) {
  return s != CommitmentState::Conditional && s != CommitmentState::Detached;
}

std::string_view to_string(CommitmentMove m) {
  switch (m) {
    case CommitmentMove::Detach: return "detach";
    case CommitmentMove::Discharge: return "discharge";
    case CommitmentMove::Violate: return "violate";
    case CommitmentMove::Release: return "release";
    case CommitmentMove::Cancel: return "cancel";
  }
  return "";
}

LifecycleStatus status_of(CommitmentMove m) {
  switch (m) {
    case CommitmentMove::Detach: return LifecycleStatus::Detached;
    case CommitmentMove::Discharge: return LifecycleStatus::Discharged;
    case CommitmentMove::Violate: return LifecycleStatus::Violated;
    case CommitmentMove::Release: return LifecycleStatus::Released;
    case CommitmentMove::Cancel: return LifecycleStatus::Cancelled;
  }
  return LifecycleStatus::Created;
}

std::string_view CommitmentInstance::display_state() const {
  if (expired) return "Expired";
  return to_string(state);
}

CommitmentInstance transition(const CommitmentInstance& c, CommitmentMove move,
                              std::size_t index) {
  (void)index;
  auto illegal = [&]() -> IllegalTransition {
    return IllegalTransition("commitment '" + c.label + "': illegal " +
                             std::string(to_string(move)) + " from state " +
                             std::string(to_string(c.state)));
  };
  CommitmentInstance next = c;
  switch (c.state) {
    case CommitmentState::Conditional:
      switch (move) {
        case CommitmentMove::Detach: next.state = CommitmentState::Detached; break;
        case CommitmentMove::Release: next.state = CommitmentState::Released; break;
        case CommitmentMove::Cancel: next.state = CommitmentState::Cancelled; break;
        default: throw illegal();
      }
      break;
    case CommitmentState::Detached:
      switch (move) {
        case CommitmentMove::Discharge: next.state = CommitmentState::Discharged; break;
        case CommitmentMove::Violate: next.state = CommitmentState::Violated; break;
        case CommitmentMove::Release: next.state = CommitmentState::Released; break;
        case CommitmentMove::Cancel: next.state = CommitmentState::Cancelled; break;
        default: throw illegal();
      }
      break;
    default:
      throw illegal();
  }
  return next;
}

const ActionDef* Protocol::find_action(std::string_view name) const {
  for (const auto& a : actions)
    if (a.name == name) return &a;
  return nullptr;
}

const CommitmentTemplate* Protocol::find_commitment(std::string_view label) const {
  for (const auto& c : commitments)
    if (c.label == label) return &c;
  return nullptr;
}

const ConstraintDecl* Protocol::find_constraint(std::string_view id) const {
  for (const auto& c : constraints)
    if (c.id == id) return &c;
  return nullptr;
}

bool Protocol::has_role(std::string_view role) const {
  return std::find(roles.begin(), roles.end(), role) != roles.end();
}

std::set<Atom> Protocol::fact_universe() const {
  std::set<Atom> out(declared_atoms.begin(), declared_atoms.end());
  for (const auto& a : actions)
    for (const auto& e : a.effects) out.insert(e);
  return out;
}

bool Protocol::resolvable(const Atom& a) const {
  if (a.is_fact()) return fact_universe().count(a) != 0;
  return find_commitment(a.name) != nullptr;
}

std::vector<ValidationIssue> Protocol::issues() const {
  std::vector<ValidationIssue> out;
  auto issue = [&](std::string msg, std::string kind, std::string name) {
    out.push_back({std::move(msg), std::move(kind), std::move(name)});
  };

  std::set<std::string> seen_roles;
  for (const auto& r : roles)
    if (!seen_roles.insert(r).second) issue("duplicate role '" + r + "'", "role", r);

  auto check_expr = [&](const Regulation& expr, const std::string& kind,
                        const std::string& name, std::string_view where) {
    for (const Atom& a : atoms_of(expr)) {
      if (a.is_fact()) {
        if (!resolvable(a))
          issue(std::string(where) + " '" + name + "' references undeclared atom '" +
                    a.str() + "'",
                kind, name);
      } else if (!find_commitment(a.name)) {
        issue(std::string(where) + " '" + name +
                  "' references undeclared commitment label '" + a.name + "'",
              kind, name);
      }
    }
  };

  std::set<std::string> seen_actions;
  for (const auto& a : actions) {
    if (!seen_actions.insert(a.name).second)
      issue("duplicate action '" + a.name + "'", "action", a.name);
    if (!has_role(a.actor))
      issue("action '" + a.name + "' names undeclared role '" + a.actor + "'",
            "action", a.name);
    if (a.effects.empty() && a.ops.empty())
      issue("action '" + a.name + "' has neither effects nor commitment operations",
            "action", a.name);
    for (const auto& e : a.effects)
      if (!e.is_fact())
        issue("action '" + a.name + "' asserts non-fact effect '" + e.str() + "'",
              "action", a.name);
    for (const auto& op : a.ops)
      if (!find_commitment(op.label))
        issue("action '" + a.name + "' references undeclared commitment '" +
                  op.label + "'",
              "action", a.name);
  }

  std::set<std::string> seen_commitments;
  for (const auto& c : commitments) {
    if (!seen_commitments.insert(c.label).second)
      issue("duplicate commitment '" + c.label + "'", "commitment", c.label);
    if (!has_role(c.debtor))
      issue("commitment '" + c.label + "' names undeclared debtor role '" +
                c.debtor + "'",
            "commitment", c.label);
    if (!has_role(c.creditor))
      issue("commitment '" + c.label + "' names undeclared creditor role '" +
                c.creditor + "'",
            "commitment", c.label);
    if (c.debtor == c.creditor)
      issue("commitment '" + c.label + "' has identical debtor and creditor",
            "commitment", c.label);
    check_expr(c.antecedent, "commitment", c.label, "commitment");
    check_expr(c.consequent, "commitment", c.label, "commitment");
  }

  std::set<std::string> seen_constraints;
  for (const auto& c : constraints) {
    if (!seen_constraints.insert(c.id).second)
      issue("duplicate constraint '" + c.id + "'", "constraint", c.id);
    check_expr(c.expr, "constraint", c.id, "constraint");
  }
  return out;
}

void Protocol::validate() const {
  auto found = issues();
  if (!found.empty()) throw ValidationError(found.front().message);
}

bool SocialState::assert_atom(const Atom& a, std::size_t index, std::size_t frame) {
  return true_atoms.emplace(a, Occurrence{index, frame}).second;
}

FirstOccurrence SocialState::occurrences_since(std::size_t anchor_frame) const {
  FirstOccurrence out;
  for (const auto& [atom, occ] : true_atoms)
    if (occ.frame >= anchor_frame) out.emplace(atom, occ.frame);
  return out;
}

std::vector<const CommitmentInstance*> SocialState::live_in_creation_order() const {
  std::vector<const CommitmentInstance*> out;
  for (const auto& [label, inst] : live) out.push_back(&inst);
  std::sort(out.begin(), out.end(),
            [](const CommitmentInstance* a, const CommitmentInstance* b) {
              if (a->created_frame != b->created_frame)
                return a->created_frame < b->created_frame;
              return a->label < b->label;
            });
  return out;
}

EventEffects apply_action(SocialState& st, const Event& ev, const Protocol& p,
                          std::size_t index, std::size_t frame) {
  const ActionDef* def = p.find_action(ev.action);
  if (!def) throw UnknownAction("unknown action '" + ev.action + "'");
  if (ev.agent != def->actor)
    throw RoleMismatch("agent '" + ev.agent + "' does not play role '" + def->actor +
                       "' required by action '" + ev.action + "'");

  EventEffects fx;
  for (const Atom& e : def->effects)
    if (st.assert_atom(e, index, frame)) fx.became_true.push_back(e);

  for (const CommitmentOp& op : def->ops) {
    const CommitmentTemplate* tpl = p.find_commitment(op.label);
    if (!tpl)
      throw UnknownCommitmentLabel("unknown commitment label '" + op.label + "'");
    auto it = st.live.find(op.label);
    switch (op.kind) {
      case CommitmentOp::Kind::Create: {
        if (it != st.live.end()) break;  // one live instance per label
        CommitmentInstance inst{op.label,        tpl->debtor,     tpl->creditor,
                                tpl->antecedent, tpl->consequent, CommitmentState::Conditional,
                                index,           frame,           false};
        st.live.emplace(op.label, std::move(inst));
        Atom status = Atom::commitment(LifecycleStatus::Created, op.label);
        if (st.assert_atom(status, index, frame)) fx.became_true.push_back(status);
        fx.ops.push_back({op.label, LifecycleStatus::Created, false, tpl->debtor});
        break;
      }
      case CommitmentOp::Kind::Release:
      case CommitmentOp::Kind::Cancel: {
        if (it == st.live.end()) break;  // nothing live to act on
        bool cancel = op.kind == CommitmentOp::Kind::Cancel;
        bool was_detached = it->second.state == CommitmentState::Detached;
        CommitmentMove move = cancel ? CommitmentMove::Cancel : CommitmentMove::Release;
        CommitmentInstance settled = transition(it->second, move, index);
        st.archive.push_back(settled);
        st.live.erase(it);
        Atom status = Atom::commitment(status_of(move), op.label);
        if (st.assert_atom(status, index, frame)) fx.became_true.push_back(status);
        fx.ops.push_back({op.label, status_of(move), cancel && was_detached,
                          settled.debtor});
        break;
      }
    }
  }
  return fx;
}

SocialState apply_event(const SocialState& st, const Event& ev, const Protocol& p,
                        std::size_t index) {
  SocialState next = st;
  apply_action(next, ev, p, index, next.frames);
  next.frames += 1;
  return next;
}

std::vector<CloseOutcome> close_trace(SocialState& st, std::size_t close_index) {
  std::vector<CloseOutcome> out;
  for (const CommitmentInstance* c : st.live_in_creation_order()) {
    CommitmentInstance settled = *c;
    if (c->state == CommitmentState::Detached) {
      bool ok = eval_on_trace(c->consequent, st.occurrences_since(c->created_frame));
      settled = transition(*c, ok ? CommitmentMove::Discharge : CommitmentMove::Violate,
                           close_index);
    } else {
      settled = transition(*c, CommitmentMove::Release, close_index);
      settled.expired = true;
    }
    out.push_back({settled.label, settled.state, settled.expired, settled.debtor});
    st.archive.push_back(settled);
  }
  for (const auto& o : out) st.live.erase(o.label);
  return out;
}

RoleBinding identity_binding(const Protocol& p) {
  RoleBinding b;
  for (const auto& r : p.roles) b[r].insert(r);
  return b;
}

}  // namespace regula
