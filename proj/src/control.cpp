#include "regula/control.hpp"

#include <algorithm>

#include "regula/errors.hpp"

namespace regula {

std::map<std::string, CapabilityProfile> capabilities_of(const Protocol& p,
                                                         const RoleBinding& binding) {
  std::map<std::string, CapabilityProfile> out;
  for (const auto& [agent, roles] : binding) {
    CapabilityProfile prof{agent, {}};
    for (const auto& role : roles) {
      if (!p.has_role(role))
        throw UnknownRole("agent '" + agent + "' bound to undeclared role '" + role + "'");
      for (const auto& a : p.actions)
        if (a.actor == role)
          for (const auto& e : a.effects) prof.achievable.insert(e);
    }
    out.emplace(agent, std::move(prof));
  }
  return out;
}

SupportContext SupportContext::hypothetical(const Protocol& p, const RoleBinding& binding) {
  SupportContext ctx;
  ctx.protocol = &p;
  ctx.capabilities = capabilities_of(p, binding);
  for (const auto& t : p.commitments)
    ctx.commitments.push_back({t.label, t.debtor, t.creditor, t.antecedent, t.consequent,
                               CommitmentState::Conditional, 0, 0, false});
  return ctx;
}

SupportContext SupportContext::from_state(const Protocol& p, const RoleBinding& binding,
                                          const SocialState& state) {
  SupportContext ctx;
  ctx.protocol = &p;
  ctx.capabilities = capabilities_of(p, binding);
  for (const auto* inst : state.live_in_creation_order()) ctx.commitments.push_back(*inst);
  ctx.state = state;
  return ctx;
}

bool entails_achievement(const Regulation& consequent, const Atom& a) {
  const auto& n = consequent.node();
  if (auto* x = std::get_if<Regulation::Achieve>(&n)) return x->atom == a;
  if (auto* x = std::get_if<Regulation::And>(&n))
    return entails_achievement(*x->left, a) || entails_achievement(*x->right, a);
  if (auto* x = std::get_if<Regulation::Or>(&n))
    return entails_achievement(*x->left, a) && entails_achievement(*x->right, a);
  return false;
}

namespace {

// Shared evaluation state: the usable-support set grown to fixpoint.
struct Eval {
  const SupportContext& ctx;
  std::vector<bool> usable;  // per ctx.commitments index

  const std::set<Atom>& capa(const std::string& agent) const {
    static const std::set<Atom> empty;
    auto it = ctx.capabilities.find(agent);
    return it == ctx.capabilities.end() ? empty : it->second.achievable;
  }

  void resolve(const Atom& a) const {
    if (ctx.protocol && !ctx.protocol->resolvable(a))
      throw UnresolvedAtom("atom '" + a.str() + "' does not resolve in the protocol");
  }

  bool achieve(const std::string& agent, const Atom& a) const {
    resolve(a);
    if (ctx.state.holds(a)) return true;
    if (a.is_fact() && capa(agent).count(a)) return true;
    for (std::size_t i = 0; i < ctx.commitments.size(); ++i) {
      const CommitmentInstance& c = ctx.commitments[i];
      if (c.creditor != agent || !usable[i]) continue;
      if (entails_achievement(c.consequent, a)) return true;
    }
    return false;
  }

  bool eval(const std::string& agent, const Regulation& r) const {
    const auto& n = r.node();
    if (std::holds_alternative<Regulation::Top>(n)) return true;
    if (auto* x = std::get_if<Regulation::Achieve>(&n)) return achieve(agent, x->atom);
    if (auto* x = std::get_if<Regulation::Before>(&n)) {
      resolve(x->earlier);
      resolve(x->later);
      return achieve(agent, x->earlier) && achieve(agent, x->later) &&
             !ctx.state.holds(x->later);
    }
    if (auto* x = std::get_if<Regulation::Response>(&n)) {
      resolve(x->trigger);
      return achieve(agent, x->reaction);
    }
    if (auto* x = std::get_if<Regulation::Coexist>(&n))
      return achieve(agent, x->left) && achieve(agent, x->right);
    if (auto* x = std::get_if<Regulation::And>(&n))
      return eval(agent, *x->left) && eval(agent, *x->right);
    const auto& x = std::get<Regulation::Or>(n);
    return eval(agent, *x.left) || eval(agent, *x.right);
  }

  // Grows the usable set until stable. A Detached commitment is usable
  // outright; a Conditional one once its creditor controls the
  // antecedent with the support already established.
  void saturate(const std::string& agent) {
    usable.assign(ctx.commitments.size(), false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < ctx.commitments.size(); ++i) {
        if (usable[i]) continue;
        const CommitmentInstance& c = ctx.commitments[i];
        if (c.creditor != agent) continue;
        if (c.state == CommitmentState::Detached || eval(agent, c.antecedent)) {
          usable[i] = true;
          changed = true;
        }
      }
    }
  }
};

std::string claim_text(const std::string& agent, const Regulation& r) {
  return "control(" + agent + ", " + pretty_print(r) + ")";
}

ControlDerivation derive(const Eval& ev, const std::string& agent, const Regulation& r);

ControlDerivation derive_achieve(const Eval& ev, const std::string& agent, const Atom& a) {
  ControlDerivation d;
  d.claim = claim_text(agent, Regulation::achieve(a));
  ev.resolve(a);
  if (ev.ctx.state.holds(a)) {
    d.holds = true;
    d.rule = "already true in the social state";
    return d;
  }
  if (a.is_fact() && ev.capa(agent).count(a)) {
    d.holds = true;
    d.rule = "own capability";
    return d;
  }
  for (std::size_t i = 0; i < ev.ctx.commitments.size(); ++i) {
    const CommitmentInstance& c = ev.ctx.commitments[i];
    if (c.creditor != agent || !ev.usable[i]) continue;
    if (entails_achievement(c.consequent, a)) {
      d.holds = true;
      d.rule = "supported by commitment " + c.label + " from " + c.debtor +
               (c.state == CommitmentState::Detached ? " (detached)"
                                                     : " (antecedent controlled)");
      return d;
    }
  }
  d.holds = false;
  d.rule = "not achievable: no capability, no usable supporting commitment";
  return d;
}

ControlDerivation derive(const Eval& ev, const std::string& agent, const Regulation& r) {
  const auto& n = r.node();
  ControlDerivation d;
  d.claim = claim_text(agent, r);
  if (std::holds_alternative<Regulation::Top>(n)) {
    d.holds = true;
    d.rule = "top is vacuously controlled";
    return d;
  }
  if (auto* x = std::get_if<Regulation::Achieve>(&n)) return derive_achieve(ev, agent, x->atom);
  if (auto* x = std::get_if<Regulation::Before>(&n)) {
    d.premises.push_back(derive_achieve(ev, agent, x->earlier));
    d.premises.push_back(derive_achieve(ev, agent, x->later));
    bool later_frozen = ev.ctx.state.holds(x->later);
    d.holds = d.premises[0].holds && d.premises[1].holds && !later_frozen;
    d.rule = later_frozen ? "order frozen: '" + x->later.str() + "' already true"
                          : "ordering controlled when both atoms are";
    return d;
  }
  if (auto* x = std::get_if<Regulation::Response>(&n)) {
    ev.resolve(x->trigger);
    d.premises.push_back(derive_achieve(ev, agent, x->reaction));
    d.holds = d.premises[0].holds;
    d.rule = "response needs only the reaction";
    return d;
  }
  if (auto* x = std::get_if<Regulation::Coexist>(&n)) {
    d.premises.push_back(derive_achieve(ev, agent, x->left));
    d.premises.push_back(derive_achieve(ev, agent, x->right));
    d.holds = d.premises[0].holds && d.premises[1].holds;
    d.rule = "coexistence needs both atoms";
    return d;
  }
  if (auto* x = std::get_if<Regulation::And>(&n)) {
    d.premises.push_back(derive(ev, agent, *x->left));
    d.premises.push_back(derive(ev, agent, *x->right));
    d.holds = d.premises[0].holds && d.premises[1].holds;
    d.rule = "conjunction";
    return d;
  }
  const auto& x = std::get<Regulation::Or>(n);
  d.premises.push_back(derive(ev, agent, *x.left));
  d.premises.push_back(derive(ev, agent, *x.right));
  d.holds = d.premises[0].holds || d.premises[1].holds;
  d.rule = "disjunction";
  return d;
}

}  // namespace

bool control(const std::string& agent, const Regulation& expr, const SupportContext& ctx) {
  Eval ev{ctx, {}};
  for (const Atom& a : atoms_of(expr)) ev.resolve(a);
  ev.saturate(agent);
  return ev.eval(agent, expr);
}

ControlDerivation control_derivation(const std::string& agent, const Regulation& expr,
                                     const SupportContext& ctx) {
  Eval ev{ctx, {}};
  for (const Atom& a : atoms_of(expr)) ev.resolve(a);
  ev.saturate(agent);
  return derive(ev, agent, expr);
}

namespace {

SupportContext without(const SupportContext& ctx, const std::string& label) {
  SupportContext out = ctx;
  out.commitments.erase(
      std::remove_if(out.commitments.begin(), out.commitments.end(),
                     [&](const CommitmentInstance& c) { return c.label == label; }),
      out.commitments.end());
  return out;
}

}  // namespace

bool safe(const CommitmentInstance& c, const SupportContext& ctx) {
  if (is_terminal(c.state))
    throw TerminalCommitment("commitment '" + c.label + "' is already settled");
  return control(c.debtor, c.consequent, without(ctx, c.label));
}

ControlDerivation safe_derivation(const CommitmentInstance& c, const SupportContext& ctx) {
  if (is_terminal(c.state))
    throw TerminalCommitment("commitment '" + c.label + "' is already settled");
  return control_derivation(c.debtor, c.consequent, without(ctx, c.label));
}

std::string render(const ControlDerivation& d) {
  std::string out;
  struct Walk {
    std::string& out;
    void operator()(const ControlDerivation& d, std::size_t depth) {
      out.append(2 * depth, ' ');
      out += d.claim + " = " + (d.holds ? "true" : "false") + "  [" + d.rule + "]\n";
      for (const auto& p : d.premises) (*this)(p, depth + 1);
    }
  } walk{out};
  walk(d, 0);
  return out;
}

}  // namespace regula
