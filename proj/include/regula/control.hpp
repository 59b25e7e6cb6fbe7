#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "regula/model.hpp"

namespace regula {

struct CapabilityProfile {
  std::string agent;
  std::set<Atom> achievable;  // fact atoms reachable via own actions
};

// agent -> profile, for every agent in the binding. Throws UnknownRole
// when the binding names an undeclared role.
std::map<std::string, CapabilityProfile> capabilities_of(const Protocol& p,
                                                         const RoleBinding& binding);

// What an agent can lean on: its own capabilities, commitments directed
// toward it, and the current social state.
struct SupportContext {
  const Protocol* protocol = nullptr;
  std::map<std::string, CapabilityProfile> capabilities;
  std::vector<CommitmentInstance> commitments;  // Conditional or Detached
  SocialState state;

  // Design-time view: every declared template live and Conditional.
  static SupportContext hypothetical(const Protocol& p, const RoleBinding& binding);
  // Runtime view over a session's social state.
  static SupportContext from_state(const Protocol& p, const RoleBinding& binding,
                                   const SocialState& state);
};

// Does the consequent structurally guarantee that the atom is achieved.
bool entails_achievement(const Regulation& consequent, const Atom& a);

// Fixpoint-from-below evaluation: a commitment toward the agent is
// usable support once it is Detached or its antecedent is controlled;
// mutual conditional support bottoms out false. Throws UnresolvedAtom
// for atoms outside the protocol universe.
bool control(const std::string& agent, const Regulation& expr, const SupportContext& ctx);

// Same evaluation with the reasoning recorded.
struct ControlDerivation {
  std::string claim;
  bool holds = false;
  std::string rule;
  std::vector<ControlDerivation> premises;
};
ControlDerivation control_derivation(const std::string& agent, const Regulation& expr,
                                     const SupportContext& ctx);

// safe(C) = control(debtor, consequent, ctx without C). Throws
// TerminalCommitment when the instance is already settled.
bool safe(const CommitmentInstance& c, const SupportContext& ctx);
ControlDerivation safe_derivation(const CommitmentInstance& c, const SupportContext& ctx);

// Derivation tree rendered one claim per line, indented.
std::string render(const ControlDerivation& d);

}  // namespace regula
