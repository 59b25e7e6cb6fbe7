#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "regula/regulation.hpp"

namespace regula {

// Four-valued monitoring outcome. Perm* are settled forever; Temp* are
// the current finite-trace reading, still changeable by extensions.
enum class Verdict { PermSat, PermViol, TempSat, TempViol };

std::string_view to_string(Verdict v);
inline bool is_settled(Verdict v) {
  return v == Verdict::PermSat || v == Verdict::PermViol;
}
// The ended-now boolean reading: would the trace evaluate true if it
// stopped here.
inline bool satisfied_now(Verdict v) {
  return v == Verdict::PermSat || v == Verdict::TempSat;
}

// Deterministic finite-state monitor for one regulation. Symbols are
// sets of atoms that became true together (one micro-frame); atoms
// outside the alphabet are ignored by construction, and re-asserted
// atoms are stale (each state already accounts for what it has seen).
// Every state carries the verdict computed by reachability over the
// explicit transition graph.
class MonitorAutomaton {
 public:
  using State = std::uint32_t;

  const std::vector<Atom>& alphabet() const { return atoms_; }
  std::size_t state_count() const { return verdicts_.size(); }
  State initial() const { return init_; }
  Verdict verdict(State s) const { return verdicts_[s]; }

  State advance(State s, std::uint32_t mask) const {
    return next_[s * mask_count_ + mask];
  }
  // Mask for the atoms of `newly` that are in the alphabet.
  std::uint32_t mask_of(const std::vector<Atom>& newly) const;

  friend MonitorAutomaton compile_monitor(const Regulation& expr);

 private:
  std::vector<Atom> atoms_;
  std::vector<Verdict> verdicts_;
  std::vector<State> next_;  // state-major, mask-minor
  std::size_t mask_count_ = 1;
  State init_ = 0;
};

// Compiles the regulation into its monitor. State count is finite and
// bounded by the product of the operator automata (Top 1, Achieve 2,
// Before 3, Coexist 4, Response 5 states).
MonitorAutomaton compile_monitor(const Regulation& expr);

}  // namespace regula
