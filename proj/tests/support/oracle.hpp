#pragma once

// Test-side reference semantics, written against the textbook operator
// definitions rather than the engine's first-occurrence reduction. The
// two must agree on every legal trace; tests enforce that.

#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "regula/model.hpp"
#include "regula/protocol_text.hpp"
#include "regula/regulation.hpp"
#include "regula/scenarios.hpp"
#include "regula/session.hpp"

namespace regula::testing {

using Frames = std::vector<std::set<Atom>>;

inline bool holds_at(const Frames& f, std::size_t i, const Atom& a) {
  return f[i].count(a) > 0;
}

inline bool eventually_from(const Frames& f, std::size_t from, const Atom& a) {
  for (std::size_t i = from; i < f.size(); ++i)
    if (holds_at(f, i, a)) return true;
  return false;
}

// !b U a: some frame has a with no b strictly before it.
inline bool until_clear(const Frames& f, const Atom& b, const Atom& a) {
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!holds_at(f, k, a)) continue;
    bool clean = true;
    for (std::size_t i = 0; i < k; ++i)
      if (holds_at(f, i, b)) clean = false;
    if (clean) return true;
  }
  return false;
}

inline bool globally_absent(const Frames& f, const Atom& b) {
  return !eventually_from(f, 0, b);
}

inline std::size_t first_index(const Frames& f, const Atom& a) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (holds_at(f, i, a)) return i;
  return f.size();  // sentinel: never
}

// Direct finite-trace evaluation of the LTLf reading of each operator.
inline bool ltlf_holds(const Regulation& r, const Frames& f) {
  struct V {
    const Frames& f;
    bool operator()(const Regulation::Top&) const { return true; }
    bool operator()(const Regulation::Achieve& n) const {
      return eventually_from(f, 0, n.atom);
    }
    bool operator()(const Regulation::Before& n) const {
      bool weak = until_clear(f, n.later, n.earlier) || globally_absent(f, n.later);
      bool both = eventually_from(f, 0, n.earlier) && eventually_from(f, 0, n.later);
      bool tie = both && first_index(f, n.earlier) == first_index(f, n.later);
      return weak && !tie;
    }
    bool operator()(const Regulation::Response& n) const {
      for (std::size_t i = 0; i < f.size(); ++i)
        if (holds_at(f, i, n.trigger) && !eventually_from(f, i, n.reaction))
          return false;
      return true;
    }
    bool operator()(const Regulation::Coexist& n) const {
      return eventually_from(f, 0, n.left) == eventually_from(f, 0, n.right);
    }
    bool operator()(const Regulation::And& n) const {
      return ltlf_holds(*n.left, f) && ltlf_holds(*n.right, f);
    }
    bool operator()(const Regulation::Or& n) const {
      return ltlf_holds(*n.left, f) || ltlf_holds(*n.right, f);
    }
  };
  return std::visit(V{f}, r.node());
}

// Every frame sequence of length <= max_len in which each atom becomes
// true at most once (empty frames allowed). Monotone truth makes these
// exactly the observable traces. Placement map determines the frames,
// so the walk assigns each atom a frame index or "never".
inline void for_each_monotone_trace(const std::vector<Atom>& atoms,
                                    std::size_t max_len,
                                    const std::function<void(const Frames&)>& fn) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    // Odometer over per-atom first-occurrence slots 0..len, where the
    // value len means the atom never occurs: (len+1)^n assignments.
    std::vector<std::size_t> slot(atoms.size(), 0);
    while (true) {
      Frames f(len);
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (slot[i] < len) f[slot[i]].insert(atoms[i]);
      fn(f);
      std::size_t i = 0;
      for (; i < atoms.size(); ++i) {
        if (slot[i] < len) {
          ++slot[i];
          break;
        }
        slot[i] = 0;
      }
      if (i == atoms.size()) break;
    }
  }
}

// Four independent actions over four independent facts; the workhorse
// protocol for exhaustive checks.
inline Protocol quad_protocol() {
  Protocol p;
  p.name = "quad";
  p.roles = {"agent"};
  for (std::string n : {"w", "x", "y", "z"}) {
    ActionDef a;
    a.name = "act-" + n;
    a.actor = "agent";
    a.effects = {Atom::fact(n)};
    p.actions.push_back(std::move(a));
  }
  return p;
}

inline Protocol scenario_protocol(const std::string& scenario) {
  const Scenario* s = find_scenario(scenario);
  REQUIRE(s != nullptr);
  return parse_protocol_text(s->protocol_file().content);
}

inline std::vector<TraceItem> scenario_trace(const std::string& scenario,
                                             const std::string& basename) {
  const Scenario* s = find_scenario(scenario);
  REQUIRE(s != nullptr);
  for (const ScenarioFile& f : s->files)
    if (f.basename == basename) return parse_trace_text(f.content);
  FAIL("no trace file ", basename, " in scenario ", scenario);
  return {};
}

// Replays events through a session and returns the newly-true frames,
// status atoms included, exactly as the monitors consumed them.
inline Frames replay_frames(const Protocol& p, const std::vector<Event>& events) {
  TraceSession s(p);
  Frames out;
  for (const Event& e : events) {
    StepReport r = s.step(e);
    for (const std::vector<Atom>& round : r.rounds) out.emplace_back(round.begin(), round.end());
  }
  return out;
}

}  // namespace regula::testing
