#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace regula {

// Lifecycle moves a commitment instance can make. Doubles as the
// vocabulary of commitment-status atoms inside regulations.
enum class LifecycleStatus {
  Created,
  Detached,
  Discharged,
  Released,
  Cancelled,
  Violated,
};

// Lower-case name as written in regulations: "created", "detached", ...
std::string_view to_keyword(LifecycleStatus s);
std::optional<LifecycleStatus> lifecycle_status_from(std::string_view keyword);

// A proposition the social state can make true: either a domain fact
// ("paid") or a commitment-status observation ("discharged(c1)").
// Once true an atom stays true; the state is monotone.
struct Atom {
  std::string name;                       // fact name, or commitment label
  std::optional<LifecycleStatus> status;  // engaged for status atoms

  static Atom fact(std::string name) { return {std::move(name), std::nullopt}; }
  static Atom commitment(LifecycleStatus s, std::string label) {
    return {std::move(label), s};
  }

  bool is_fact() const { return !status.has_value(); }
  std::string str() const;

  auto operator<=>(const Atom&) const = default;
};

// Parses "paid" or "discharged(c1)". Throws SyntaxError.
Atom parse_atom(std::string_view text);

}  // namespace regula
