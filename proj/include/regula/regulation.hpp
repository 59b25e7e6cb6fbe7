#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regula/atom.hpp"

namespace regula {

// Temporal regulation over atoms. The temporal operators take atoms,
// never sub-expressions; only the boolean connectives nest.
class Regulation {
 public:
  struct Top {};
  struct Achieve {
    Atom atom;
  };
  // Strict precedence: if both occur in the same frame the order is broken.
  struct Before {
    Atom earlier;
    Atom later;
  };
  // Every occurrence of the trigger needs a reaction at or after it.
  // With monotone truth only first occurrences matter.
  struct Response {
    Atom trigger;
    Atom reaction;
  };
  struct Coexist {
    Atom left;
    Atom right;
  };
  struct And {
    std::shared_ptr<const Regulation> left;
    std::shared_ptr<const Regulation> right;
  };
  struct Or {
    std::shared_ptr<const Regulation> left;
    std::shared_ptr<const Regulation> right;
  };
  using Node = std::variant<Top, Achieve, Before, Response, Coexist, And, Or>;

  Regulation() : node_(Top{}) {}
  explicit Regulation(Node node) : node_(std::move(node)) {}

  static Regulation top() { return Regulation(Top{}); }
  static Regulation achieve(Atom a) { return Regulation(Achieve{std::move(a)}); }
  static Regulation before(Atom a, Atom b) {
    return Regulation(Before{std::move(a), std::move(b)});
  }
  static Regulation response(Atom a, Atom b) {
    return Regulation(Response{std::move(a), std::move(b)});
  }
  static Regulation coexist(Atom a, Atom b) {
    return Regulation(Coexist{std::move(a), std::move(b)});
  }
  static Regulation conj(Regulation l, Regulation r) {
    return Regulation(And{std::make_shared<const Regulation>(std::move(l)),
                          std::make_shared<const Regulation>(std::move(r))});
  }
  static Regulation disj(Regulation l, Regulation r) {
    return Regulation(Or{std::make_shared<const Regulation>(std::move(l)),
                         std::make_shared<const Regulation>(std::move(r))});
  }

  const Node& node() const { return node_; }

  bool operator==(const Regulation& other) const;  // structural

 private:
  Node node_;
};

// Frame index of the first time each atom held; absent means never.
// Frames order occurrences globally; equal frames are simultaneous.
using FirstOccurrence = std::map<Atom, std::size_t>;

// Parses the surface syntax; `or` binds weaker than `and`, the temporal
// operators are infix between atoms, parentheses group. Throws
// SyntaxError / UnknownOperator.
Regulation parse_regulation(std::string_view text);

// Canonical rendering; parse_regulation(pretty_print(r)) == r.
std::string pretty_print(const Regulation& r);

// Finite-trace truth on a completed trace summarized by first occurrences.
bool eval_on_trace(const Regulation& r, const FirstOccurrence& first);

// Convenience: frames listed explicitly, index = frame number.
bool eval_on_trace(const Regulation& r, const std::vector<std::set<Atom>>& frames);

// Linear temporal logic (finite-trace) rendering of the same semantics.
std::string to_ltlf(const Regulation& r);

// All atoms mentioned, left to right, duplicates removed.
std::vector<Atom> atoms_of(const Regulation& r);

// Restriction expressed as a constraint declaration in a protocol.
enum class Severity { Low, Medium, High };
std::string_view to_keyword(Severity s);
std::optional<Severity> severity_from(std::string_view keyword);

struct ConstraintDecl {
  std::string id;
  Regulation expr;
  Severity severity = Severity::Medium;
};

}  // namespace regula
