#include "regula/regulation.hpp"

#include <algorithm>

#include "lexer.hpp"
#include "regula/errors.hpp"

namespace regula {

std::string_view to_keyword(LifecycleStatus s) {
  switch (s) {
    case LifecycleStatus::Created: return "created";
    case LifecycleStatus::Detached: return "detached";
    case LifecycleStatus::Discharged: return "discharged";
    case LifecycleStatus::Released: return "released";
    case LifecycleStatus::Cancelled: return "cancelled";
    case LifecycleStatus::Violated: return "violated";
  }
  return "";
}

std::optional<LifecycleStatus> lifecycle_status_from(std::string_view keyword) {
  if (keyword == "created") return LifecycleStatus::Created;
  if (keyword == "detached") return LifecycleStatus::Detached;
  if (keyword == "discharged") return LifecycleStatus::Discharged;
  if (keyword == "released") return LifecycleStatus::Released;
  if (keyword == "cancelled") return LifecycleStatus::Cancelled;
  if (keyword == "violated") return LifecycleStatus::Violated;
  return std::nullopt;
}

std::string Atom::str() const {
  if (!status) return name;
  return std::string(to_keyword(*status)) + "(" + name + ")";
}

Atom parse_atom(std::string_view text) {
  detail::Lexer lx(text);
  Atom a = detail::parse_atom_stream(lx);
  if (!lx.at_end())
    throw SyntaxError("unexpected input after atom", lx.peek().pos);
  return a;
}

std::string_view to_keyword(Severity s) {
  switch (s) {
    case Severity::Low: return "low";
    case Severity::Medium: return "medium";
    case Severity::High: return "high";
  }
  return "";
}

std::optional<Severity> severity_from(std::string_view keyword) {
  if (keyword == "low") return Severity::Low;
  if (keyword == "medium") return Severity::Medium;
  if (keyword == "high") return Severity::High;
  return std::nullopt;
}

bool Regulation::operator==(const Regulation& other) const {
  const Node& a = node_;
  const Node& b = other.node_;
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Top>(a)) return true;
  if (auto* l = std::get_if<Achieve>(&a)) return l->atom == std::get<Achieve>(b).atom;
  if (auto* l = std::get_if<Before>(&a)) {
    const auto& r = std::get<Before>(b);
    return l->earlier == r.earlier && l->later == r.later;
  }
  if (auto* l = std::get_if<Response>(&a)) {
    const auto& r = std::get<Response>(b);
    return l->trigger == r.trigger && l->reaction == r.reaction;
  }
  if (auto* l = std::get_if<Coexist>(&a)) {
    const auto& r = std::get<Coexist>(b);
    return l->left == r.left && l->right == r.right;
  }
  if (auto* l = std::get_if<And>(&a)) {
    const auto& r = std::get<And>(b);
    return *l->left == *r.left && *l->right == *r.right;
  }
  const auto& l = std::get<Or>(a);
  const auto& r = std::get<Or>(b);
  return *l.left == *r.left && *l.right == *r.right;
}

Regulation parse_regulation(std::string_view text) {
  detail::Lexer lx(text);
  Regulation r = detail::parse_regulation_stream(lx);
  if (!lx.at_end())
    throw SyntaxError("unexpected input after regulation", lx.peek().pos);
  return r;
}

namespace {

// Nesting context for parenthesization: a child is wrapped when printing
// it bare would reparse with a different shape (lower-precedence child,
// or same-operator child in right position under left associativity).
enum class Slot { Root, AndLeft, AndRight, OrLeft, OrRight };

void print(const Regulation& r, Slot slot, std::string& out) {
  const auto& n = r.node();
  if (std::holds_alternative<Regulation::Top>(n)) {
    out += "top";
    return;
  }
  if (auto* a = std::get_if<Regulation::Achieve>(&n)) {
    out += "achieve " + a->atom.str();
    return;
  }
  if (auto* b = std::get_if<Regulation::Before>(&n)) {
    out += b->earlier.str() + " before " + b->later.str();
    return;
  }
  if (auto* b = std::get_if<Regulation::Response>(&n)) {
    out += b->trigger.str() + " response " + b->reaction.str();
    return;
  }
  if (auto* b = std::get_if<Regulation::Coexist>(&n)) {
    out += b->left.str() + " coexist " + b->right.str();
    return;
  }
  if (auto* b = std::get_if<Regulation::And>(&n)) {
    bool wrap = slot == Slot::AndRight;
    if (wrap) out += "(";
    print(*b->left, Slot::AndLeft, out);
    out += " and ";
    print(*b->right, Slot::AndRight, out);
    if (wrap) out += ")";
    return;
  }
  const auto& b = std::get<Regulation::Or>(n);
  bool wrap = slot == Slot::AndLeft || slot == Slot::AndRight || slot == Slot::OrRight;
  if (wrap) out += "(";
  print(*b.left, Slot::OrLeft, out);
  out += " or ";
  print(*b.right, Slot::OrRight, out);
  if (wrap) out += ")";
}

}  // namespace

std::string pretty_print(const Regulation& r) {
  std::string out;
  print(r, Slot::Root, out);
  return out;
}

bool eval_on_trace(const Regulation& r, const FirstOccurrence& first) {
  const auto& n = r.node();
  auto at = [&](const Atom& a) -> const std::size_t* {
    auto it = first.find(a);
    return it == first.end() ? nullptr : &it->second;
  };
  if (std::holds_alternative<Regulation::Top>(n)) return true;
  if (auto* x = std::get_if<Regulation::Achieve>(&n)) return at(x->atom) != nullptr;
  if (auto* x = std::get_if<Regulation::Before>(&n)) {
    const std::size_t* b = at(x->later);
    if (!b) return true;
    const std::size_t* a = at(x->earlier);
    return a && *a < *b;
  }
  if (auto* x = std::get_if<Regulation::Response>(&n)) {
    const std::size_t* a = at(x->trigger);
    if (!a) return true;
    const std::size_t* b = at(x->reaction);
    return b && *b >= *a;
  }
  if (auto* x = std::get_if<Regulation::Coexist>(&n))
    return (at(x->left) != nullptr) == (at(x->right) != nullptr);
  if (auto* x = std::get_if<Regulation::And>(&n))
    return eval_on_trace(*x->left, first) && eval_on_trace(*x->right, first);
  const auto& x = std::get<Regulation::Or>(n);
  return eval_on_trace(*x.left, first) || eval_on_trace(*x.right, first);
}

bool eval_on_trace(const Regulation& r, const std::vector<std::set<Atom>>& frames) {
  FirstOccurrence first;
  for (std::size_t i = 0; i < frames.size(); ++i)
    for (const Atom& a : frames[i]) first.emplace(a, i);
  return eval_on_trace(r, first);
}

std::string to_ltlf(const Regulation& r) {
  const auto& n = r.node();
  if (std::holds_alternative<Regulation::Top>(n)) return "true";
  if (auto* x = std::get_if<Regulation::Achieve>(&n)) return "F " + x->atom.str();
  if (auto* x = std::get_if<Regulation::Before>(&n)) {
    std::string a = x->earlier.str(), b = x->later.str();
    return "(!" + b + " W " + a + ") & !(first(" + a + ")=first(" + b + "))";
  }
  if (auto* x = std::get_if<Regulation::Response>(&n))
    return "G(" + x->trigger.str() + " -> F " + x->reaction.str() + ")";
  if (auto* x = std::get_if<Regulation::Coexist>(&n))
    return "F " + x->left.str() + " <-> F " + x->right.str();
  if (auto* x = std::get_if<Regulation::And>(&n))
    return "(" + to_ltlf(*x->left) + ") & (" + to_ltlf(*x->right) + ")";
  const auto& x = std::get<Regulation::Or>(n);
  return "(" + to_ltlf(*x.left) + ") | (" + to_ltlf(*x.right) + ")";
}

std::vector<Atom> atoms_of(const Regulation& r) {
  std::vector<Atom> out;
  auto remember = [&](const Atom& a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  struct Walk {
    decltype(remember)& add;
    void operator()(const Regulation& r) {
      const auto& n = r.node();
      if (auto* x = std::get_if<Regulation::Achieve>(&n)) {
        add(x->atom);
      } else if (auto* x = std::get_if<Regulation::Before>(&n)) {
        add(x->earlier);
        add(x->later);
      } else if (auto* x = std::get_if<Regulation::Response>(&n)) {
        add(x->trigger);
        add(x->reaction);
      } else if (auto* x = std::get_if<Regulation::Coexist>(&n)) {
        add(x->left);
        add(x->right);
      } else if (auto* x = std::get_if<Regulation::And>(&n)) {
        (*this)(*x->left);
        (*this)(*x->right);
      } else if (auto* x = std::get_if<Regulation::Or>(&n)) {
        (*this)(*x->left);
        (*this)(*x->right);
      }
    }
  } walk{remember};
  walk(r);
  return out;
}

}  // namespace regula
