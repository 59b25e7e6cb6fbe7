#include "regula/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "regula/errors.hpp"

namespace regula {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PermSat: return "PermSat";
    case Verdict::PermViol: return "PermViol";
    case Verdict::TempSat: return "TempSat";
    case Verdict::TempViol: return "TempViol";
  }
  return "";
}

std::uint32_t MonitorAutomaton::mask_of(const std::vector<Atom>& newly) const {
  std::uint32_t mask = 0;
  for (const Atom& a : newly) {
    auto it = std::find(atoms_.begin(), atoms_.end(), a);
    if (it != atoms_.end())
      mask |= 1u << static_cast<std::uint32_t>(it - atoms_.begin());
  }
  return mask;
}

namespace {

// One temporal operator as a small machine over the global atom mask.
// States encode enough history that a stale (already counted) atom bit
// never changes behavior, so arbitrary mask sequences are equivalent to
// feasible monotone ones.
struct Leaf {
  enum class Kind { Top, Achieve, Before, Response, Coexist } kind;
  std::uint32_t a = 0;  // bit of the first atom
  std::uint32_t b = 0;  // bit of the second atom

  std::uint8_t states() const {
    switch (kind) {
      case Kind::Top: return 1;
      case Kind::Achieve: return 2;
      case Kind::Before: return 3;
      case Kind::Response: return 5;
      case Kind::Coexist: return 4;
    }
    return 1;
  }

  std::uint8_t step(std::uint8_t s, std::uint32_t mask) const {
    bool ha = mask & a, hb = mask & b;
    switch (kind) {
      case Kind::Top:
        return 0;
      case Kind::Achieve:
        return s == 0 && ha ? 1 : s;
      case Kind::Before:
        // 0 neither, 1 earlier-first (sat), 2 broken
        if (s != 0) return s;
        if (hb) return 2;  // later arrived first, or tied with earlier
        if (ha) return 1;
        return 0;
      case Kind::Response:
        // 0 neither, 1 trigger waiting, 2 reaction-first (no trigger yet),
        // 3 answered, 4 broken (trigger after a stale reaction)
        switch (s) {
          case 0:
            if (ha && hb) return 3;  // same-frame reaction counts
            if (ha) return 1;
            if (hb) return 2;
            return 0;
          case 1: return hb ? 3 : 1;
          case 2: return ha ? 4 : 2;
          default: return s;
        }
      case Kind::Coexist:
        // 0 neither, 1 left only, 2 right only, 3 both
        switch (s) {
          case 0:
            if (ha && hb) return 3;
            if (ha) return 1;
            if (hb) return 2;
            return 0;
          case 1: return hb ? 3 : 1;
          case 2: return ha ? 3 : 2;
          default: return 3;
        }
    }
    return s;
  }

  bool accepts(std::uint8_t s) const {
    switch (kind) {
      case Kind::Top: return true;
      case Kind::Achieve: return s == 1;
      case Kind::Before: return s != 2;
      case Kind::Response: return s == 0 || s == 2 || s == 3;
      case Kind::Coexist: return s == 0 || s == 3;
    }
    return true;
  }
};

// Boolean structure over the leaves: leaf index, or and/or of children.
struct Shape {
  enum class Kind { Leaf, And, Or } kind;
  std::size_t leaf = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

struct Build {
  std::vector<Atom> atoms;
  std::vector<Leaf> leaves;
  std::vector<Shape> shapes;

  std::uint32_t bit_of(const Atom& a) {
    auto it = std::find(atoms.begin(), atoms.end(), a);
    if (it == atoms.end()) {
      atoms.push_back(a);
      it = atoms.end() - 1;
    }
    return 1u << static_cast<std::uint32_t>(it - atoms.begin());
  }

  std::size_t build(const Regulation& r) {
    const auto& n = r.node();
    auto leaf = [&](Leaf l) {
      leaves.push_back(l);
      shapes.push_back({Shape::Kind::Leaf, leaves.size() - 1, 0, 0});
      return shapes.size() - 1;
    };
    if (std::holds_alternative<Regulation::Top>(n))
      return leaf({Leaf::Kind::Top, 0, 0});
    if (auto* x = std::get_if<Regulation::Achieve>(&n))
      return leaf({Leaf::Kind::Achieve, bit_of(x->atom), 0});
    if (auto* x = std::get_if<Regulation::Before>(&n))
      return leaf({Leaf::Kind::Before, bit_of(x->earlier), bit_of(x->later)});
    if (auto* x = std::get_if<Regulation::Response>(&n))
      return leaf({Leaf::Kind::Response, bit_of(x->trigger), bit_of(x->reaction)});
    if (auto* x = std::get_if<Regulation::Coexist>(&n))
      return leaf({Leaf::Kind::Coexist, bit_of(x->left), bit_of(x->right)});
    if (auto* x = std::get_if<Regulation::And>(&n)) {
      std::size_t l = build(*x->left), rr = build(*x->right);
      shapes.push_back({Shape::Kind::And, 0, l, rr});
      return shapes.size() - 1;
    }
    const auto& x = std::get<Regulation::Or>(n);
    std::size_t l = build(*x.left), rr = build(*x.right);
    shapes.push_back({Shape::Kind::Or, 0, l, rr});
    return shapes.size() - 1;
  }

  bool accepts(std::size_t shape, const std::vector<std::uint8_t>& tuple) const {
    const Shape& s = shapes[shape];
    switch (s.kind) {
      case Shape::Kind::Leaf: return leaves[s.leaf].accepts(tuple[s.leaf]);
      case Shape::Kind::And: return accepts(s.left, tuple) && accepts(s.right, tuple);
      case Shape::Kind::Or: return accepts(s.left, tuple) || accepts(s.right, tuple);
    }
    return false;
  }
};

}  // namespace

MonitorAutomaton compile_monitor(const Regulation& expr) {
  Build b;
  std::size_t root = b.build(expr);
  if (b.atoms.size() > 16)
    throw Error("regulation mentions more than 16 distinct atoms");

  const std::size_t mask_count = std::size_t{1} << b.atoms.size();
  const std::size_t nleaves = b.leaves.size();

  // Explicit product over reachable leaf-state tuples, ids in BFS order.
  std::map<std::vector<std::uint8_t>, MonitorAutomaton::State> ids;
  std::vector<std::vector<std::uint8_t>> tuples;
  std::deque<MonitorAutomaton::State> work;
  std::vector<MonitorAutomaton::State> next;

  std::vector<std::uint8_t> init(nleaves, 0);
  ids.emplace(init, 0);
  tuples.push_back(init);
  work.push_back(0);
  std::vector<bool> acc = {b.accepts(root, init)};

  while (!work.empty()) {
    MonitorAutomaton::State s = work.front();
    work.pop_front();
    std::vector<std::uint8_t> cur = tuples[s];
    if (next.size() < (std::size_t(s) + 1) * mask_count)
      next.resize((std::size_t(s) + 1) * mask_count);
    for (std::size_t mask = 0; mask < mask_count; ++mask) {
      std::vector<std::uint8_t> dst(nleaves);
      for (std::size_t l = 0; l < nleaves; ++l)
        dst[l] = b.leaves[l].step(cur[l], static_cast<std::uint32_t>(mask));
      auto [it, fresh] = ids.emplace(dst, static_cast<MonitorAutomaton::State>(tuples.size()));
      if (fresh) {
        tuples.push_back(dst);
        acc.push_back(b.accepts(root, dst));
        work.push_back(it->second);
      }
      next[s * mask_count + mask] = it->second;
    }
  }

  const std::size_t nstates = tuples.size();
  next.resize(nstates * mask_count);

  // Reachability closure per state: can an accepting / rejecting
  // end-evaluation still be reached (the state itself counts as the
  // empty extension).
  std::vector<Verdict> verdicts(nstates);
  for (std::size_t s = 0; s < nstates; ++s) {
    std::vector<bool> seen(nstates, false);
    std::deque<std::size_t> q = {s};
    seen[s] = true;
    bool reach_acc = false, reach_rej = false;
    while (!q.empty() && !(reach_acc && reach_rej)) {
      std::size_t v = q.front();
      q.pop_front();
      (acc[v] ? reach_acc : reach_rej) = true;
      for (std::size_t mask = 0; mask < mask_count; ++mask) {
        std::size_t d = next[v * mask_count + mask];
        if (!seen[d]) {
          seen[d] = true;
          q.push_back(d);
        }
      }
    }
    if (acc[s])
      verdicts[s] = reach_rej ? Verdict::TempSat : Verdict::PermSat;
    else
      verdicts[s] = reach_acc ? Verdict::TempViol : Verdict::PermViol;
  }

  MonitorAutomaton m;
  m.atoms_ = b.atoms;
  m.verdicts_ = std::move(verdicts);
  m.next_ = std::move(next);
  m.mask_count_ = mask_count;
  m.init_ = 0;
  return m;
}

}  // namespace regula
