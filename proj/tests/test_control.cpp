#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "regula/control.hpp"
#include "regula/errors.hpp"
#include "support/oracle.hpp"

using namespace regula;
using regula::testing::scenario_protocol;

namespace {

Atom A(const char* n) { return Atom::fact(n); }

Regulation reg(const std::string& s) { return parse_regulation(s); }

// Two roles with disjoint powers over four declared atoms.
Protocol powers_protocol() {
  Protocol p;
  p.name = "powers";
  p.roles = {"r", "s", "t"};
  p.declared_atoms = {A("a"), A("b"), A("u"), A("q")};
  p.actions.push_back({"make-x", "r", {A("x"), A("y")}, {}});
  p.actions.push_back({"make-z", "s", {A("z")}, {}});
  return p;
}

SupportContext bare_context(const Protocol& p) {
  SupportContext ctx;
  ctx.protocol = &p;
  ctx.capabilities = capabilities_of(p, identity_binding(p));
  return ctx;
}

CommitmentInstance instance(const CommitmentTemplate& t, CommitmentState st) {
  return {t.label, t.debtor, t.creditor, t.antecedent, t.consequent, st, 0, 0, false};
}

}  // namespace

TEST_CASE("capabilities union the effects of every bound role") {
  Protocol p = powers_protocol();
  RoleBinding b;
  b["m"] = {"r", "s"};
  b["n"] = {};
  auto caps = capabilities_of(p, b);
  CHECK(caps.at("m").achievable == std::set<Atom>{A("x"), A("y"), A("z")});
  CHECK(caps.at("n").achievable.empty());

  RoleBinding bad;
  bad["m"] = {"ghost"};
  CHECK_THROWS_WITH_AS(capabilities_of(p, bad),
                       "agent 'm' bound to undeclared role 'ghost'", UnknownRole);
}

TEST_CASE("a consequent entails an achievement only when every branch forces it") {
  CHECK(entails_achievement(reg("achieve a"), A("a")));
  CHECK_FALSE(entails_achievement(reg("achieve a"), A("b")));
  CHECK(entails_achievement(reg("achieve a and achieve b"), A("a")));
  CHECK(entails_achievement(reg("achieve a and achieve b"), A("b")));
  CHECK_FALSE(entails_achievement(reg("achieve a and achieve b"), A("c")));
  CHECK_FALSE(entails_achievement(reg("achieve a or achieve b"), A("a")));
  CHECK(entails_achievement(reg("achieve a or (achieve a and achieve b)"), A("a")));
  CHECK_FALSE(entails_achievement(reg("a before b"), A("a")));
  CHECK_FALSE(entails_achievement(reg("a response b"), A("b")));
  CHECK_FALSE(entails_achievement(reg("a coexist b"), A("a")));
  CHECK_FALSE(entails_achievement(reg("top"), A("a")));
}

TEST_CASE("control covers own capability, prior truth, and nothing else by default") {
  Protocol p = powers_protocol();
  SupportContext ctx = bare_context(p);

  CHECK(control("r", reg("top"), ctx));
  CHECK(control("r", reg("achieve x"), ctx));
  CHECK(control("r", reg("achieve x and achieve y"), ctx));
  CHECK_FALSE(control("r", reg("achieve z"), ctx));  // z is s's power
  CHECK(control("s", reg("achieve z"), ctx));
  CHECK(control("r", reg("achieve z or achieve x"), ctx));
  CHECK_FALSE(control("r", reg("achieve z and achieve x"), ctx));

  ctx.state.assert_atom(A("a"), 0, 0);  // already true counts as controlled
  CHECK(control("r", reg("achieve a"), ctx));
  CHECK_FALSE(control("s", reg("achieve b"), ctx));
}

TEST_CASE("ordering is controlled only while the later atom has not happened") {
  Protocol p = powers_protocol();
  SupportContext ctx = bare_context(p);
  CHECK(control("r", reg("x before y"), ctx));
  CHECK_FALSE(control("r", reg("x before z"), ctx));  // cannot produce z

  ctx.state.assert_atom(A("y"), 0, 0);
  CHECK_FALSE(control("r", reg("x before y"), ctx));  // y already true: order frozen
  ControlDerivation d = control_derivation("r", reg("x before y"), ctx);
  CHECK(d.rule == "order frozen: 'y' already true");

  // Even a satisfied order is frozen; control is about steering the future.
  SupportContext done = bare_context(p);
  done.state.assert_atom(A("x"), 0, 0);
  done.state.assert_atom(A("y"), 1, 1);
  CHECK_FALSE(control("r", reg("x before y"), done));
}

TEST_CASE("response asks only for the reaction, coexistence for both sides") {
  Protocol p = powers_protocol();
  SupportContext ctx = bare_context(p);
  CHECK(control("r", reg("z response x"), ctx));  // trigger z out of reach: fine
  CHECK_FALSE(control("r", reg("x response z"), ctx));
  CHECK(control("r", reg("x coexist y"), ctx));
  CHECK_FALSE(control("r", reg("x coexist z"), ctx));
}

TEST_CASE("atoms outside the protocol fail control evaluation eagerly") {
  Protocol p = powers_protocol();
  SupportContext ctx = bare_context(p);
  CHECK_THROWS_WITH_AS(control("r", reg("achieve ghost"), ctx),
                       "atom 'ghost' does not resolve in the protocol", UnresolvedAtom);
  // Short-circuiting must not hide the breach.
  CHECK_THROWS_AS(control("r", reg("achieve x or achieve ghost"), ctx), UnresolvedAtom);
  CHECK_THROWS_AS(control_derivation("r", reg("achieve x or achieve ghost"), ctx),
                  UnresolvedAtom);
}

TEST_CASE("commitments toward the agent extend its reach") {
  Protocol p = powers_protocol();
  p.commitments.push_back({"help", "s", "r", Regulation::top(), reg("achieve z")});
  SupportContext ctx = SupportContext::hypothetical(p, identity_binding(p));
  CHECK(control("r", reg("achieve z"), ctx));
  CHECK_FALSE(control("t", reg("achieve z"), ctx));  // directed at r, not t

  ControlDerivation d = control_derivation("r", reg("achieve z"), ctx);
  CHECK(d.holds);
  CHECK(d.rule == "supported by commitment help from s (antecedent controlled)");
}

TEST_CASE("conditional support needs a controllable antecedent, detached support is direct") {
  Protocol p = powers_protocol();
  p.commitments.push_back({"deal", "s", "r", reg("achieve x"), reg("achieve z")});
  SupportContext ctx = SupportContext::hypothetical(p, identity_binding(p));
  CHECK(control("r", reg("achieve z"), ctx));  // r can trigger x itself

  Protocol q = powers_protocol();
  q.commitments.push_back({"deal", "s", "r", reg("achieve z"), reg("achieve q")});
  SupportContext ctx2 = SupportContext::hypothetical(q, identity_binding(q));
  CHECK_FALSE(control("r", reg("achieve q"), ctx2));  // antecedent z out of r's reach

  // The same commitment already detached no longer needs its antecedent.
  SupportContext ctx3 = bare_context(q);
  ctx3.commitments.push_back(instance(q.commitments[0], CommitmentState::Detached));
  CHECK(control("r", reg("achieve q"), ctx3));
  ControlDerivation d = control_derivation("r", reg("achieve q"), ctx3);
  CHECK(d.rule == "supported by commitment deal from s (detached)");
}

TEST_CASE("mutually conditional support bottoms out false") {
  Protocol p = powers_protocol();
  p.commitments.push_back({"c1", "s", "r", reg("achieve u"), reg("achieve b")});
  p.commitments.push_back({"c2", "t", "r", reg("achieve b"), reg("achieve u")});
  SupportContext cyc = SupportContext::hypothetical(p, identity_binding(p));
  CHECK_FALSE(control("r", reg("achieve b"), cyc));
  CHECK_FALSE(control("r", reg("achieve u"), cyc));

  // Grounding one antecedent unlocks the whole chain.
  p.commitments[1].antecedent = Regulation::top();
  SupportContext grounded = SupportContext::hypothetical(p, identity_binding(p));
  CHECK(control("r", reg("achieve u"), grounded));
  CHECK(control("r", reg("achieve b"), grounded));
}

TEST_CASE("growing capabilities or support never loses control") {
  Protocol p;
  p.name = "grid";
  p.roles = {"g1", "g2", "g3"};
  p.declared_atoms = {A("a1"), A("a2"), A("a3"), A("a4")};

  const Regulation exprs[] = {
      reg("achieve a1"),          reg("achieve a3"),
      reg("a1 before a3"),        reg("a2 response a4"),
      reg("a3 coexist a4"),       reg("achieve a1 and achieve a4"),
      reg("achieve a2 or achieve a3"),
      reg("a1 before a2 and (achieve a3 or achieve a4)"),
  };
  const CommitmentInstance pool[] = {
      {"p1", "g2", "g1", reg("achieve a2"), reg("achieve a3"),
       CommitmentState::Conditional, 0, 0, false},
      {"p2", "g3", "g1", Regulation::top(), reg("achieve a4"),
       CommitmentState::Conditional, 0, 0, false},
      {"p3", "g2", "g1", reg("achieve a3"), reg("achieve a4"),
       CommitmentState::Conditional, 0, 0, false},
  };
  const Atom caps[] = {A("a1"), A("a2")};

  for (unsigned capbits = 0; capbits < 4; ++capbits) {
    for (unsigned combits = 0; combits < 8; ++combits) {
      SupportContext ctx;
      ctx.protocol = &p;
      CapabilityProfile prof{"g1", {}};
      for (unsigned i = 0; i < 2; ++i)
        if (capbits & (1u << i)) prof.achievable.insert(caps[i]);
      ctx.capabilities.emplace("g1", prof);
      for (unsigned i = 0; i < 3; ++i)
        if (combits & (1u << i)) ctx.commitments.push_back(pool[i]);

      for (const Regulation& e : exprs) {
        bool base = control("g1", e, ctx);
        for (unsigned i = 0; i < 2; ++i) {
          if (capbits & (1u << i)) continue;
          SupportContext more = ctx;
          more.capabilities.at("g1").achievable.insert(caps[i]);
          if (base) CHECK(control("g1", e, more));
        }
        for (unsigned i = 0; i < 3; ++i) {
          if (combits & (1u << i)) continue;
          SupportContext more = ctx;
          more.commitments.push_back(pool[i]);
          if (base) CHECK(control("g1", e, more));
        }
      }
    }
  }
}

TEST_CASE("safety judges the debtor without the commitment's own help") {
  Protocol p = powers_protocol();
  // s promises z, which s can produce: safe.
  p.commitments.push_back({"good", "s", "r", Regulation::top(), reg("achieve z")});
  // s promises x, which only r can produce and nobody promises s: unsafe.
  p.commitments.push_back({"bad", "s", "r", Regulation::top(), reg("achieve x")});
  SupportContext ctx = SupportContext::hypothetical(p, identity_binding(p));
  CHECK(safe(instance(p.commitments[0], CommitmentState::Conditional), ctx));
  CHECK_FALSE(safe(instance(p.commitments[1], CommitmentState::Conditional), ctx));

  // A commitment must not vouch for itself: q is only ever promised by
  // this very commitment, so its debtor has no independent path to it.
  Protocol self;
  self.name = "self";
  self.roles = {"r", "s"};
  self.declared_atoms = {A("q")};
  self.actions.push_back({"noop", "r", {A("n")}, {}});
  self.commitments.push_back({"loop", "s", "r", Regulation::top(), reg("achieve q")});
  SupportContext sctx = SupportContext::hypothetical(self, identity_binding(self));
  CommitmentInstance loop = instance(self.commitments[0], CommitmentState::Conditional);
  CHECK_FALSE(safe(loop, sctx));

  SupportContext plain = sctx;
  plain.commitments.clear();
  CHECK(safe(loop, plain) == safe(loop, sctx));  // presence of itself is irrelevant

  CHECK_THROWS_WITH_AS(safe(instance(p.commitments[0], CommitmentState::Discharged), ctx),
                       "commitment 'good' is already settled", TerminalCommitment);
  CHECK_THROWS_AS(safe_derivation(instance(p.commitments[1], CommitmentState::Violated), ctx),
                  TerminalCommitment);
}

TEST_CASE("a debtor backed by a third party is safe through the chain") {
  Protocol p = scenario_protocol("insurance-procedure");
  SupportContext ctx = SupportContext::hypothetical(p, identity_binding(p));
  for (const char* label : {"c-pay", "c-settle", "c-bill"}) {
    const CommitmentTemplate* t = p.find_commitment(label);
    REQUIRE(t != nullptr);
    CAPTURE(label);
    CHECK(safe(instance(*t, CommitmentState::Conditional), ctx));
  }

  Protocol cut = scenario_protocol("insurance-procedure-nosupport");
  SupportContext cctx = SupportContext::hypothetical(cut, identity_binding(cut));
  CHECK(safe(instance(*cut.find_commitment("c-pay"), CommitmentState::Conditional), cctx));
  CHECK_FALSE(
      safe(instance(*cut.find_commitment("c-settle"), CommitmentState::Conditional), cctx));
}

TEST_CASE("derivations print one indented claim per line") {
  Protocol p = scenario_protocol("insurance-procedure");
  SupportContext ctx = SupportContext::hypothetical(p, identity_binding(p));
  const CommitmentTemplate* t = p.find_commitment("c-settle");
  REQUIRE(t != nullptr);
  ControlDerivation d =
      safe_derivation(instance(*t, CommitmentState::Conditional), ctx);
  std::string text = render(d);
  CHECK(text.substr(0, text.find('\n')) ==
        "control(ins, bill before pay and achieve pay) = true  [conjunction]");
  CHECK(text.find("\n  control(ins, bill before pay) = true  "
                  "[ordering controlled when both atoms are]\n") != std::string::npos);
  CHECK(text.find("supported by commitment c-bill from surgeon (antecedent controlled)") !=
        std::string::npos);
  CHECK(text.find("[own capability]") != std::string::npos);
  CHECK(text.back() == '\n');
}
