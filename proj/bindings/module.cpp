#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "regula/cli.hpp"
#include "regula/compliance.hpp"
#include "regula/control.hpp"
#include "regula/errors.hpp"
#include "regula/model.hpp"
#include "regula/protocol_text.hpp"
#include "regula/regulation.hpp"
#include "regula/scenarios.hpp"
#include "regula/session.hpp"

namespace py = pybind11;

namespace {

using namespace regula;

py::list violations_to_py(const std::vector<ViolationRecord>& vs) {
  py::list out;
  for (const ViolationRecord& v : vs) {
    py::dict d;
    d["id"] = v.id;
    d["index"] = v.event_index;
    d["severity"] = std::string(to_keyword(v.severity));
    d["culprit"] = v.culprit;
    out.append(d);
  }
  return out;
}

py::dict step_to_py(const StepReport& rep) {
  py::dict d;
  d["index"] = rep.event_index;
  d["agent"] = rep.event.agent;
  d["action"] = rep.event.action;
  py::list atoms;
  for (const Atom& a : rep.became_true) atoms.append(a.str());
  d["became_true"] = atoms;
  py::list life;
  for (const LifecycleNote& n : rep.lifecycle)
    life.append(py::make_tuple(n.label, std::string(to_keyword(n.what))));
  d["lifecycle"] = life;
  py::dict verdicts;
  for (const auto& [id, v] : rep.verdict_changes) verdicts[py::str(id)] = std::string(to_string(v));
  d["verdicts"] = verdicts;
  d["violations"] = violations_to_py(rep.violations);
  return d;
}

py::dict final_to_py(const FinalReport& fr) {
  py::dict d;
  d["events"] = fr.events;
  py::list cons;
  for (const ConstraintOutcome& c : fr.constraints)
    cons.append(py::make_tuple(c.id, std::string(to_string(c.verdict)), c.active,
                               std::string(to_keyword(c.severity))));
  d["constraints"] = cons;
  py::list com;
  for (const CommitmentInstance& c : fr.commitments)
    com.append(py::make_tuple(c.label, std::string(c.display_state())));
  d["commitments"] = com;
  d["violations"] = violations_to_py(fr.violations);
  return d;
}

py::dict result_to_py(const CompatibilityResult& res) {
  py::dict d;
  d["compatible"] = res.compatible;
  py::list w;
  for (const Event& e : res.witness) w.append(py::make_tuple(e.agent, e.action));
  d["witness"] = w;
  d["bound_used"] = res.bound_used;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Commitment-protocol engine: temporal regulations, monitoring, analysis";

  py::register_exception<Error>(m, "EngineError");

  py::class_<Regulation>(m, "Regulation")
      .def("__str__", [](const Regulation& r) { return pretty_print(r); })
      .def("__repr__",
           [](const Regulation& r) { return "Regulation('" + pretty_print(r) + "')"; })
      .def("__eq__", [](const Regulation& a, const Regulation& b) { return a == b; })
      .def("to_ltlf", [](const Regulation& r) { return to_ltlf(r); })
      .def("atoms", [](const Regulation& r) {
        std::vector<std::string> out;
        for (const Atom& a : atoms_of(r)) out.push_back(a.str());
        return out;
      });

  m.def("parse_regulation", [](const std::string& text) { return parse_regulation(text); },
        py::arg("text"), "Parse regulation text into its expression tree.");

  m.def(
      "eval_on_trace",
      [](const Regulation& r, const std::vector<std::vector<std::string>>& frames) {
        std::vector<std::set<Atom>> fs;
        fs.reserve(frames.size());
        for (const auto& frame : frames) {
          std::set<Atom> f;
          for (const std::string& a : frame) f.insert(parse_atom(a));
          fs.push_back(std::move(f));
        }
        return eval_on_trace(r, fs);
      },
      py::arg("regulation"), py::arg("frames"),
      "Finite-trace truth over frames of atoms that became true together.");

  py::class_<Protocol>(m, "Protocol")
      .def_property_readonly("name", [](const Protocol& p) { return p.name; })
      .def_property_readonly("roles", [](const Protocol& p) { return p.roles; })
      .def_property_readonly("actions",
                             [](const Protocol& p) {
                               std::vector<std::string> out;
                               for (const auto& a : p.actions) out.push_back(a.name);
                               return out;
                             })
      .def_property_readonly("constraints",
                             [](const Protocol& p) {
                               std::vector<std::string> out;
                               for (const auto& c : p.constraints) out.push_back(c.id);
                               return out;
                             })
      .def_property_readonly("commitments",
                             [](const Protocol& p) {
                               std::vector<std::string> out;
                               for (const auto& c : p.commitments) out.push_back(c.label);
                               return out;
                             })
      .def("__repr__", [](const Protocol& p) { return "Protocol('" + p.name + "')"; });

  m.def("parse_protocol", &parse_protocol_text, py::arg("text"),
        "Parse and validate protocol text.");

  py::class_<TraceSession>(m, "TraceSession")
      .def(py::init<Protocol>(), py::arg("protocol"))
      .def("step",
           [](TraceSession& s, const std::string& agent, const std::string& action) {
             return step_to_py(s.step({agent, action}));
           },
           py::arg("agent"), py::arg("action"))
      .def("close", [](const TraceSession& s) { return final_to_py(s.close()); })
      .def("set_constraint_active", &TraceSession::set_constraint_active, py::arg("id"),
           py::arg("active"))
      .def("fork", [](const TraceSession& s) { return TraceSession(s); })
      .def_property_readonly("events", &TraceSession::events)
      .def_property_readonly("violations",
                             [](const TraceSession& s) { return violations_to_py(s.violations()); });

  m.def(
      "compatible_check",
      [](const std::string& regulation, const TraceSession& session,
         std::optional<std::size_t> bound) {
        return result_to_py(compatible_check(parse_regulation(regulation), session, bound));
      },
      py::arg("regulation"), py::arg("session"), py::arg("bound") = std::nullopt,
      "Search for a continuation satisfying the regulation and the active constraints.");

  m.def(
      "compatible_check_commitment",
      [](const std::string& label, const TraceSession& session, std::optional<std::size_t> bound) {
        return result_to_py(compatible_check_commitment(label, session, bound));
      },
      py::arg("label"), py::arg("session"), py::arg("bound") = std::nullopt);

  m.def(
      "safe_hypothetical",
      [](const Protocol& p, const std::string& label) {
        const SupportContext ctx = SupportContext::hypothetical(p, identity_binding(p));
        for (const CommitmentInstance& c : ctx.commitments)
          if (c.label == label) return safe(c, ctx);
        throw UnknownCommitmentLabel("no commitment labelled '" + label + "'");
      },
      py::arg("protocol"), py::arg("label"),
      "Whether the debtor could guarantee discharge, judged before any event.");

  m.def("scenario_names", [] {
    std::vector<std::string> out;
    for (const Scenario& s : scenarios()) out.push_back(s.name);
    return out;
  });

  m.def(
      "scenario_files",
      [](const std::string& name) {
        const Scenario* s = find_scenario(name);
        if (!s) throw Error("no scenario named '" + name + "'");
        py::dict d;
        for (const ScenarioFile& f : s->files) d[py::str(f.basename)] = f.content;
        return d;
      },
      py::arg("name"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command; returns (exit_code, stdout, stderr).");
}
