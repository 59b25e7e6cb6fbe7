#include "regula/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "regula/compliance.hpp"
#include "regula/control.hpp"
#include "regula/errors.hpp"
#include "regula/model.hpp"
#include "regula/protocol_text.hpp"
#include "regula/regulation.hpp"
#include "regula/scenarios.hpp"
#include "regula/session.hpp"

namespace regula {

namespace {

// All stdout goes through this gate so --quiet silences every command
// uniformly; diagnostics stay on stderr.
struct Printer {
  std::ostream& out;
  bool quiet = false;

  template <typename T>
  const Printer& operator<<(const T& v) const {
    if (!quiet) out << v;
    return *this;
  }
};

std::string count_noun(std::size_t n, const char* noun) {
  std::string s = std::to_string(n) + " " + noun;
  if (n != 1) s += "s";
  return s;
}

std::string join_path(const std::string& dir, const std::string& base) {
  return (std::filesystem::path(dir) / base).string();
}

// Replays parsed trace items into the session, attributing any
// constitutive error to its source line.
void replay(TraceSession& session, const std::vector<TraceItem>& items,
            const std::function<void(const TraceItem&, const StepReport*)>& observe) {
  for (const TraceItem& item : items) {
    try {
      if (item.kind == TraceItem::Kind::Event) {
        StepReport rep = session.step(item.event);
        if (observe) observe(item, &rep);
      } else {
        session.set_constraint_active(item.constraint, item.kind == TraceItem::Kind::Activate);
        if (observe) observe(item, nullptr);
      }
    } catch (const FileParseError&) {
      throw;
    } catch (const Error& e) {
      throw FileParseError(e.what(), item.line);
    }
  }
}

RoleBinding binding_from(const Protocol& p, const std::vector<std::string>& pairs) {
  if (pairs.empty()) return identity_binding(p);
  RoleBinding b;
  for (const std::string& pair : pairs) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      throw ValidationError("binding '" + pair + "' is not of the form agent=role");
    b[pair.substr(0, eq)].insert(pair.substr(eq + 1));
  }
  return b;
}

int cmd_validate(const std::string& path, const std::string& format, const Printer& p) {
  const Protocol proto = load_protocol_file(path);
  if (format == "tsv") {
    p << "SUMMARY\t" << proto.roles.size() << "\t" << proto.actions.size() << "\t"
      << proto.constraints.size() << "\t" << proto.commitments.size() << "\n";
    return 0;
  }
  std::string line = count_noun(proto.roles.size(), "role") + ", " +
                     count_noun(proto.actions.size(), "action") + ", " +
                     count_noun(proto.constraints.size(), "constraint");
  if (!proto.commitments.empty())
    line += ", " + count_noun(proto.commitments.size(), "commitment");
  p << line << "\n";
  return 0;
}

void print_step_text(const Printer& p, const StepReport& rep) {
  p << "[" << rep.event_index << "] " << rep.event.agent << " " << rep.event.action << "\n";
  for (const Atom& a : rep.became_true) p << "  + " << a.str() << "\n";
  for (const LifecycleNote& n : rep.lifecycle)
    p << "  * " << n.label << " " << to_keyword(n.what) << "\n";
  for (const auto& [id, v] : rep.verdict_changes) p << "  " << id << " now " << to_string(v) << "\n";
  for (const ViolationRecord& v : rep.violations)
    p << "  violation " << v.id << " (" << to_keyword(v.severity) << ", culprit " << v.culprit
      << ")\n";
}

void print_final_text(const Printer& p, const FinalReport& fr) {
  p << "end of trace after " << count_noun(fr.events, "event") << "\n";
  for (const ConstraintOutcome& c : fr.constraints)
    p << "  constraint " << c.id << ": " << to_string(c.verdict) << " ("
      << to_keyword(c.severity) << (c.active ? ", active" : ", retired") << ")\n";
  for (const CommitmentInstance& c : fr.commitments)
    p << "  commitment " << c.label << ": " << c.display_state() << "\n";
  for (const ViolationRecord& v : fr.violations)
    p << "  violation " << v.id << " at " << v.event_index << " (" << to_keyword(v.severity)
      << ", culprit " << v.culprit << ")\n";
  if (fr.violations.empty())
    p << "no violations\n";
  else
    p << count_noun(fr.violations.size(), "violation") << "\n";
}

void print_final_tsv(const Printer& p, const FinalReport& fr) {
  for (const ViolationRecord& v : fr.violations)
    p << "VIOLATION\t" << v.id << "\t" << v.event_index << "\t" << to_keyword(v.severity) << "\t"
      << v.culprit << "\n";
  for (const ConstraintOutcome& c : fr.constraints)
    p << "VERDICT\t" << c.id << "\t" << to_string(c.verdict) << "\n";
  for (const CommitmentInstance& c : fr.commitments)
    p << "COMMITMENT\t" << c.label << "\t" << c.display_state() << "\n";
}

int cmd_monitor(const std::string& proto_path, const std::string& trace_path,
                const std::string& format, const Printer& p) {
  TraceSession session(load_protocol_file(proto_path));
  const std::vector<TraceItem> items = load_trace_file(trace_path);
  const bool text = format == "text";
  replay(session, items, [&](const TraceItem& item, const StepReport* rep) {
    if (!text) return;
    if (rep == nullptr) {
      p << (item.kind == TraceItem::Kind::Activate ? "!activate " : "!retire ")
        << item.constraint << "\n";
      return;
    }
    print_step_text(p, *rep);
  });
  const FinalReport fr = session.close();
  if (text)
    print_final_text(p, fr);
  else
    print_final_tsv(p, fr);
  return fr.violations.empty() ? 0 : 1;
}

int cmd_safety(const std::string& proto_path, const std::string& label,
               const std::vector<std::string>& binding_pairs,
               const std::optional<std::string>& state_path, const std::string& format,
               const Printer& p) {
  const Protocol proto = load_protocol_file(proto_path);
  const CommitmentTemplate* tpl = proto.find_commitment(label);
  if (!tpl) throw UnknownCommitmentLabel("no commitment labelled '" + label + "'");
  const RoleBinding binding = binding_from(proto, binding_pairs);

  SupportContext ctx;
  if (state_path) {
    TraceSession session(proto);
    replay(session, load_trace_file(*state_path), nullptr);
    ctx = SupportContext::from_state(proto, binding, session.state());
  } else {
    ctx = SupportContext::hypothetical(proto, binding);
  }

  const CommitmentInstance* inst = nullptr;
  for (const CommitmentInstance& c : ctx.commitments)
    if (c.label == label) inst = &c;
  CommitmentInstance fresh;
  if (!inst) {
    // Not live in the given state: judge the engagement as if taken now.
    fresh = CommitmentInstance{label,          tpl->debtor, tpl->creditor, tpl->antecedent,
                               tpl->consequent, CommitmentState::Conditional, 0, 0, false};
    inst = &fresh;
  }

  const ControlDerivation d = safe_derivation(*inst, ctx);
  if (format == "tsv") {
    p << "SAFETY\t" << label << "\t" << (d.holds ? "SAFE" : "UNSAFE") << "\n";
  } else {
    p << "commitment " << label << ": " << (d.holds ? "SAFE" : "UNSAFE") << "\n";
    p << render(d);
  }
  return d.holds ? 0 : 1;
}

int cmd_compliance(const std::string& proto_path, const std::optional<std::string>& label,
                   const std::optional<std::string>& reg_text,
                   const std::optional<std::string>& trace_path,
                   const std::optional<std::size_t>& bound, const std::string& format,
                   const Printer& p) {
  TraceSession session(load_protocol_file(proto_path));
  if (trace_path) replay(session, load_trace_file(*trace_path), nullptr);

  CompatibilityResult res;
  if (label)
    res = compatible_check_commitment(*label, session, bound);
  else
    res = compatible_check(parse_regulation(*reg_text), session, bound);

  if (format == "tsv") {
    p << "COMPATIBILITY\t" << (res.compatible ? "COMPATIBLE" : "INCOMPATIBLE") << "\t"
      << res.bound_used << "\n";
    for (const Event& e : res.witness) p << "WITNESS\t" << e.agent << "\t" << e.action << "\n";
  } else if (res.compatible) {
    p << "COMPATIBLE (bound " << res.bound_used << ")\n";
    if (res.witness.empty()) {
      p << "witness: empty (already satisfied)\n";
    } else {
      p << "witness:\n";
      for (const Event& e : res.witness) p << "  " << e.agent << " " << e.action << "\n";
    }
  } else {
    p << "INCOMPATIBLE (bound " << res.bound_used << ")\n";
  }
  return res.compatible ? 0 : 1;
}

int cmd_scenarios(const std::optional<std::string>& extract, const std::string& dir,
                  const std::string& format, const Printer& p) {
  if (!extract) {
    std::size_t width = 0;
    for (const Scenario& s : scenarios()) width = std::max(width, s.name.size());
    for (const Scenario& s : scenarios()) {
      if (format == "tsv") {
        p << "SCENARIO\t" << s.name << "\t" << s.summary << "\n";
      } else {
        p << s.name << std::string(width - s.name.size() + 2, ' ') << s.summary << "\n";
      }
    }
    return 0;
  }
  const Scenario* s = find_scenario(*extract);
  if (!s) throw ValidationError("no scenario named '" + *extract + "'");
  std::filesystem::create_directories(dir);
  for (const ScenarioFile& f : s->files) {
    const std::string path = join_path(dir, f.basename);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileParseError("cannot write '" + path + "'", 0);
    out << f.content;
    p << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commitment protocols with temporal regulations: validate, monitor, analyze."};
  app.require_subcommand(1);

  std::string format = "text";
  bool quiet = false;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "tsv"}))
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress stdout, keep the exit code");

  std::string proto_path, trace_path, label, reg_text, dir = ".";
  std::vector<std::string> binding_pairs;
  std::string state_path, prefix_path, extract_name;
  std::size_t bound_value = 0;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a protocol file");
  validate->fallthrough();
  validate->add_option("protocol", proto_path, "Protocol file")->required();

  CLI::App* monitor = app.add_subcommand("monitor", "Replay a trace and report violations");
  monitor->fallthrough();
  monitor->add_option("protocol", proto_path, "Protocol file")->required();
  monitor->add_option("trace", trace_path, "Trace file")->required();

  CLI::App* safety = app.add_subcommand("safety", "Judge whether a commitment's debtor controls it");
  safety->fallthrough();
  safety->add_option("protocol", proto_path, "Protocol file")->required();
  safety->add_option("--commitment", label, "Commitment label")->required();
  safety->add_option("--binding", binding_pairs, "agent=role pairs (default: identity)");
  CLI::Option* state_opt = safety->add_option("--state", state_path, "Trace fixing the social state");

  CLI::App* compliance =
      app.add_subcommand("compliance", "Search for a norm-compatible continuation");
  compliance->fallthrough();
  compliance->add_option("protocol", proto_path, "Protocol file")->required();
  CLI::Option* label_opt = compliance->add_option("--commitment", label, "Commitment label");
  CLI::Option* reg_opt = compliance->add_option("--regulation", reg_text, "Regulation text");
  label_opt->excludes(reg_opt);
  CLI::Option* prefix_opt = compliance->add_option("--trace", prefix_path, "Prefix trace");
  CLI::Option* bound_opt = compliance->add_option("--bound", bound_value, "Search depth cap");

  CLI::App* scen = app.add_subcommand("scenarios", "List or extract the bundled fixtures");
  scen->fallthrough();
  CLI::Option* extract_opt = scen->add_option("--extract", extract_name, "Scenario to write out");
  scen->add_option("--dir", dir, "Directory for extracted files")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Printer p{out, quiet};
  try {
    if (validate->parsed()) return cmd_validate(proto_path, format, p);
    if (monitor->parsed()) return cmd_monitor(proto_path, trace_path, format, p);
    if (safety->parsed())
      return cmd_safety(proto_path, label, binding_pairs,
                        *state_opt ? std::optional(state_path) : std::nullopt, format, p);
    if (compliance->parsed()) {
      if (!*label_opt && !*reg_opt)
        throw ValidationError("one of --commitment or --regulation is required");
      return cmd_compliance(proto_path, *label_opt ? std::optional(label) : std::nullopt,
                            *reg_opt ? std::optional(reg_text) : std::nullopt,
                            *prefix_opt ? std::optional(prefix_path) : std::nullopt,
                            *bound_opt ? std::optional(bound_value) : std::nullopt, format, p);
    }
    return cmd_scenarios(*extract_opt ? std::optional(extract_name) : std::nullopt, dir, format, p);
  } catch (const FileParseError& e) {
    err << "error: " << e.what();
    if (e.line > 0) err << " (line " << e.line << ")";
    err << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), std::cout, std::cerr);
}

}  // namespace regula
