#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "regula/cli.hpp"
#include "regula/protocol_text.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = regula::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory populated by extracting a bundled scenario.
struct Extracted {
  fs::path dir;
  explicit Extracted(const std::string& scenario) {
    dir = fs::temp_directory_path() /
          ("regula-cli-" + scenario + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    Run r = cli({"scenarios", "--extract", scenario, "--dir", dir.string()});
    REQUIRE(r.code == 0);
  }
  ~Extracted() { fs::remove_all(dir); }
  std::string file(const std::string& base) const { return (dir / base).string(); }
};

std::string write_temp(const std::string& base, const std::string& content) {
  fs::path p = fs::temp_directory_path() / base;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p.string();
}

}  // namespace

TEST_CASE("validate counts the declarations with correct plurals") {
  Extracted pay("payment");
  Run r = cli({"validate", pay.file("payment.protocol")});
  CHECK(r.code == 0);
  CHECK(r.out == "2 roles, 3 actions, 1 constraint\n");
  CHECK(r.err.empty());

  Extracted train("train-ticket");
  Run t = cli({"validate", train.file("train-ticket.protocol")});
  CHECK(t.code == 0);
  CHECK(t.out == "2 roles, 3 actions, 1 constraint, 1 commitment\n");

  Run tsv = cli({"--format", "tsv", "validate", pay.file("payment.protocol")});
  CHECK(tsv.code == 0);
  CHECK(tsv.out == "SUMMARY\t2\t3\t1\t0\n");
}

TEST_CASE("validate rejects broken files on stderr with the line") {
  std::string bad = write_temp("regula-bad.protocol",
                               "protocol p\nroles a\naction go by ghost means x\n");
  Run r = cli({"validate", bad});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err == "error: action 'go' names undeclared role 'ghost' (line 3)\n");
  fs::remove(bad);

  Run missing = cli({"validate", "/nonexistent/x.protocol"});
  CHECK(missing.code == 2);
  CHECK(missing.err == "error: cannot read '/nonexistent/x.protocol'\n");
}

TEST_CASE("monitor renders the enactment and exits by violation count") {
  Extracted pay("payment");

  Run bad = cli({"monitor", pay.file("payment.protocol"), pay.file("send-then-cash.trace")});
  CHECK(bad.code == 1);
  CHECK(bad.out ==
        "[0] seller send-goods\n"
        "  + sent\n"
        "  pay-first now PermViol\n"
        "  violation pay-first (medium, culprit seller)\n"
        "[1] buyer pay-by-cash\n"
        "  + paid\n"
        "end of trace after 2 events\n"
        "  constraint pay-first: PermViol (medium, active)\n"
        "  violation pay-first at 0 (medium, culprit seller)\n"
        "1 violation\n");

  Run good = cli({"monitor", pay.file("payment.protocol"), pay.file("cash-then-send.trace")});
  CHECK(good.code == 0);
  CHECK(good.out ==
        "[0] buyer pay-by-cash\n"
        "  + paid\n"
        "  pay-first now PermSat\n"
        "[1] seller send-goods\n"
        "  + sent\n"
        "end of trace after 2 events\n"
        "  constraint pay-first: PermSat (medium, active)\n"
        "no violations\n");

  Run card = cli({"monitor", pay.file("payment.protocol"), pay.file("card-then-send.trace")});
  CHECK(card.code == 0);
}

TEST_CASE("monitor tsv is the pinned record grammar") {
  Extracted pay("payment");
  Run r = cli({"--format", "tsv", "monitor", pay.file("payment.protocol"),
               pay.file("send-then-cash.trace")});
  CHECK(r.code == 1);
  CHECK(r.out ==
        "VIOLATION\tpay-first\t0\tmedium\tseller\n"
        "VERDICT\tpay-first\tPermViol\n");

  Run good = cli({"--format", "tsv", "monitor", pay.file("payment.protocol"),
                  pay.file("cash-then-send.trace")});
  CHECK(good.code == 0);
  CHECK(good.out == "VERDICT\tpay-first\tPermSat\n");
}

TEST_CASE("meta lines switch norms mid-trace and render in text mode") {
  Extracted pay("payment");
  Run r = cli({"monitor", pay.file("payment.protocol"), pay.file("retire-first.trace")});
  CHECK(r.code == 0);
  CHECK(r.out.find("!retire pay-first\n") == 0);
  CHECK(r.out.find("  constraint pay-first: TempSat (medium, retired)\n") != std::string::npos);
  CHECK(r.out.find("no violations\n") != std::string::npos);
}

TEST_CASE("monitor attributes trace problems to their lines") {
  Extracted pay("payment");
  std::string bad_action = write_temp("regula-bad1.trace", "buyer pay-by-cash\nbuyer fly\n");
  Run r = cli({"monitor", pay.file("payment.protocol"), bad_action});
  CHECK(r.code == 2);
  CHECK(r.err == "error: unknown action 'fly' (line 2)\n");
  fs::remove(bad_action);

  std::string wrong_role = write_temp("regula-bad2.trace", "seller pay-by-cash\n");
  Run w = cli({"monitor", pay.file("payment.protocol"), wrong_role});
  CHECK(w.code == 2);
  CHECK(w.err ==
        "error: agent 'seller' does not play role 'buyer' required by action "
        "'pay-by-cash' (line 1)\n");
  fs::remove(wrong_role);

  std::string bad_meta = write_temp("regula-bad3.trace", "!activate nothing\n");
  Run m = cli({"monitor", pay.file("payment.protocol"), bad_meta});
  CHECK(m.code == 2);
  CHECK(m.err == "error: unknown constraint 'nothing' (line 1)\n");
  fs::remove(bad_meta);
}

TEST_CASE("safety renders the verdict and its derivation") {
  Extracted train("train-ticket");
  Run r = cli({"safety", train.file("train-ticket.protocol"), "--commitment", "c-travel"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "commitment c-travel: SAFE\n"
        "control(traveler, achieve travel) = true  [own capability]\n");

  Run tsv = cli({"--format", "tsv", "safety", train.file("train-ticket.protocol"),
                 "--commitment", "c-travel"});
  CHECK(tsv.out == "SAFETY\tc-travel\tSAFE\n");

  Run unknown = cli({"safety", train.file("train-ticket.protocol"), "--commitment", "nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err == "error: no commitment labelled 'nope'\n");
}

TEST_CASE("safety honors bindings and social state") {
  Extracted train("train-ticket");
  // Bound only to the conductor role, the traveler cannot reach travel.
  Run bound = cli({"safety", train.file("train-ticket.protocol"), "--commitment", "c-travel",
                   "--binding", "traveler=conductor"});
  CHECK(bound.code == 1);
  CHECK(bound.out.find("commitment c-travel: UNSAFE\n") == 0);

  Run malformed = cli({"safety", train.file("train-ticket.protocol"), "--commitment",
                       "c-travel", "--binding", "traveler"});
  CHECK(malformed.code == 2);
  CHECK(malformed.err == "error: binding 'traveler' is not of the form agent=role\n");

  Extracted ins("insurance-procedure");
  Run hypo = cli({"safety", ins.file("insurance-procedure.protocol"), "--commitment",
                  "c-settle"});
  CHECK(hypo.code == 0);
  // Once pay has happened the settlement order cannot be steered anymore.
  Run from = cli({"safety", ins.file("insurance-procedure.protocol"), "--commitment",
                  "c-settle", "--state", ins.file("full.trace")});
  CHECK(from.code == 1);
  CHECK(from.out.find("commitment c-settle: UNSAFE\n") == 0);
  Run stable = cli({"safety", ins.file("insurance-procedure.protocol"), "--commitment",
                    "c-pay", "--state", ins.file("full.trace")});
  CHECK(stable.code == 0);
}

TEST_CASE("compliance reports the bound and a replayable witness") {
  Extracted train("train-ticket");
  Run inc = cli({"compliance", train.file("train-ticket.protocol"), "--regulation",
                 "travel before punch", "--trace", train.file("prefix.trace")});
  CHECK(inc.code == 1);
  CHECK(inc.out == "INCOMPATIBLE (bound 18)\n");

  Run ok = cli({"compliance", train.file("train-ticket.protocol"), "--regulation",
                "punch before travel", "--trace", train.file("prefix.trace")});
  CHECK(ok.code == 0);
  CHECK(ok.out ==
        "COMPATIBLE (bound 18)\n"
        "witness:\n"
        "  traveler punch-ticket\n"
        "  traveler board-travel\n");

  Run tsv = cli({"--format", "tsv", "compliance", train.file("train-ticket.protocol"),
                 "--regulation", "punch before travel", "--trace", train.file("prefix.trace")});
  CHECK(tsv.code == 0);
  CHECK(tsv.out ==
        "COMPATIBILITY\tCOMPATIBLE\t18\n"
        "WITNESS\ttraveler\tpunch-ticket\n"
        "WITNESS\ttraveler\tboard-travel\n");

  Run label = cli({"compliance", train.file("train-ticket.protocol"), "--commitment",
                   "c-travel", "--trace", train.file("prefix.trace")});
  CHECK(label.code == 0);
  CHECK(label.out.find("COMPATIBLE") == 0);

  Run empty = cli({"compliance", train.file("train-ticket.protocol"), "--regulation",
                   "punch before travel"});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("witness: empty (already satisfied)\n") != std::string::npos);
}

TEST_CASE("compliance flags invalid requests as input errors") {
  Extracted train("train-ticket");
  Run zero = cli({"compliance", train.file("train-ticket.protocol"), "--regulation",
                  "punch before travel", "--bound", "0"});
  CHECK(zero.code == 2);
  CHECK(zero.err == "error: search bound must be at least 1\n");

  Run both = cli({"compliance", train.file("train-ticket.protocol"), "--commitment",
                  "c-travel", "--regulation", "achieve travel"});
  CHECK(both.code == 2);
  CHECK(both.err.find("error: ") == 0);

  Run neither = cli({"compliance", train.file("train-ticket.protocol")});
  CHECK(neither.code == 2);
  CHECK(neither.err == "error: one of --commitment or --regulation is required\n");

  Run badreg = cli({"compliance", train.file("train-ticket.protocol"), "--regulation",
                    "punch onward travel"});
  CHECK(badreg.code == 2);
  CHECK(badreg.err == "error: unknown operator 'onward'\n");
}

TEST_CASE("scenarios list in both formats and extract on demand") {
  Run list = cli({"scenarios"});
  CHECK(list.code == 0);
  std::size_t lines = 0;
  std::istringstream in(list.out);
  for (std::string line; std::getline(in, line);) {
    ++lines;
    CHECK(line.find('\t') == std::string::npos);  // aligned with spaces
  }
  CHECK(lines == 8);
  CHECK(list.out.find("payment") != std::string::npos);
  CHECK(list.out.find("mifid-advice") != std::string::npos);

  Run tsv = cli({"--format", "tsv", "scenarios"});
  CHECK(tsv.out.find("SCENARIO\tpayment\t") == 0);

  Run unknown = cli({"scenarios", "--extract", "zzz"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err == "error: no scenario named 'zzz'\n");

  Extracted pay("payment");
  CHECK(fs::exists(pay.dir / "payment.protocol"));
  CHECK(fs::exists(pay.dir / "retire-first.trace"));
  CHECK_NOTHROW(regula::load_protocol_file(pay.file("payment.protocol")));
}

TEST_CASE("quiet mode silences stdout but keeps codes and stderr") {
  Extracted pay("payment");
  Run r = cli({"--quiet", "monitor", pay.file("payment.protocol"),
               pay.file("send-then-cash.trace")});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.empty());

  Run ok = cli({"--quiet", "validate", pay.file("payment.protocol")});
  CHECK(ok.code == 0);
  CHECK(ok.out.empty());

  Run bad = cli({"--quiet", "validate", "/nonexistent/x.protocol"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("usage problems are parse errors, help is not") {
  Run help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("validate") != std::string::npos);
  CHECK(help.out.find("monitor") != std::string::npos);

  Run none = cli({});
  CHECK(none.code == 2);
  CHECK(none.err.find("error: ") == 0);

  Run badfmt = cli({"--format", "yaml", "scenarios"});
  CHECK(badfmt.code == 2);

  Run noargs = cli({"monitor"});
  CHECK(noargs.code == 2);
}
