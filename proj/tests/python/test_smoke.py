"""End-to-end smoke checks through the python bindings."""

import pytest

import regula


def fetch(scenario, basename):
    return regula.scenario_files(scenario)[basename]


def test_regulation_round_trip():
    r = regula.parse_regulation("a before b and achieve c")
    assert str(r) == "a before b and achieve c"
    assert regula.parse_regulation(str(r)) == r
    assert r.to_ltlf() == "((!b W a) & !(first(a)=first(b))) & (F c)"
    assert r.atoms() == ["a", "b", "c"]


def test_parse_errors_are_typed():
    with pytest.raises(regula.EngineError):
        regula.parse_regulation("a strangely b")
    with pytest.raises(regula.EngineError):
        regula.parse_protocol("protocol broken\nconstraint c : achieve ghost\n")


def test_eval_on_trace():
    r = regula.parse_regulation("paid before sent")
    assert regula.eval_on_trace(r, [["paid"], ["sent"]])
    assert not regula.eval_on_trace(r, [["sent"], ["paid"]])
    assert regula.eval_on_trace(r, [])


def test_monitor_session():
    proto = regula.parse_protocol(fetch("payment", "payment.protocol"))
    assert proto.name == "payment"
    s = regula.TraceSession(proto)
    s.step("seller", "send-goods")
    s.step("buyer", "pay-by-cash")
    final = s.close()
    assert [v["index"] for v in final["violations"]] == [0]
    assert final["constraints"][0][:2] == ("pay-first", "PermViol")


def test_commitment_lifecycle():
    proto = regula.parse_protocol(fetch("insurance-procedure", "insurance-procedure.protocol"))
    s = regula.TraceSession(proto)
    for agent, action in [
        ("ins", "underwrite"),
        ("patient", "undergo-procedure"),
        ("surgeon", "send-bill"),
        ("ins", "pay-surgeon"),
    ]:
        s.step(agent, action)
    final = s.close()
    assert ("c-pay", "Discharged") in final["commitments"]
    assert final["violations"] == []


def test_compliance_matches_the_train_story():
    proto = regula.parse_protocol(fetch("train-ticket", "train-ticket.protocol"))
    s = regula.TraceSession(proto)
    s.step("traveler", "buy-ticket")
    res = regula.compatible_check("travel before punch", s)
    assert not res["compatible"]
    assert res["bound_used"] == 18
    res = regula.compatible_check("punch before travel", s)
    assert res["compatible"]
    assert [a for _, a in res["witness"]] == ["punch-ticket", "board-travel"]


def test_safety_flip():
    with_support = regula.parse_protocol(
        fetch("insurance-procedure", "insurance-procedure.protocol")
    )
    without = regula.parse_protocol(
        fetch("insurance-procedure-nosupport", "insurance-procedure-nosupport.protocol")
    )
    assert regula.safe_hypothetical(with_support, "c-settle")
    assert not regula.safe_hypothetical(without, "c-settle")
    assert regula.safe_hypothetical(with_support, "c-pay")
    assert regula.safe_hypothetical(without, "c-pay")


def test_cli_round_trip(tmp_path):
    proto = tmp_path / "payment.protocol"
    proto.write_text(fetch("payment", "payment.protocol"))
    code, out, err = regula.run_cli(["validate", str(proto)])
    assert (code, err) == (0, "")
    assert out.strip() == "2 roles, 3 actions, 1 constraint"

    trace = tmp_path / "bad.trace"
    trace.write_text(fetch("payment", "send-then-cash.trace"))
    code, out, _ = regula.run_cli(["--format", "tsv", "monitor", str(proto), str(trace)])
    assert code == 1
    assert "VIOLATION\tpay-first\t0\tmedium\tseller" in out
