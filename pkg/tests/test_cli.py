import json

import pytest

from moyalbkp.cli import main
from moyalbkp.parser import parse_poly, parse_symbol
from moyalbkp.serialize import flow_result_from_json, poly_from_json, symbol_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_flow(capsys):
    assert run(capsys, "flow", "--m", "2", "--threshold", "0", "--depth", "1") == \
        (0, "a1_y = 4*e*a2^(1)\n", "")


def test_power(capsys):
    code, out, _ = run(capsys, "power", "--exp", "2", "--depth", "2", "--floor", "-1")
    assert (code, out) == (0, "p^2 + 2*a1 + (2*a2)*p^-1\n")


def test_star(capsys):
    code, out, _ = run(capsys, "star", "--lhs", "p^2", "--rhs", "a1*p^-1", "--floor", "-3")
    assert code == 0
    assert parse_symbol(out.strip()) == parse_symbol("a1*p + 2*e*a1^(1) + e^2*a1^(2)*p^-1")


def test_json_round_trips(capsys):
    _, out, _ = run(capsys, "power", "--exp", "3", "--depth", "3", "--floor", "-1", "--json")
    _, text, _ = run(capsys, "power", "--exp", "3", "--depth", "3", "--floor", "-1")
    f = symbol_from_json(json.loads(out))
    assert f == parse_symbol(text.strip(), -1)
    _, out, _ = run(capsys, "flow", "--m", "3", "--threshold", "1", "--depth", "2", "--json")
    res = flow_result_from_json(json.loads(out))
    assert res.constraints == [parse_poly("6*e*a2^(1)")]


def test_bkp(capsys):
    code, out, _ = run(capsys, "bkp", "--pipeline", "35")
    assert code == 0 and out.startswith("a1_t = -32/9*e^5*a1^(5)")
    code, out, _ = run(capsys, "bkp", "--pipeline", "25", "--json")
    data = json.loads(out)
    assert data["consistent"] and [s["gen"] for s in data["solutions"]] == ["a2", "a3", "a4",
                                                                            "a5"]
    code, out, _ = run(capsys, "bkp", "--pipeline", "35mod", "--show-eliminations")
    assert code == 0 and out.splitlines()[0].startswith("a2 = ")


def test_dress_and_conserve(capsys):
    code, out, _ = run(capsys, "dress", "--k", "3", "--depth", "5")
    assert code == 0 and out.rstrip().endswith("consistent")
    code, out, _ = run(capsys, "conserve", "--n", "3", "--m", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["conserved"]
    assert all(not poly_from_json(v) for v in data["euler"].values())


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS ") for line in lines[:-1])
    assert lines[-1].endswith("0 unresolved")


def test_exit_codes(capsys):
    assert run(capsys, "star", "--lhs", "p^", "--rhs", "a1")[0] == 2
    assert run(capsys, "star", "--lhs", "p^-1", "--rhs", "a1")[0] == 2
    assert run(capsys, "dress", "--k", "5", "--depth", "3")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["flow", "--m", "2", "--unknown"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["dress", "--k", "4", "--depth", "5"])
    assert info.value.code == 2


def test_depth_limit(capsys, monkeypatch):
    monkeypatch.setenv("MOYAL_DEPTH_LIMIT", "4")
    code, _, err = run(capsys, "flow", "--m", "3", "--depth", "3")
    assert code == 2 and "MOYAL_DEPTH_LIMIT" in err
    monkeypatch.setenv("MOYAL_DEPTH_LIMIT", "zero")
    assert run(capsys, "flow", "--m", "2")[0] == 2


def test_byte_stable(capsys):
    first = run(capsys, "bkp", "--pipeline", "25", "--json")[1]
    assert run(capsys, "bkp", "--pipeline", "25", "--json")[1] == first
