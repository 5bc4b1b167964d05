import io
import json
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import arrays
from paircomp.cli import main
from paircomp.core import aggregate, copeland_in_array, enumerate_weak_orders
from paircomp.errors import BadParameter, ParseError, UnpairedEntry
from paircomp.fixtures import Fixture, make_fixture
from paircomp.io import (
    RunRecord,
    array_to_dict,
    digest,
    dumps_array,
    load_array,
    load_run,
    loads_array,
    save_array,
    save_run,
)
from paircomp.objectives import beta_ls_objective
from paircomp.suites import run_theorem_suite


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# ---------------------------------------------------------------- fixtures

def arcs_of(arr):
    return {(o.p + 1, o.i + 1, o.j + 1) if o.rij == arr.r_max else (o.p + 1, o.j + 1, o.i + 1)
            for o in arr.outcomes}


def test_fixture_arcs():
    assert arcs_of(make_fixture("fig1")) == {(1, 2, 4), (1, 3, 4), (2, 1, 3)}
    assert arcs_of(make_fixture("figA1")) == {(1, 1, 2), (1, 2, 3), (1, 3, 1)}
    assert arcs_of(make_fixture("figA2")) == {(1, 1, 2), (2, 2, 1)}
    assert arcs_of(make_fixture("figA3")) == {(1, 1, 3), (1, 3, 4), (1, 2, 4)}
    assert arcs_of(make_fixture("figA4")) == {(1, 1, 2), (1, 1, 3)}
    a5 = arcs_of(make_fixture("figA5", n=6))
    assert len(a5) == 15 - 3 and (1, 1, 2) not in a5 and (1, 5, 6) in a5


def test_fixture_minimums():
    for name, kw in [("figA1", {"n": 2}), ("figA3", {"n": 3}), ("figA5", {"n": 4}),
                     ("figA2", {"m": 1}), ("fig1", {"m": 1}), ("nope", {})]:
        with pytest.raises(BadParameter):
            make_fixture(name, **kw)


def test_fixture_values_and_extra_panels():
    arr = make_fixture("figA3", n=6, m=3, r_max=Fraction(5, 2))
    assert arr.r_min == Fraction(-5, 2)
    assert all(o.p == 0 for o in arr.outcomes)
    assert arr.skew_symmetric
    assert copeland_in_array(arr)[4:] == (0, 0)


def test_figA5_copeland_example():
    assert copeland_in_array(make_fixture("figA5", n=6, r_min=0)) == (3, 3, 2, 0, -3, -5)


def test_figA3_matches_fig1_combined():
    a, b = aggregate(make_fixture("figA3", n=4)), aggregate(make_fixture("fig1"))
    assert a.counts == b.counts and a.r == b.r


def test_cycle_is_balanced():
    assert copeland_in_array(make_fixture("figA1", n=3)) == (0, 0, 0)


def test_fixture_determinism():
    assert digest(make_fixture("figA5", n=7)) == digest(make_fixture(Fixture("figA5", n=7)))


# ---------------------------------------------------------------------- io

def test_round_trip(tmp_path, fig1):
    path = tmp_path / "fig1.json"
    save_array(fig1, path)
    assert load_array(path) == fig1


@given(arrays(m_max=3))
def test_round_trip_is_bit_exact(arr):
    text = dumps_array(arr)
    back = loads_array(text)
    assert back == arr and dumps_array(back) == text


def test_rational_strings():
    doc = {"n": 2, "m": 1, "r_min": "-3/2", "r_max": "3/2",
           "comparisons": [{"p": 1, "i": 1, "j": 2, "rij": "2/3", "rji": "-1/3"}]}
    arr = loads_array(json.dumps(doc))
    assert arr.value(0, 0, 1) == Fraction(2, 3) and arr.r_max == Fraction(3, 2)
    assert array_to_dict(arr)["comparisons"][0]["rij"] == "2/3"


def test_unpaired_entry():
    doc = {"n": 3, "r_min": -1, "r_max": 1, "comparisons": [{"p": 1, "i": 1, "j": 2, "rij": 1}]}
    with pytest.raises(UnpairedEntry):
        loads_array(json.dumps(doc))


def test_parse_diagnostics():
    with pytest.raises(ParseError) as exc:
        loads_array('{\n "n": 3,\n "r_min": -1 oops\n}')
    assert exc.value.line == 3
    doc = {"n": 3, "r_min": -1, "r_max": 1, "comparisons": [{"p": 1, "i": 1, "j": 2, "rij": 0.5, "rji": 0}]}
    with pytest.raises(ParseError) as exc:
        loads_array(json.dumps(doc))
    assert exc.value.field == "comparisons[0].rij"
    with pytest.raises(ParseError) as exc:
        loads_array(json.dumps({"n": 3}))
    assert exc.value.field == "r_min"


def test_run_record_round_trip(tmp_path):
    rec = RunRecord({"method": "wqa_2"}, "abc", "6", ("[X1] > [X2]",), ({"ok": True},), 0.25, {"x": ["1"]})
    save_run(rec, tmp_path / "run.json")
    assert load_run(tmp_path / "run.json") == rec


# ------------------------------------------------------------------ suites

@pytest.mark.parametrize("sid", ["T4", "T5", "T6"])
def test_fixture_suites(sid):
    rep = run_theorem_suite(sid)
    assert rep.passed, rep.render()
    assert rep.to_dict()["passed"]


def test_cycle_suite_message():
    rep = run_theorem_suite("T4")
    assert "optimal SC-consistent subset of L empty" in rep.checks[0].detail


def test_unknown_suite():
    with pytest.raises(BadParameter):
        run_theorem_suite("T9")


# --------------------------------------------------------------------- cli

def test_cli_slater_example():
    code, out = run("rank", "--fixture", "fig1", "--method", "wqa_2", "--domain", "linear", "--all-optima")
    assert code == 0
    orders = [line.strip() for line in out.splitlines() if line.startswith("  ")]
    assert orders == ["[X1] > [X2] > [X3] > [X4]", "[X1] > [X3] > [X2] > [X4]", "[X2] > [X1] > [X3] > [X4]"]
    assert "optimal value: 6" in out


def test_cli_row_sums():
    code, out = run("rank", "--fixture", "figA4", "--method", "grs", "--epsilon", "1")
    assert code == 0 and "[X1] > [X2 X3]" in out and "x = 2, -1, -1" in out


def test_cli_json_and_values(tmp_path):
    code, out = run("rank", "--fixture", "figA5", "--n", "6", "--method", "beta_ls", "--beta", "1/3",
                    "--output", "json", "--save-run", str(tmp_path / "r.json"))
    doc = json.loads(out)
    arr = make_fixture("figA5", n=6)
    best = min(beta_ls_objective(arr, Fraction(1, 3), o) for o in enumerate_weak_orders(6))
    assert code == 0 and Fraction(doc["value"]) == best
    rec = load_run(tmp_path / "r.json")
    assert rec.value == doc["value"] and rec.input_digest == digest(make_fixture("figA5", n=6))


def test_cli_jobs_invariance():
    a = run("rank", "--fixture", "figA5", "--n", "6", "--method", "kemeny_2", "--all-optima")
    b = run("rank", "--fixture", "figA5", "--n", "6", "--method", "kemeny_2", "--all-optima", "--jobs", "2")
    assert a == b


def test_cli_audit():
    code, out = run("audit", "--fixture", "figA3", "--order", "[X2] > [X1] > [X3] > [X4]")
    assert code == 0 and "X1 vs X2" in out
    code, out = run("audit", "--fixture", "figA5", "--n", "6", "--method", "beta_ls", "--beta", "1",
                    "--axiom", "sc", "--output", "json")
    assert code == 0 and json.loads(out)["ok"] is False


def test_cli_fixture_and_input(tmp_path):
    path = tmp_path / "a.json"
    assert run("fixture", "--name", "figA4", "--n", "3", "--out", str(path))[0] == 0
    code, out = run("rank", "--input", str(path), "--method", "wqa_4")
    assert code == 0 and "[X1] > [X2 X3]" in out


def test_cli_enumerate():
    assert run("enumerate", "--n", "4") == (0, "75\n")
    assert run("enumerate", "--n", "4", "--linear") == (0, "24\n")


def test_cli_theorem():
    code, out = run("theorem", "--id", "T4")
    assert code == 0 and "PASS" in out


def test_cli_exit_codes(tmp_path, monkeypatch):
    import paircomp.cli as cli
    from paircomp.suites import SuiteReport

    assert run("rank", "--fixture", "fig1")[0] == 1
    assert run("bogus")[0] == 1
    assert run("rank", "--fixture", "figA3", "--n", "3", "--method", "wqa_1")[0] == 2
    assert run("rank", "--fixture", "fig1", "--method", "beta_ls")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("rank", "--input", str(bad), "--method", "wqa_1")[0] == 2
    assert run("rank", "--input", str(tmp_path / "missing.json"), "--method", "wqa_1")[0] == 2

    def failing(sid, **kw):
        rep = SuiteReport(sid, "forced")
        rep.add("x", False)
        return rep

    monkeypatch.setattr(cli, "run_theorem_suite", failing)
    code, out = run("theorem", "--id", "T1")
    assert code == 3 and "FAIL" in out
