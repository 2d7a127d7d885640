import json

import pytest
from hypothesis import given

from countfo import generators
from countfo.bench import run_suite
from countfo.cli import main
from countfo.errors import InputError
from countfo.fileio import (
    GraphFormatError,
    dumps_report,
    format_graph,
    loads_report,
    make_report,
    parse_graph,
)

from conftest import graphs


def test_parse_single_edge():
    G = parse_graph("p 2 1 0\ne 0 1\n")
    assert G.n == 2 and list(G.edges()) == [(0, 1)]


def test_parse_rejects_self_loop_with_line_number():
    with pytest.raises(GraphFormatError) as e:
        parse_graph("# c\np 2 1 0\ne 0 0\n")
    assert "line 3" in str(e.value)


def test_parse_rejects_duplicates():
    with pytest.raises(GraphFormatError):
        parse_graph("p 2 2 0\ne 0 1\ne 1 0\n")


def test_grid_round_trip():
    G = generators.grid(4, 4)
    assert parse_graph(format_graph(G)).canonical() == G.canonical()


@given(graphs(max_n=9, labels=2))
def test_round_trip(G):
    assert parse_graph(format_graph(G)) == G


def test_report_schema_and_big_ints():
    r = make_report(value=2 ** 60, witness=(1, 2), delta=float("-inf"))
    text = dumps_report(r)
    back = loads_report(text)
    assert back["schema"] == 1 and back["value"] == str(2 ** 60) and back["witness"] == [1, 2]
    with pytest.raises(InputError):
        loads_report(json.dumps({"schema": 7}))


def test_generators_deterministic():
    a = generators.generate("bounded-degree-random", {"n": 100, "d": 3}, 7)
    b = generators.generate("bounded-degree-random", {"n": 100, "d": 3}, 7)
    assert a == b and max(a.degree(v) for v in range(100)) <= 3
    assert generators.generate("path", {"n": 5}) == generators.path(5)
    assert generators.subdivided_clique(4, 1).n == 10
    U = generators.generate("union-with-isolated", {"base": {"kind": "cycle", "n": 4}, "count": 2})
    assert U.n == 6 and U.m == 4
    with pytest.raises(InputError):
        generators.generate("grid", {})


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_pipeline(tmp_path, capsys):
    gfile = str(tmp_path / "star.g")
    assert _run(capsys, "gen", "--kind", "star", "--param", "n=5", "--out", gfile)[0] == 0
    sentence = "exists x1 . count y . (E(y,x1) | y = x1) > 3"
    code, out = _run(capsys, "eval-exact", "--graph", gfile, "--formula", sentence, "--json")
    rep = loads_report(out)
    assert code == 0 and rep["value"] == 5 and rep["decision"] == "yes"
    assert rep["sparsity"]["wcol1"] >= 1
    code, out = _run(capsys, "eval-approx", "--graph", gfile, "--formula", sentence, "--epsilon-report")
    assert code == 0 and "interval" in out
    code, out = _run(capsys, "oracle", "--graph", gfile, "--formula", sentence)
    assert "value 5" in out
    assert "dominated 5" in _run(capsys, "pds", "--graph", gfile, "--k", "1")[1]
    assert "indset" in _run(capsys, "distance", "--graph", gfile, "--mode", "indset", "--k", "2", "--r", "1")[1]
    assert "wcol" in _run(capsys, "wcol", "--graph", gfile, "--r", "2", "--exact")[1]
    assert "depth" in _run(capsys, "decompose", "--graph", gfile, "--r", "1")[1]


def test_cli_gadget_emit(tmp_path, capsys):
    target = str(tmp_path / "gadget.g")
    code, out = _run(capsys, "gadget", "--sizes", "2,2,2", "--emit", target, "--verify")
    assert code == 0 and "equivalent True" in out
    with open(target + ".provenance.json") as fh:
        prov = json.load(fh)
    assert prov["budget"] == 3 and len(prov["cells"]) == 6


def test_cli_reports_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.g"
    bad.write_text("p 2 1 0\ne 0 0\n")
    code = main(["eval-exact", "--graph", str(bad), "--formula", "exists x1 . count y . y = x1 > 0"])
    assert code == 2 and "self-loop" in capsys.readouterr().err


def test_bench_suite():
    cfg = {"instances": [
        {"graph": {"kind": "path", "n": n}, "sentence": {"pds": {"k": 1}}, "mode": "exact"} for n in (8, 12, 16)
    ] + [
        {"graph": {"kind": "path", "n": 40}, "sentence": {"pds": {"k": 1}}, "mode": "approx"},
        {"graph": {"kind": "nonsense"}, "sentence": {"pds": {"k": 1}}},
    ]}
    reps = run_suite(cfg)
    assert [r["value"] for r in reps[:3]] == [3, 3, 3]
    assert all(r["oracle"] == 3 and r["gap"] == 0 for r in reps[:3])
    assert reps[3]["oracle"] is None
    assert "error" in reps[4]
    assert run_suite({"instances": []}) == []
