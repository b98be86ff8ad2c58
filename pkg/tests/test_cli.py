from __future__ import annotations

import json

import pytest

from twoclosure.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_PRECONDITION, Checklist, main
from twoclosure.orbitals import Digraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_family(capsys):
    code, out, _ = run(capsys, "construct", "--family", "G", "--m", "2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["group"]["degree"] == 81 and data["group"]["order"] == "15552"
    assert len(data["descriptor_sha256"]) == 64 and data["config"]["seed"] == 20240917


def test_construct_rank4(capsys):
    code, out, _ = run(capsys, "construct", "--family", "rank4-gammal1", "--p", "5", "--d", "2",
                       "--m1", "1", "--e", "1", "--s", "1")
    assert code == EXIT_OK and json.loads(out)["group"]["degree"] == 25


def test_construct_invalid_names_condition(capsys):
    code, _, err = run(capsys, "construct", "--family", "gammal1", "--p", "3", "--d", "4", "--m", "7",
                       "--e", "0", "--s", "1")
    assert code == EXIT_INPUT and "m | p^d - 1" in err


def test_construct_from_descriptor_file(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"kind": "catalog", "params": {"name": "49-16"}}))
    code, out, _ = run(capsys, "construct", "--descriptor", str(path))
    assert code == EXIT_OK and json.loads(out)["group"]["order"] == str(49 * 24)
    path.write_text("{not json")
    assert run(capsys, "construct", "--descriptor", str(path))[0] == EXIT_INPUT


def test_output_is_reproducible(capsys):
    a = run(capsys, "construct", "--family", "H", "--m", "2")[1]
    b = run(capsys, "construct", "--family", "H", "--m", "2")[1]
    assert a == b


def test_analyze(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "--family", "G", "--m", "2")
    data = json.loads(out)
    assert data["rank"] == 4 and data["subdegrees"] == [1, 16, 16, 48] and data["primitive"]
    assert sorted(data["labels"].values()) == [1, 2]
    agl = tmp_path / "agl.json"
    agl.write_text(json.dumps({"kind": "affine-matrix",
                               "params": {"p": 3, "d": 2, "generators": [[[2, 0], [0, 1]], [[1, 1], [0, 1]], [[0, 1], [1, 0]]]}}))
    assert json.loads(run(capsys, "analyze", "--descriptor", str(agl))[1])["rank"] == 2
    c6 = tmp_path / "c6.json"
    c6.write_text(json.dumps({"degree": 6, "generators": [[1, 2, 3, 4, 5, 0]]}))
    assert json.loads(run(capsys, "analyze", "--group", str(c6))[1])["primitive"] is False
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"degree": 4, "generators": [[1, 0, 2, 3]]}))
    assert run(capsys, "analyze", "--group", str(bad))[0] == EXIT_PRECONDITION


def test_closure_commands(capsys, tmp_path):
    v4 = tmp_path / "v4.json"
    v4.write_text(json.dumps({"degree": 4, "generators": [[1, 0, 3, 2], [2, 3, 0, 1]]}))
    code, out, _ = run(capsys, "closure", "--group", str(v4), "--check-autgroup")
    rep = json.loads(out)["report"]
    assert code == EXIT_OK and rep["is_two_closed"] and rep["digraph_autgroup"] is False

    code, out, _ = run(capsys, "closure", "--family", "H", "--m", "2", "--check-autgroup")
    rep = json.loads(out)["report"]
    assert rep["is_two_closed"] and rep["digraph_autgroup"] is False

    s5 = tmp_path / "s5.json"
    s5.write_text(json.dumps({"degree": 5, "generators": [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]}))
    assert run(capsys, "closure", "--group", str(s5), "--check-autgroup")[0] == EXIT_PRECONDITION
    wit = tmp_path / "w.txt"
    code, out, _ = run(capsys, "closure", "--group", str(s5), "--check-autgroup", "--exhaustive",
                       "--emit-witness", str(wit))
    rep = json.loads(out)["report"]
    assert rep["digraph_autgroup"] is True and rep["digraph_autgroup_witness"] == [1]
    assert Digraph.from_edge_list(wit.read_text()).num_arcs == 20


def test_orbital_and_autgroup(capsys, tmp_path):
    code, out, _ = run(capsys, "orbital", "--family", "G", "--m", "2", "--index", "1")
    path = tmp_path / "g.txt"
    path.write_text(out)
    code, out, _ = run(capsys, "autgroup", "--graph", str(path))
    assert code == EXIT_OK and json.loads(out)["group"]["order"] == str(2 * 362880**2)
    colors = tmp_path / "c.txt"
    colors.write_text(" ".join(["0"] * 80 + ["1"]))
    out = run(capsys, "autgroup", "--graph", str(path), "--colors", str(colors))[1]
    assert json.loads(out)["group"]["order"] == str(2 * 362880**2 // 81)
    colors.write_text("0 1")
    assert run(capsys, "autgroup", "--graph", str(path), "--colors", str(colors))[0] == EXIT_INPUT
    out = run(capsys, "orbital", "--family", "G", "--m", "2", "--index", "1", "--emit-format", "dimacs")[1]
    assert out.startswith("p arc 81 1296")


def test_tables_dump(capsys):
    code, out, _ = run(capsys, "tables", "dump", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and {"extraspecial", "exceptional", "class_A_rows"} <= set(data)


def test_verify_tables_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "tables", "--limit", "100000")
    data = json.loads(out)
    assert code == EXIT_OK and data["passed"] and all(c["passed"] for c in data["checks"])


def test_verify_catalog_text(capsys):
    code, out, _ = run(capsys, "--format", "text", "verify", "--suite", "catalog")
    assert code == EXIT_OK and out.count("PASS") >= 6 and "FAIL" not in out


def test_unknown_inputs(capsys):
    assert run(capsys, "construct", "--family", "nope")[0] == EXIT_INPUT
    assert run(capsys, "construct")[0] == EXIT_INPUT
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nope"])


def test_checklist_reports_failures():
    cl = Checklist()
    cl.check("ok", lambda: True)
    cl.check("bad", lambda: (False, "why"))
    cl.check("boom", lambda: 1 / 0)
    assert not cl.ok
    assert [r.passed for r in cl.results] == [True, False, False]
    assert "ZeroDivisionError" in cl.results[2].detail
    assert EXIT_FAIL == 1
