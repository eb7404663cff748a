import json

import pytest

from rigidpack.cli import main, canonical_dumps, load_graph, parse_setfunc
from rigidpack.graph import MultiGraph


def write_graph(tmp_path, name, n, edges):
    path = tmp_path / f"{name}.json"
    path.write_text(canonical_dumps({"name": name, "n": n,
                                     "edges": [list(e) for e in edges]}))
    return str(path)


@pytest.fixture
def k4(tmp_path):
    return write_graph(tmp_path, "k4", 4,
                       [(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def c4(tmp_path):
    return write_graph(tmp_path, "c4", 4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_rigid_true_exit_zero(capsys, k4):
    code, out = run(capsys, "--format", "structured",
                    "rigid", "--graph", k4, "--func", "lmn:2,3")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] is True
    assert len(report["certificates"]["edges"]) == 5


def test_sparse_false_exit_one(capsys, k4):
    code, out = run(capsys, "--format", "structured",
                    "sparse", "--graph", k4, "--func", "lmn:2,3")
    assert code == 1
    report = json.loads(out)
    assert report["certificates"]["violation"] == [0, 1, 2, 3]


def test_pack_deficient_reports_structure(capsys, c4):
    code, out = run(capsys, "--format", "structured",
                    "pack", "--graph", c4, "--funcs", "lmn:1,1", "lmn:1,1")
    assert code == 1
    report = json.loads(out)
    assert "structure" in report["certificates"]


def test_pack_hypothesis_failure_exit_two(capsys, c4):
    code, _ = run(capsys, "pack", "--graph", c4,
                  "--l", "lmn:1,1", "--ell", "lmn:2,3")
    assert code == 2


def test_decompose_error_exit_two(capsys, c4):
    code, _ = run(capsys, "decompose", "--graph", c4,
                  "--func", "lmn:1,1", "--parts", "2")
    assert code == 2


def test_parse_error_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[0, 1]')
    code = main(["sparse", "--graph", str(bad), "--func", "lmn:1,1"])
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err and "column" in err


def test_gen_is_deterministic(capsys):
    _, first = run(capsys, "gen", "--family", "random-regular",
                   "--n", "10", "--r", "4", "--seed", "7")
    _, second = run(capsys, "gen", "--family", "random-regular",
                    "--n", "10", "--r", "4", "--seed", "7")
    assert first == second
    record = json.loads(first)
    g = MultiGraph(record["n"], [tuple(e) for e in record["edges"]])
    assert all(d == 4 for d in g.degrees)


def test_gen_rejects_impossible_params(capsys):
    code = main(["gen", "--family", "random-regular", "--n", "5", "--r", "3"])
    assert code == 2


def test_canonical_round_trip(tmp_path, capsys):
    _, out = run(capsys, "gen", "--family", "complete", "--n", "4")
    path = tmp_path / "k4.json"
    path.write_text(out)
    graph, meta = load_graph(str(path))
    assert canonical_dumps({"name": meta["name"], "n": graph.n,
                            "edges": [[u, v] for u, v in graph.edges]}) == out


def test_verify_reproduces_reports(tmp_path, capsys, k4, c4):
    cases = [
        ("rigid", ["rigid", "--graph", k4, "--func", "lmn:2,3"]),
        ("sparse", ["sparse", "--graph", k4, "--func", "lmn:2,3"]),
        ("pack", ["pack", "--graph", k4, "--funcs", "lmn:1,1", "lmn:1,1"]),
        ("orient", ["orient", "--graph", c4, "--mode", "eulerian"]),
        ("orient-rigid", ["orient", "--graph", c4, "--mode", "rigid",
                          "--func", "mod:lmn:1,1:V=0"]),
    ]
    for name, argv in cases:
        code, out = run(capsys, "--format", "structured", *argv)
        path = tmp_path / f"{name}.json"
        path.write_text(out)
        vcode, vout = run(capsys, "verify", "--report", str(path))
        assert vcode == 0, f"{name}: {vout}"
        assert "REPRODUCED" in vout


def test_verify_detects_tampering(tmp_path, capsys, k4):
    code, out = run(capsys, "--format", "structured",
                    "rigid", "--graph", k4, "--func", "lmn:2,3")
    report = json.loads(out)
    report["certificates"]["edges"] = [0, 1, 2, 3]  # too small for the claim
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(report))
    vcode, vout = run(capsys, "verify", "--report", str(path))
    assert vcode == 1 and "MISMATCH" in vout


def test_hypothesis_subcommand(capsys, k4):
    code, out = run(capsys, "--format", "structured",
                    "hypothesis", "--graph", k4, "--check", "rigid-cuts",
                    "--k-int", "2")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] is True


def test_oracle_subcommand(capsys, k4):
    code, out = run(capsys, "--format", "structured",
                    "oracle", "--graph", k4, "--what", "rank",
                    "--func", "lmn:2,3")
    assert code == 0
    assert json.loads(out)["certificates"]["rank"] == 5


def test_oracle_arc_connected(tmp_path, capsys):
    tri = write_graph(tmp_path, "tri", 3, [(0, 1), (1, 2), (2, 0)])
    code, out = run(capsys, "--format", "structured",
                    "oracle", "--graph", tri, "--what", "arc-connected",
                    "--heads", "1,2,0", "--func", "mod:const:1:V=0")
    assert code == 0 and json.loads(out)["verdict"] is True
    code, out = run(capsys, "--format", "structured",
                    "oracle", "--graph", tri, "--what", "arc-connected",
                    "--heads", "1,2,2", "--func", "mod:const:1:V=0")
    assert code == 1
    assert json.loads(out)["certificates"]["witness"] is not None


def test_oracle_census_count(capsys):
    code, out = run(capsys, "--format", "structured",
                    "oracle", "--what", "census", "--census-n", "4",
                    "--census-filter", "connected")
    assert code == 0
    assert json.loads(out)["certificates"]["count"] == 38


def test_setfunc_tokens(tmp_path):
    f = parse_setfunc("mod:lmn:2,3:V=0", 4)
    assert f.value(0b1111) == 0 and f.value(0b0111) == 3
    w = parse_setfunc("w:1,0,2,1", 4)
    assert w.value(0b0100) == 2
    table = tmp_path / "t.json"
    table.write_text(json.dumps(
        {"n": 2, "values": {"0": 1, "1": 1, "0,1": 1}}))
    t = parse_setfunc(f"table:@{table}", 2)
    assert t.value(0b11) == 1
    with pytest.raises(ValueError, match="unknown"):
        parse_setfunc("zzz:1", 3)


def test_vertex_named_graphs(tmp_path):
    path = tmp_path / "named.json"
    path.write_text(json.dumps({
        "name": "named", "n": 3,
        "vertex_names": ["a", "b", "c"],
        "edges": [["a", "b"], ["b", "c"]]}))
    graph, meta = load_graph(str(path))
    assert graph.edges == ((0, 1), (1, 2))
    assert meta["vertex_names"] == ["a", "b", "c"]
