import csv
import io
import json

import pytest

from bpsvertex.cli import main, parse_class
from bpsvertex.geometry import (
    BUILTINS,
    GeometryError,
    builtin,
    builtin_geometries,
    canonical,
    emit_geometry,
    parse_geometry,
    resolve_geometry,
)
from bpsvertex.graph import BRANE, OPEN


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog():
    names = builtin_geometries()
    for want in ["c3-brane(f)", "conifold", "conifold-brane(f)", "strip-2(f)", "local-p2"]:
        assert want in names
    g = builtin("conifold")
    assert len(g.interior_edges) == 1 and g.num_branes == 0
    assert g.edge_map[g.interior_edges[0]].n == 0


def test_c3_brane_shape():
    g = builtin("c3-brane", framing=1)
    assert len(g.vertices) == 1
    assert [e.head for e in g.edges].count(BRANE) == 1
    assert [e.head for e in g.edges].count(OPEN) == 2
    assert g.branes[0].framing == 1
    b = g.fan["branes"][0]
    assert (b["b2"], b["b3"]) == (1, 2)


@pytest.mark.parametrize("name", list(BUILTINS))
def test_roundtrip_builtins(name):
    g = builtin(name)
    doc = emit_geometry(g)
    assert parse_geometry(doc) == g
    assert canonical(json.loads(json.dumps(doc))) == doc


def test_parse_errors_carry_pointers():
    doc = emit_geometry(builtin("conifold"))
    bad = json.loads(json.dumps(doc))
    bad["vertices"][1]["slots"] = bad["vertices"][1]["slots"][:2]
    with pytest.raises(GeometryError) as exc:
        parse_geometry(bad)
    assert exc.value.pointer == "/vertices/1/slots"
    assert bad["vertices"][1]["id"] in str(exc.value)
    bad = json.loads(json.dumps(doc))
    bad["edges"][0]["compact"] = "yes"
    with pytest.raises(GeometryError) as exc:
        parse_geometry(bad)
    assert exc.value.pointer == "/edges/0/compact"
    bad = json.loads(json.dumps(doc))
    bad["extra"] = 1
    with pytest.raises(GeometryError) as exc:
        parse_geometry(bad)
    assert exc.value.pointer == "/extra"
    bad = json.loads(json.dumps(doc))
    del bad["homology"]["projection"]["e0_3"]
    with pytest.raises(GeometryError):
        parse_geometry(bad)


def test_unknown_builtin_and_framing():
    with pytest.raises(GeometryError):
        builtin("quintic")
    with pytest.raises(GeometryError):
        builtin("conifold(1)")


def test_resolve_from_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(emit_geometry(builtin("strip-2(0)"))))
    g = resolve_geometry(str(path), framing=2)
    assert g.branes[0].framing == 2
    with pytest.raises(GeometryError):
        resolve_geometry(str(tmp_path / "missing.json"))


def test_parse_class():
    beta, mu = parse_class("1,2:[2,1]", 1)
    assert beta == (1, 2) and mu == ((2, 1),)
    with pytest.raises(ValueError):
        parse_class("1:[1]:[1]", 1)


def test_debug_commands(capsys):
    assert run(capsys, "vertex-w", "[1]", "[]", "[]")[:2] == (0, "1/(x - x^-1)\n")
    assert run(capsys, "char", "[2,1]", "[1,1,1]")[:2] == (0, "2\n")
    code, _, err = run(capsys, "char", "[2]", "[1]")
    assert code == 2 and "error" in err


def test_bps_report(capsys):
    code, out, _ = run(capsys, "bps", "--geometry", "c3-brane(0)", "--max-degree", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"]
    for row in doc["classes"]:
        assert all(isinstance(n, int) for n in row["n"])
    first = doc["classes"][0]
    assert first["beta"] == [1] and first["n"] == [-1]


def test_bad_input_exit_code(capsys):
    assert run(capsys, "bps", "--geometry", "nowhere")[0] == 2
    assert run(capsys, "bps")[0] == 2
    assert run(capsys, "gw", "--geometry", "c3-brane(0)", "--class", "0:[1]")[0] == 2


def test_verify_conifold(capsys):
    code, out, _ = run(capsys, "verify", "--geometry", "conifold", "--max-degree", "4")
    assert code == 0


def test_closed_bps_local_p2(capsys):
    code, out, _ = run(capsys, "closed-bps", "--geometry", "local-p2", "--max-degree", "3")
    assert code == 0
    rows = {tuple(r["beta"]): r["n"] for r in json.loads(out)["classes"]}
    assert rows == {(1,): [3], (2,): [-6], (3,): [27, -10]}


def test_openclosed_report(capsys):
    code, out, _ = run(capsys, "openclosed", "--geometry", "conifold-brane(0)", "--max-degree", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"]


def test_deterministic_and_workers(capsys):
    args = ["bps", "--geometry", "conifold-brane(1)", "--max-degree", "3"]
    a = run(capsys, *args)[1]
    b = run(capsys, *args, "--workers", "2", "--no-cache")[1]
    assert a == b


def test_csv_matches_json(capsys):
    args = ["bps", "--geometry", "strip-2(0)", "--max-degree", "3"]
    doc = json.loads(run(capsys, *args)[1])
    rows = list(csv.DictReader(io.StringIO(run(capsys, *args, "--format", "csv")[1])))
    assert len(rows) == len(doc["classes"])
    for r, j in zip(rows, doc["classes"]):
        assert r["beta"] == " ".join(str(x) for x in j["beta"])
        assert r["windings"] == j["windings"]
        assert r["n"] == " ".join(str(x) for x in j["n"])
        assert r["G_t"] == j["G_t"]


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "gw", "--geometry", "c3-brane(1)", "--max-degree", "2", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["classes"]
