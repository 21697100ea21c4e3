"""Geometry files (JSON) and the builtin geometry catalog."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Callable

from .graph import BRANE, OPEN, Brane, Edge, FTCYGraph, GraphError, Vertex
from .toric import BraneSite, from_toric_diagram


class GeometryError(ValueError):
    """Problem with a geometry document; ``pointer`` is a JSON pointer to the culprit."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def _need(doc: Any, key: str, kind, pointer: str):
    if not isinstance(doc, dict):
        raise GeometryError(pointer, "expected an object")
    if key not in doc:
        raise GeometryError(f"{pointer}/{key}", "missing required key")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise GeometryError(f"{pointer}/{key}", "expected an integer")
    if not isinstance(value, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise GeometryError(f"{pointer}/{key}", f"expected {name}, got {type(value).__name__}")
    return value


def parse_geometry(doc: dict) -> FTCYGraph:
    """Validate a geometry document and build the graph."""
    if not isinstance(doc, dict):
        raise GeometryError("", "geometry document must be a JSON object")
    known = {"name", "vertices", "edges", "branes", "homology", "fan"}
    for key in doc:
        if key not in known:
            raise GeometryError(f"/{key}", "unknown key")
    vertices = []
    for i, v in enumerate(_need(doc, "vertices", list, "")):
        p = f"/vertices/{i}"
        vid = _need(v, "id", str, p)
        slots = _need(v, "slots", list, p)
        if len(slots) != 3:
            raise GeometryError(f"{p}/slots", f"vertex {vid} has {len(slots)} slots, expected 3")
        for j, s in enumerate(slots):
            if not isinstance(s, str):
                raise GeometryError(f"{p}/slots/{j}", "edge ids are strings")
        vertices.append(Vertex(vid, tuple(slots)))
    edges = []
    for i, e in enumerate(_need(doc, "edges", list, "")):
        p = f"/edges/{i}"
        eid = _need(e, "id", str, p)
        ends = _need(e, "endpoints", list, p)
        if len(ends) != 2 or not all(isinstance(x, str) for x in ends):
            raise GeometryError(f"{p}/endpoints", f"edge {eid} needs [tail, head] as strings")
        compact = _need(e, "compact", bool, p)
        n = e.get("n", 0)
        if not isinstance(n, int) or isinstance(n, bool):
            raise GeometryError(f"{p}/n", "expected an integer")
        edges.append(Edge(eid, ends[0], ends[1], compact, n))
    branes = []
    for i, b in enumerate(doc.get("branes", [])):
        p = f"/branes/{i}"
        branes.append(Brane(_need(b, "edge", str, p), _need(b, "framing", int, p)))
    hom = doc.get("homology", {"rank": 0, "projection": {}})
    rank = _need(hom, "rank", int, "/homology")
    proj_doc = hom.get("projection", {})
    if not isinstance(proj_doc, dict):
        raise GeometryError("/homology/projection", "expected an object keyed by edge id")
    projection = {}
    for eid, vec in proj_doc.items():
        if not isinstance(vec, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in vec):
            raise GeometryError(f"/homology/projection/{eid}", "expected a list of integers")
        projection[eid] = tuple(vec)
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise GeometryError("/name", "expected a string")
    fan = doc.get("fan")
    try:
        return FTCYGraph(tuple(vertices), tuple(edges), tuple(branes), rank, projection, name, fan)
    except GraphError as exc:
        raise GeometryError("", str(exc)) from None


def emit_geometry(g: FTCYGraph) -> dict:
    """Canonical document for a graph; parse_geometry(emit_geometry(g)) == g."""
    doc: dict[str, Any] = {}
    if g.name is not None:
        doc["name"] = g.name
    doc["vertices"] = [{"id": v.id, "slots": list(v.slots)} for v in g.vertices]
    doc["edges"] = [
        {"id": e.id, "endpoints": [e.tail, e.head], "compact": e.compact, "n": e.n}
        for e in g.edges
    ]
    doc["branes"] = [{"edge": b.edge, "framing": b.framing} for b in g.branes]
    doc["homology"] = {
        "rank": g.rank,
        "projection": {e: list(g.projection[e]) for e in g.interior_edges},
    }
    if g.fan is not None:
        doc["fan"] = g.fan
    return doc


def canonical(doc: dict) -> dict:
    return emit_geometry(parse_geometry(doc))


def load_geometry(path: str | Path) -> FTCYGraph:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeometryError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_geometry(doc)


# --------------------------------------------------------------------------
# Builtins


def c3_brane(f: int = 0) -> FTCYGraph:
    # b1 = (0,1), b2 = (0,0), b3 = (1,0); the brane sits on span(b2, b3)
    return from_toric_diagram([(0, 1), (0, 0), (1, 0)], [(0, 1, 2)],
                              [BraneSite((1, 2), f)], name=f"c3-brane({f})")


def conifold() -> FTCYGraph:
    return from_toric_diagram([(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 3), (0, 3, 2)],
                              name="conifold")


def conifold_brane(f: int = 0) -> FTCYGraph:
    return from_toric_diagram([(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 3), (0, 3, 2)],
                              [BraneSite((0, 1), f)], name=f"conifold-brane({f})")


def strip_2(f: int = 0) -> FTCYGraph:
    """Two vertices joined by a (0, -2) curve, brane on an outer leg."""
    return from_toric_diagram([(0, 0), (1, 0), (2, 0), (0, 1)], [(0, 1, 3), (1, 2, 3)],
                              [BraneSite((0, 1), f)], name=f"strip-2({f})")


def local_p2() -> FTCYGraph:
    return from_toric_diagram([(0, 0), (1, 0), (0, 1), (-1, -1)],
                              [(0, 1, 2), (0, 2, 3), (0, 3, 1)], name="local-p2")


def local_p1xp1() -> FTCYGraph:
    return from_toric_diagram([(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)],
                              [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1)], name="local-p1xp1")


BUILTINS: dict[str, tuple[Callable[..., FTCYGraph], bool]] = {
    # name -> (constructor, takes a framing)
    "c3-brane": (c3_brane, True),
    "conifold": (conifold, False),
    "conifold-brane": (conifold_brane, True),
    "strip-2": (strip_2, True),
    "local-p2": (local_p2, False),
    "local-p1xp1": (local_p1xp1, False),
}

_NAME = re.compile(r"^\s*([a-z0-9-]+?)\s*(?:\(\s*([+-]?\d+)\s*\))?\s*$")


def builtin_geometries() -> list[str]:
    return [f"{k}(f)" if takes else k for k, (_, takes) in BUILTINS.items()]


def builtin(name: str, framing: int | None = None) -> FTCYGraph:
    m = _NAME.match(name)
    if not m or m.group(1) not in BUILTINS:
        raise GeometryError("", f"unknown geometry {name!r}; builtins: {', '.join(builtin_geometries())}")
    ctor, takes = BUILTINS[m.group(1)]
    f = m.group(2)
    if not takes:
        if f is not None or framing is not None:
            raise GeometryError("", f"{m.group(1)} has no brane, so it takes no framing")
        return ctor()
    if framing is not None:
        f = framing
    return ctor(int(f) if f is not None else 0)


def resolve_geometry(source: str, framing: int | None = None) -> FTCYGraph:
    """A builtin name like ``c3-brane(-1)`` or a path to a geometry JSON file."""
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        if not path.is_file():
            raise GeometryError("", f"no such geometry file: {source}")
        g = load_geometry(path)
        if framing is not None and g.num_branes:
            g = g.with_framings(framing)
        return g
    return builtin(source, framing)


__all__ = [
    "BRANE",
    "BUILTINS",
    "GeometryError",
    "OPEN",
    "builtin",
    "builtin_geometries",
    "canonical",
    "emit_geometry",
    "load_geometry",
    "parse_geometry",
    "resolve_geometry",
]
