"""Build FTCY graphs from toric diagrams (lattice polygon plus unimodular triangulation)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .graph import BRANE, OPEN, Brane, Edge, FTCYGraph, GraphError, Vertex

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _ccw(points: Sequence[Point], tri: Sequence[int]) -> tuple[int, int, int]:
    i, j, k = tri
    area = _cross(points[i], points[j], points[k])
    if abs(area) != 1:
        raise GraphError(f"triangle {list(tri)} is not unimodular (twice area {area})")
    return (i, j, k) if area > 0 else (i, k, j)


def _sides(tri: tuple[int, int, int]) -> list[tuple[int, int]]:
    i, j, k = tri
    return [(i, j), (j, k), (k, i)]


def _relation(points, p, q, r1, r2) -> tuple[int, int]:
    """(a, b) with r1 + r2 + a p + b q = 0 for the lifted vectors (pt, 1)."""
    P, Q, R1, R2 = (points[x] for x in (p, q, r1, r2))
    sx, sy = R1[0] + R2[0], R1[1] + R2[1]
    # a + b = -2 and a P + b Q = -(R1 + R2)  =>  a (P - Q) = -(R1 + R2) + 2 Q
    dx, dy = P[0] - Q[0], P[1] - Q[1]
    tx, ty = -sx + 2 * Q[0], -sy + 2 * Q[1]
    a = Fraction(tx, dx) if dx else Fraction(ty, dy)
    if a.denominator != 1 or a * dx != tx or a * dy != ty:
        raise GraphError(f"segment {p}-{q} has no integral relation")
    return int(a), -2 - int(a)


def lattice_basis(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Echelon Z-basis of the lattice spanned by the given integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    col = 0
    width = len(rows[0]) if rows else 0
    while rows and col < width:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        # Euclid on the column
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                m = r[col] // piv[col]
                for j in range(width):
                    r[j] -= m * piv[j]
            live = [r for r in live if r[col]]
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rows if r[col] == 0 and any(r)]
        # rows that still had entries in this column were reduced into piv
        col += 1
    return basis


def coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    v = list(v)
    out = []
    for b in basis:
        col = next(j for j, x in enumerate(b) if x)
        c = v[col] // b[col]
        if c * b[col] != v[col]:
            raise GraphError(f"vector {v} is not in the lattice")
        out.append(c)
        v = [x - c * y for x, y in zip(v, b)]
    if any(v):
        raise GraphError("vector is not in the lattice")
    return out


def _solve(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with sum c_i rows_i = v, or None if rows are dependent."""
    n = len(rows)
    m = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _positive_coordinates(projection: dict, rank: int) -> dict:
    """Re-express edge classes in a basis of edge classes that makes them all non-negative.

    Tries unimodular bases drawn from the edge classes themselves; keeps the
    echelon coordinates if none works.
    """
    classes = sorted(set(projection.values()))
    for combo in combinations(classes, rank):
        coords = {}
        for e, v in projection.items():
            c = _solve(combo, v)
            if c is None or any(x < 0 or x.denominator != 1 for x in c):
                break
            coords[e] = tuple(int(x) for x in c)
        else:
            # unimodular iff the basis vectors of the old lattice are integral combos too
            unit = [[int(i == j) for j in range(rank)] for i in range(rank)]
            if all(all(x.denominator == 1 for x in _solve(combo, u)) for u in unit):
                return coords
    return projection


@dataclass(frozen=True)
class BraneSite:
    side: tuple[int, int]  # boundary segment of the diagram (point indices)
    framing: int = 0


def from_toric_diagram(points: Sequence[Point], triangles: Sequence[Sequence[int]],
                       branes: Sequence[BraneSite] = (), name: str | None = None) -> FTCYGraph:
    """FTCY graph of the toric CY3 with the given diagram.

    Vertices are triangles with slots ordered along the counterclockwise sides.
    An interior edge shared by triangles T1 -> T2 along the side (p, q), listed
    counterclockwise in T1, carries n = (D_p . C) + 1.
    """
    points = [tuple(p) for p in points]
    tris = [_ccw(points, t) for t in triangles]
    owner: dict[frozenset, list[tuple[int, tuple[int, int]]]] = {}
    for ti, t in enumerate(tris):
        for s in _sides(t):
            owner.setdefault(frozenset(s), []).append((ti, s))
    brane_sides = {frozenset(b.side): b for b in branes}
    edges = []
    eid: dict[tuple[int, frozenset], str] = {}
    relations = {}
    for key in sorted(owner, key=lambda k: sorted(k)):
        users = owner[key]
        lo, hi = sorted(key)
        if len(users) == 2:
            (t1, (p, q)), (t2, _) = users
            r1 = next(x for x in tris[t1] if x not in key)
            r2 = next(x for x in tris[t2] if x not in key)
            a, b = _relation(points, p, q, r1, r2)
            name_ = f"e{lo}_{hi}"
            edges.append(Edge(name_, f"v{t1}", f"v{t2}", True, a + 1))
            rel = [0] * len(points)
            rel[r1] += 1
            rel[r2] += 1
            rel[p] += a
            rel[q] += b
            relations[name_] = rel
            eid[(t1, key)] = eid[(t2, key)] = name_
        elif len(users) == 1:
            t1, _ = users[0]
            if key in brane_sides:
                f = brane_sides[key].framing
                name_ = f"b{lo}_{hi}"
                edges.append(Edge(name_, f"v{t1}", BRANE, True, f))
            else:
                name_ = f"o{lo}_{hi}"
                edges.append(Edge(name_, f"v{t1}", OPEN, False, 0))
            eid[(t1, key)] = name_
        else:
            raise GraphError(f"segment {sorted(key)} is shared by {len(users)} triangles")
    for b in branes:
        if len(owner.get(frozenset(b.side), [])) != 1:
            raise GraphError(f"brane side {list(b.side)} is not a boundary segment")
    vertices = tuple(
        Vertex(f"v{ti}", tuple(eid[(ti, frozenset(s))] for s in _sides(t)))
        for ti, t in enumerate(tris)
    )
    basis = lattice_basis(list(relations.values()))
    projection = {e: tuple(coordinates(basis, rel)) for e, rel in relations.items()}
    projection = _positive_coordinates(projection, len(basis))
    brane_objs = []
    fan_branes = []
    for b in branes:
        key = frozenset(b.side)
        ti, (p, q) = owner[key][0]
        r = next(x for x in tris[ti] if x not in key)
        edge = f"b{min(key)}_{max(key)}"
        brane_objs.append(Brane(edge, b.framing))
        # (b1, b2, b3) = (r, p, q) is counterclockwise since (p, q) is a ccw side
        fan_branes.append({"edge": edge, "b1": r, "b2": p, "b3": q, "framing": b.framing})
    fan = {
        "rank": 3,
        "u3": [0, 0, 1],
        "rays": [[x, y, 1] for x, y in points],
        "cones": [list(t) for t in tris],
        "branes": fan_branes,
    }
    order = {e.id: i for i, e in enumerate(edges)}
    brane_objs.sort(key=lambda b: order[b.edge])
    return FTCYGraph(vertices, tuple(edges), tuple(brane_objs), len(basis), projection, name, fan)
