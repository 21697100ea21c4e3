"""Formal toric Calabi-Yau graphs, effective classes, and fibers of the homology map."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .partitions import PartitionTuple, enumerate_partitions

OPEN = "open"
BRANE = "brane"


class GraphError(ValueError):
    """Semantic problem with a graph description."""


class InvalidClass(ValueError):
    """Degree map and winding profile do not fit together."""


class NonPointedEffectiveCone(ValueError):
    """Some nonzero non-negative combination of interior edge classes is zero."""


@dataclass(frozen=True)
class Vertex:
    id: str
    slots: tuple[str, str, str]  # incident edge ids, counterclockwise


@dataclass(frozen=True)
class Edge:
    """Edge oriented tail -> head; ``n`` is the framing integer for that orientation.

    ``head`` is a vertex id, ``"open"`` for a non-compact leg, or ``"brane"``
    for the univalent end of a brane edge.
    """

    id: str
    tail: str
    head: str
    compact: bool
    n: int = 0

    @property
    def is_brane(self) -> bool:
        return self.head == BRANE

    @property
    def is_interior(self) -> bool:
        return self.compact and not self.is_brane


@dataclass(frozen=True)
class Brane:
    edge: str
    framing: int


@dataclass(frozen=True)
class FTCYGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    branes: tuple[Brane, ...] = ()
    rank: int = 0
    projection: dict = field(default_factory=dict, hash=False, compare=True)
    name: str | None = None
    fan: dict | None = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        self.validate()

    # -- structure ----------------------------------------------------------

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def interior_edges(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges if e.is_interior)

    @cached_property
    def brane_edges(self) -> tuple[str, ...]:
        return tuple(b.edge for b in self.branes)

    @cached_property
    def compact_edges(self) -> tuple[str, ...]:
        """Interior edges in file order, then brane edges in brane order.

        This is the coordinate order of degree vectors everywhere.
        """
        return self.interior_edges + self.brane_edges

    @property
    def num_branes(self) -> int:
        return len(self.branes)

    def framing_of(self, edge_id: str) -> int:
        return self.edge_map[edge_id].n

    def validate(self) -> None:
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError(f"duplicate edge ids: {sorted(i for i in set(ids) if ids.count(i) > 1)}")
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise GraphError("duplicate vertex ids")
        if set(vids) & {OPEN, BRANE}:
            raise GraphError(f"vertex ids {OPEN!r} and {BRANE!r} are reserved")
        emap = {e.id: e for e in self.edges}
        incidence: dict[str, list[str]] = {v: [] for v in vids}
        for e in self.edges:
            if e.tail not in incidence:
                raise GraphError(f"edge {e.id}: tail {e.tail!r} is not a trivalent vertex")
            incidence[e.tail].append(e.id)
            if e.head in incidence:
                incidence[e.head].append(e.id)
                if not e.compact:
                    raise GraphError(f"edge {e.id} joins two vertices but is marked non-compact")
            elif e.head == OPEN:
                if e.compact:
                    raise GraphError(f"edge {e.id} is an open leg but is marked compact")
            elif e.head == BRANE:
                if not e.compact:
                    raise GraphError(f"brane edge {e.id} must be compact")
            else:
                raise GraphError(f"edge {e.id}: dangling endpoint {e.head!r}")
        for v in self.vertices:
            if len(v.slots) != 3:
                raise GraphError(f"vertex {v.id} has {len(v.slots)} slots, expected 3")
            for s in v.slots:
                if s not in emap:
                    raise GraphError(f"vertex {v.id}: unknown edge {s!r} in slots")
            if sorted(v.slots) != sorted(incidence[v.id]):
                raise GraphError(
                    f"vertex {v.id}: slots {list(v.slots)} disagree with incident edges "
                    f"{sorted(incidence[v.id])}"
                )
        seen = set()
        for b in self.branes:
            if b.edge in seen:
                raise GraphError(f"brane edge {b.edge} listed twice")
            seen.add(b.edge)
            if b.edge not in emap or not emap[b.edge].is_brane:
                raise GraphError(f"brane on {b.edge!r}, which is not a brane edge")
            if emap[b.edge].n != b.framing:
                raise GraphError(f"brane edge {b.edge}: n = {emap[b.edge].n} but framing = {b.framing}")
        dangling = [e.id for e in self.edges if e.is_brane and e.id not in seen]
        if dangling:
            raise GraphError(f"brane edges without a brane entry: {dangling}")
        for eid in (e.id for e in self.edges if e.is_interior):
            vec = self.projection.get(eid)
            if vec is None or len(vec) != self.rank:
                raise GraphError(f"edge {eid}: projection must be a vector of length {self.rank}")
        extra = set(self.projection) - {e.id for e in self.edges if e.is_interior}
        if extra:
            raise GraphError(f"projection given for non-interior edges: {sorted(extra)}")

    def with_framings(self, framings: Sequence[int] | int) -> "FTCYGraph":
        if isinstance(framings, int):
            framings = [framings] * self.num_branes
        if len(framings) != self.num_branes:
            raise GraphError(f"{len(framings)} framings for {self.num_branes} branes")
        fmap = {b.edge: f for b, f in zip(self.branes, framings)}
        edges = tuple(
            Edge(e.id, e.tail, e.head, e.compact, fmap[e.id]) if e.id in fmap else e
            for e in self.edges
        )
        branes = tuple(Brane(b.edge, fmap[b.edge]) for b in self.branes)
        fan = self.fan
        if fan is not None and fan.get("branes"):
            fan = dict(fan)
            fan["branes"] = [
                {**fb, "framing": fmap.get(fb.get("edge"), fb.get("framing", 0))}
                for fb in self.fan["branes"]
            ]
        return FTCYGraph(self.vertices, edges, branes, self.rank, dict(self.projection),
                         self.name, fan)

    # -- homology -------------------------------------------------------------

    def project(self, degrees: Sequence[int]) -> tuple[int, ...]:
        """Class (beta', disk degrees) of a degree vector in compact-edge order."""
        ni = len(self.interior_edges)
        beta = [0] * self.rank
        for eid, d in zip(self.interior_edges, degrees[:ni]):
            for j, c in enumerate(self.projection[eid]):
                beta[j] += c * d
        return tuple(beta) + tuple(degrees[ni:])


@dataclass(frozen=True, order=True)
class EffClass:
    """Degree vector (compact-edge order) together with one partition per brane."""

    degrees: tuple[int, ...]
    windings: PartitionTuple = PartitionTuple()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not isinstance(self.windings, PartitionTuple):
            object.__setattr__(self, "windings", PartitionTuple(self.windings))

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def is_zero(self) -> bool:
        return not any(self.degrees)

    def __add__(self, other: "EffClass") -> "EffClass":
        return EffClass(
            tuple(a + b for a, b in zip(self.degrees, other.degrees)),
            self.windings.union(other.windings),
        )

    def __str__(self):
        return f"d={list(self.degrees)} mu={self.windings}"


def check_class(g: FTCYGraph, c: EffClass) -> None:
    if len(c.degrees) != len(g.compact_edges):
        raise InvalidClass(f"{len(c.degrees)} degrees for {len(g.compact_edges)} compact edges")
    if len(c.windings) != g.num_branes:
        raise InvalidClass(f"{len(c.windings)} windings for {g.num_branes} branes")
    if any(d < 0 for d in c.degrees):
        raise InvalidClass(f"negative degree in {c}")
    ni = len(g.interior_edges)
    for i, mu in enumerate(c.windings):
        if mu.size != c.degrees[ni + i]:
            raise InvalidClass(
                f"winding {mu} on brane {g.branes[i].edge} does not partition degree {c.degrees[ni + i]}"
            )


def degree_vectors(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """All non-negative n-vectors with sum <= total, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in degree_vectors(n - 1, total - first):
            yield (first,) + rest


def classes_up_to(g: FTCYGraph, max_degree: int) -> list[EffClass]:
    """Every nonzero class whose total edge degree is at most max_degree."""
    ni = len(g.interior_edges)
    out = []
    for degs in degree_vectors(len(g.compact_edges), max_degree):
        if not any(degs):
            continue
        for winds in product(*(enumerate_partitions(d) for d in degs[ni:])):
            out.append(EffClass(degs, PartitionTuple(winds)))
    return out


# --------------------------------------------------------------------------
# Fibers of the projection


def positive_functional(vectors: Sequence[Sequence[int]], rank: int) -> list[Fraction]:
    """A covector w with w.v > 0 for every v, or NonPointedEffectiveCone.

    Found by linear programming, then certified in exact arithmetic.
    """
    if not vectors:
        return [Fraction(0)] * rank
    if any(not any(v) for v in vectors):
        raise NonPointedEffectiveCone("an interior edge has zero homology class")
    from scipy.optimize import linprog

    a_ub = [[-float(c) for c in v] for v in vectors]
    res = linprog(
        c=[0.0] * rank, A_ub=a_ub, b_ub=[-1.0] * len(vectors),
        bounds=[(None, None)] * rank, method="highs",
    )
    if res.status == 2:
        raise NonPointedEffectiveCone(
            "no covector is positive on all interior edge classes; the fiber would be infinite"
        )
    if res.status != 0:
        raise RuntimeError(f"linear program failed: {res.message}")
    for bound in (10**3, 10**6, 10**9):
        w = [Fraction(x).limit_denominator(bound) for x in res.x]
        if all(sum(wi * c for wi, c in zip(w, v)) > 0 for v in vectors):
            return w
    raise RuntimeError("could not certify the positive covector exactly")


def fiber_enumerate(g: FTCYGraph, beta: Sequence[int]) -> list[tuple[int, ...]]:
    """All degree vectors d >= 0 (compact-edge order) projecting to beta."""
    beta = tuple(beta)
    if len(beta) != g.rank + g.num_branes:
        raise InvalidClass(f"class {beta} has length {len(beta)}, expected {g.rank + g.num_branes}")
    target, disks = beta[: g.rank], beta[g.rank:]
    if any(d < 0 for d in disks):
        return []
    vecs = [g.projection[e] for e in g.interior_edges]
    w = positive_functional(vecs, g.rank)
    budget = sum(wi * b for wi, b in zip(w, target))
    weights = [sum(wi * c for wi, c in zip(w, v)) for v in vecs]
    out = []

    def rec(i, chosen, spent):
        if i == len(vecs):
            if g.project(chosen + [0] * g.num_branes)[: g.rank] == target:
                out.append(tuple(chosen) + disks)
            return
        top = int((budget - spent) / weights[i]) if weights else 0
        for d in range(top + 1):
            rec(i + 1, chosen + [d], spent + d * weights[i])

    if not vecs:
        if not any(target):
            out.append(disks)
        return out
    if budget < 0:
        return out
    rec(0, [], Fraction(0))
    return out

