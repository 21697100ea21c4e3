"""Toric fans for the open/closed correspondence and transfer of disk BPS numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Mapping, Sequence

from .bps import BPSTable, MissingDivisorClass, NonDiskTable, divisor_classes
from .partitions import PartitionTuple

Vec = tuple[int, ...]


class ValidationFailure(ValueError):
    def __init__(self, message: str, failures: Sequence[str] = ()):
        super().__init__(message + ("" if not failures else ": " + "; ".join(failures)))
        self.failures = list(failures)


class ConeOverlap(ValueError):
    """The new cone meets an existing cone in its interior."""


class BraneError(ValueError):
    """Brane data violates the labelling or outer conditions."""


def det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det(minor)
    return total


def _cross3(a: Vec, b: Vec) -> Vec:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class ToricFan:
    rank: int
    rays: tuple[Vec, ...]
    cones: tuple[tuple[int, ...], ...]
    u3: Vec
    marked: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.cones))
        object.__setattr__(self, "u3", tuple(int(x) for x in self.u3))

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "u3": list(self.u3),
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.cones],
        }
        if self.marked:
            out["marked"] = dict(sorted(self.marked.items()))
        return out

    @classmethod
    def from_json(cls, doc: Mapping) -> "ToricFan":
        return cls(int(doc["rank"]), doc["rays"], doc["cones"], doc["u3"], dict(doc.get("marked", {})))


@dataclass(frozen=True)
class FanVerdict:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def validate_cy_fan(fan: ToricFan) -> FanVerdict:
    """Primitive rays, <u3, b> = 1 on every ray, and unimodular top cones."""
    failures = []
    for i, r in enumerate(fan.rays):
        if len(r) != fan.rank:
            failures.append(f"ray {i} has dimension {len(r)}, expected {fan.rank}")
            continue
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            failures.append(f"ray {i} = {list(r)} is not primitive")
        if _dot(fan.u3, r) != 1:
            failures.append(f"ray {i} = {list(r)} pairs to {_dot(fan.u3, r)} with u3 (CY condition)")
    for c in fan.cones:
        if len(c) != fan.rank:
            failures.append(f"cone {list(c)} has {len(c)} rays, expected {fan.rank}")
            continue
        if any(i < 0 or i >= len(fan.rays) for i in c):
            failures.append(f"cone {list(c)} refers to a missing ray")
            continue
        d = det([fan.rays[i] for i in c])
        if abs(d) != 1:
            failures.append(f"cone {list(c)} has determinant {d} (not smooth)")
    return FanVerdict(not failures, tuple(failures))


@dataclass(frozen=True)
class BraneSpec:
    """Outer brane on the ray-cone tau = span(b2, b3) inside sigma = span(b1, b2, b3)."""

    i1: int
    i2: int
    i3: int
    framing: int = 0
    outer_assumption_asserted: bool = False


def check_brane(fan: ToricFan, brane: BraneSpec) -> None:
    idx = (brane.i1, brane.i2, brane.i3)
    if len(set(idx)) != 3 or any(i < 0 or i >= len(fan.rays) for i in idx):
        raise BraneError(f"brane indices {list(idx)} must be three distinct ray indices")
    if tuple(sorted(idx)) not in fan.cones:
        raise BraneError(f"span of rays {list(idx)} is not a top cone")
    tau = {brane.i2, brane.i3}
    owners = [c for c in fan.cones if tau <= set(c)]
    if len(owners) != 1:
        raise BraneError(
            f"tau = span(b{brane.i2}, b{brane.i3}) is a facet of {len(owners)} cones; "
            "an outer brane needs exactly one"
        )
    if det([fan.rays[i] for i in idx]) <= 0:
        raise BraneError("(b1, b2, b3) must be positively oriented")


def _interiors_overlap(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    """Do two simplicial 3-cones share interior points?  Exact separating-plane search."""
    pool = list(a) + list(b)
    for u, v in combinations(pool, 2):
        n = _cross3(u, v)
        if not any(n):
            continue
        sa = [_dot(n, r) for r in a]
        sb = [_dot(n, r) for r in b]
        if (all(x >= 0 for x in sa) and all(y <= 0 for y in sb)) or (
            all(x <= 0 for x in sa) and all(y >= 0 for y in sb)
        ):
            return False
    return True


def build_relative_Y(fan3: ToricFan, brane: BraneSpec) -> ToricFan:
    """Add b_new = -b1 - f b2 + (f+1) b3 and the cone span(b2, b3, b_new)."""
    verdict = validate_cy_fan(fan3)
    if not verdict:
        raise ValidationFailure("input fan is not a smooth CY fan", verdict.failures)
    if fan3.rank != 3:
        raise ValidationFailure(f"expected a rank-3 fan, got rank {fan3.rank}")
    check_brane(fan3, brane)
    b1, b2, b3 = (fan3.rays[i] for i in (brane.i1, brane.i2, brane.i3))
    f = brane.framing
    new = tuple(-x - f * y + (f + 1) * z for x, y, z in zip(b1, b2, b3))
    cone = (brane.i2, brane.i3, len(fan3.rays))
    for c in fan3.cones:
        if set(c) >= {brane.i2, brane.i3}:
            continue
        if _interiors_overlap([fan3.rays[i] for i in c], [b2, b3, new]):
            raise ConeOverlap(
                f"new cone span(b2, b3, b_new) overlaps cone {list(c)}; "
                "the brane does not stay outer after compactifying its leg"
            )
    marked = {"b1": brane.i1, "b2": brane.i2, "b3": brane.i3, "new": len(fan3.rays),
              "framing": f, "outer_assumption_asserted": brane.outer_assumption_asserted}
    return ToricFan(3, fan3.rays + (new,), fan3.cones + (cone,), fan3.u3, marked)


def build_fourfold(fanY: ToricFan) -> ToricFan:
    """Rank-4 fan: rays b_1..b_R, b_new + b3 + v, b3 + v with v = e4."""
    m = fanY.marked
    if not {"b2", "b3", "new"} <= set(m):
        raise ValidationFailure("fan was not produced by build_relative_Y")
    R = m["new"]
    lift = [tuple(r) + (0,) for r in fanY.rays[:R]]
    b3 = lift[m["b3"]]
    v = (0, 0, 0, 1)
    t1 = tuple(x + y + z for x, y, z in zip(tuple(fanY.rays[R]) + (0,), b3, v))
    t2 = tuple(y + z for y, z in zip(b3, v))
    rays = tuple(lift) + (t1, t2)
    cones = [tuple(c) + (R + 1,) for c in fanY.cones if R not in c]
    cones.append((m["b2"], m["b3"], R, R + 1))
    marked = dict(m)
    marked.update({"D_tilde": R, "D_tilde_2": m["b2"], "b_tilde_new": R, "b_tilde_extra": R + 1})
    out = ToricFan(4, rays, tuple(cones), tuple(fanY.u3) + (0,), marked)
    verdict = validate_cy_fan(out)
    if not verdict:
        raise ValidationFailure("four-fold fan fails validation", verdict.failures)
    return out


def fan_of_graph(fan_doc: Mapping) -> tuple[ToricFan, list[BraneSpec]]:
    variant = fan_doc.get("variant", "standard")
    if variant != "standard":
        raise ValidationFailure(
            f"fan variant {variant!r} is not supported: the semi-projective variant of the "
            "four-fold needs equivariant insertions and can be an orbifold; use 'standard'",
            [f"/fan/variant: {variant}"],
        )
    fan = ToricFan(int(fan_doc.get("rank", 3)), fan_doc["rays"], fan_doc["cones"], fan_doc["u3"])
    branes = [
        BraneSpec(int(b["b1"]), int(b["b2"]), int(b["b3"]), int(b.get("framing", 0)),
                  bool(b.get("outer_assumption_asserted", False)))
        for b in fan_doc.get("branes", [])
    ]
    return fan, branes


# --------------------------------------------------------------------------
# BPS transfer


@dataclass(frozen=True)
class Correspondence:
    source: str
    iota: tuple[tuple[int, ...], ...]
    gamma_tilde: tuple[str, str] = ("D_tilde", "D_tilde_2")

    def apply(self, beta: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(r * b for r, b in zip(row, beta)) for row in self.iota)

    def is_unimodular(self) -> bool:
        return abs(det([list(r) for r in self.iota])) == 1


def correspondence_for(source: str, rank: int) -> Correspondence:
    """Identity in the basis (H_2 coordinates of the interior edges, disk class)."""
    n = rank + 1
    return Correspondence(source, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def transfer_bps(open_table: BPSTable, corr: Correspondence | None = None) -> dict[tuple, int]:
    """Genus-zero closed numbers of the four-fold: n~ = -n_{0, beta, (d)}."""
    out = {}
    for (beta, mu), values in open_table.values.items():
        if len(mu) != 1 or len(mu[0]) != 1:
            raise NonDiskTable(f"class beta={list(beta)} has winding {mu}; only disk windings transfer")
        if corr is None:
            corr = correspondence_for(open_table.geometry, len(beta) - 1)
        n0 = values[0] if values else 0
        out[corr.apply(beta)] = -n0
    return out


def kp_resum(closed: Mapping[tuple, int], beta: Sequence[int]) -> Fraction:
    """sum_{k | beta} n~_{beta/k} / k^2."""
    total = Fraction(0)
    for k, (b, _) in divisor_classes(beta):
        if b not in closed:
            raise MissingDivisorClass(f"no transferred value for class {list(b)}")
        total += Fraction(closed[b], k * k)
    return total


@dataclass(frozen=True)
class KPRow:
    beta: tuple[int, ...]
    n_tilde: int
    N_kp: Fraction
    N_open: Fraction
    integral: bool

    @property
    def match(self) -> bool:
        return self.N_kp == self.N_open


def kp_table(closed: Mapping[tuple, int], N_values: Mapping[tuple, Fraction]) -> list[KPRow]:
    rows = []
    for beta in sorted(closed, key=lambda b: (sum(b), b)):
        n = closed[beta]
        rows.append(KPRow(beta, n, kp_resum(closed, beta), Fraction(N_values[beta]),
                          isinstance(n, int) or getattr(n, "denominator", 1) == 1))
    return rows


def disk_windings(d: int) -> PartitionTuple:
    return PartitionTuple([[d]])
