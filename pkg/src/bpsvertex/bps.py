"""Multiple-cover resummation: from open or closed invariants to integer BPS counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .partitions import PartitionTuple
from .qalgebra import (
    ZERO_R,
    RatFuncQ,
    TRational,
    bracket,
    bracket_partition,
    from_t,
    i_power,
    lt_class_test,
    t_variable,
    to_t,
)

ClassKey = tuple  # (beta: tuple[int, ...], windings: PartitionTuple)


class MissingDivisorClass(KeyError):
    """A class needed by the multiple-cover sum was not supplied."""


class NonDiskTable(ValueError):
    """Operation needs one brane with a single-part winding."""


def moebius(k: int) -> int:
    if k < 1:
        raise ValueError("Moebius function is defined for k >= 1")
    out, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            out = -out
        p += 1
    return -out if k > 1 else out


def class_key(beta: Sequence[int], windings: Sequence[Sequence[int]] = ()) -> ClassKey:
    return (tuple(beta), PartitionTuple(windings))


def class_gcd(beta: Sequence[int], windings: Sequence[Sequence[int]] = ()) -> int:
    g = 0
    for b in beta:
        g = gcd(g, b)
    for mu in windings:
        for part in mu:
            g = gcd(g, part)
    return g


def divisor_classes(beta, windings=()) -> list[tuple[int, ClassKey]]:
    """Pairs (k, (beta/k, windings/k)) for every k dividing the class."""
    windings = PartitionTuple(windings)
    g = class_gcd(beta, windings)
    out = []
    for k in range(1, g + 1):
        if g % k == 0:
            out.append((k, (tuple(b // k for b in beta), windings.divide(k))))
    return out


def _lookup(F: Mapping, key: ClassKey) -> RatFuncQ:
    try:
        return F[key]
    except KeyError:
        raise MissingDivisorClass(f"no value for class beta={list(key[0])} mu={key[1]}") from None


def h_series(F: Mapping[ClassKey, RatFuncQ], beta, windings=()) -> RatFuncQ:
    """H = sum_{k | class} moebius(k)/k F_{class/k}(q^k)."""
    out = ZERO_R
    for k, key in divisor_classes(beta, windings):
        m = moebius(k)
        if m:
            out = out + _lookup(F, key).substitute_power(k).scale(Fraction(m, k))
    return out


def _winding_factor(windings: PartitionTuple) -> RatFuncQ:
    """prod_i i^{l(mu^i)} [mu^i] / z_{mu^i}."""
    num = bracket_partition([p for mu in windings for p in mu])
    c = i_power(windings.length) * Fraction(1, windings.z())
    return RatFuncQ(num).scale(c)


def g_function(H: RatFuncQ, windings=()) -> RatFuncQ:
    """G = H * prod_i z_{mu^i} / (i^{l(mu^i)} [mu^i])."""
    return H / _winding_factor(PartitionTuple(windings))


@dataclass(frozen=True)
class Verdict:
    integrality: bool = True
    finiteness: bool = True
    lt_membership: bool = True
    symmetric: bool = True
    real: bool = True
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return (self.integrality and self.finiteness and self.lt_membership
                and self.symmetric and self.real)

    def as_dict(self) -> dict:
        return {
            "integrality": self.integrality,
            "finiteness": self.finiteness,
            "lt_membership": self.lt_membership,
            "symmetric": self.symmetric,
            "real": self.real,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class Extraction:
    genus_values: tuple[int | Fraction, ...]
    verdict: Verdict
    t_form: TRational | None = None

    @property
    def n(self) -> tuple:
        return self.genus_values


def extract_bps(G: RatFuncQ) -> Extraction:
    """Read n_g = -[t^g](t G) and judge integrality, finiteness and L[t] membership."""
    if G.is_zero():
        return Extraction((), Verdict())
    if not G.is_real():
        return Extraction((), Verdict(False, False, False, True, False,
                                      f"imaginary part survives in G = {G}"))
    if G.invert_q() != G or G.negate_x() != G:
        return Extraction((), Verdict(False, False, False, False, True,
                                      f"G is not a symmetric function of q: {G}"))
    T = to_t(G)
    lt = lt_class_test(T)
    tG = T.times_t()
    if not tG.is_polynomial():
        return Extraction((), Verdict(False, False, lt.in_lt, True, True,
                                      f"t*G has denominator {tG.den}"), T)
    coeffs = tG.num.coeffs()
    values = []
    bad = None
    for g, c in enumerate(coeffs):
        if c.denominator == 1:
            values.append(-int(c))
        else:
            values.append(-c)
            bad = bad or f"coefficient of t^{g} in t*G is {c}"
    return Extraction(tuple(values), Verdict(bad is None, True, lt.in_lt, True, True,
                                             bad or lt.witness), T)


def _bps_to_h(values: Sequence, windings: PartitionTuple) -> RatFuncQ:
    """H_class(q) from its BPS numbers: sum_g -n_g t^{g-1} times the winding factor."""
    if not any(values):
        return ZERO_R
    t = t_variable()
    G = ZERO_R
    for g, n in enumerate(values):
        if n:
            G = G + (t ** (g - 1)).scale(-n)
    return G * _winding_factor(windings)


def lmov_roundtrip(table: Mapping[ClassKey, Sequence], beta, windings=()) -> RatFuncQ:
    """Rebuild F_class(q) = sum_{k | class} (1/k) H_{class/k}(q^k) from BPS numbers."""
    out = ZERO_R
    for k, key in divisor_classes(beta, windings):
        values = _lookup(table, key)
        h = _bps_to_h(values, key[1])
        if not h.is_zero():
            out = out + h.substitute_power(k).scale(Fraction(1, k))
    return out


# --------------------------------------------------------------------------
# Closed strings


def closed_g_function(H: RatFuncQ) -> RatFuncQ:
    """Closed multiple-cover sums read H = sum_g n_g (-t)^(g-1); return G with G = sum -n_g t^(g-1)."""
    if H.is_zero():
        return H
    T = to_t(H)
    return -from_t(T.negate_t())


def closed_gv(F_closed: Mapping[tuple, RatFuncQ], beta) -> Extraction:
    """Gopakumar-Vafa numbers of a closed class from closed invariants keyed by beta tuples."""
    beta = tuple(beta)
    F = {(b, PartitionTuple()): v for b, v in F_closed.items()}
    H = h_series(F, beta)
    try:
        G = closed_g_function(H)
    except ValueError as exc:
        return Extraction((), Verdict(False, False, False, False, H.is_real(), str(exc)))
    return extract_bps(G)


def closed_lmov_roundtrip(table: Mapping[tuple, Sequence], beta) -> RatFuncQ:
    t = t_variable()
    out = ZERO_R
    for k, (b, _) in divisor_classes(beta):
        values = _lookup({(key, PartitionTuple()): v for key, v in table.items()}, (b, PartitionTuple()))
        h = ZERO_R
        for g, n in enumerate(values):
            if n:
                h = h + (t ** (g - 1)).scale(n if g % 2 else -n)
        if not h.is_zero():
            out = out + h.substitute_power(k).scale(Fraction(1, k))
    return out


# --------------------------------------------------------------------------
# Tables


@dataclass
class BPSTable:
    geometry: str
    records: dict = field(default_factory=dict)  # (genus, beta, windings) -> int
    verdicts: dict = field(default_factory=dict)  # (beta, windings) -> Verdict
    values: dict = field(default_factory=dict)  # (beta, windings) -> tuple of n_g
    closed: bool = False

    def add(self, key: ClassKey, extraction: Extraction) -> None:
        beta, mu = key
        self.verdicts[key] = extraction.verdict
        self.values[key] = extraction.genus_values
        for g, n in enumerate(extraction.genus_values):
            self.records[(g, beta, mu)] = n

    def get(self, genus: int, beta, windings=()) -> int:
        return self.records.get((genus, tuple(beta), PartitionTuple(windings)), 0)

    def classes(self) -> list[ClassKey]:
        return sorted(self.verdicts, key=lambda k: (sum(k[0]), k[0], [list(p) for p in k[1]]))

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())


# --------------------------------------------------------------------------
# Disks


def _disk_degree(windings: PartitionTuple) -> int:
    if len(windings) != 1 or len(windings[0]) != 1:
        raise NonDiskTable(f"winding profile {windings} is not a single disk winding")
    return windings[0][0]


def disk_specialize(table: BPSTable | Mapping, beta, d: int) -> tuple[Fraction, int]:
    """N = -sum_{k | beta, d} n_{0, beta/k, (d/k)} / k^2, together with n_{0, beta, (d)}."""
    values = table.values if isinstance(table, BPSTable) else table
    windings = PartitionTuple([[d]])
    N = Fraction(0)
    n0 = None
    for k, key in divisor_classes(beta, windings):
        vals = _lookup(values, key)
        n = vals[0] if vals else 0
        if k == 1:
            n0 = n
        N -= Fraction(n, k * k)
    return N, n0


def disk_genus_zero(F_open: RatFuncQ, windings) -> Fraction:
    """Genus-zero disk number read directly from F: the value of F [1] / i at q = 1."""
    _disk_degree(PartitionTuple(windings))
    if F_open.is_zero():
        return Fraction(0)
    R = F_open * RatFuncQ(bracket(1)) * RatFuncQ.constant(i_power(-1))
    value = R.evaluate(1)
    if value.im:
        raise ValueError(f"disk limit is not real: {value}")
    return value.re


def disk_winding(windings) -> int:
    return _disk_degree(PartitionTuple(windings))


__all__ = [
    "BPSTable",
    "ClassKey",
    "Extraction",
    "MissingDivisorClass",
    "NonDiskTable",
    "Verdict",
    "class_key",
    "closed_g_function",
    "closed_gv",
    "closed_lmov_roundtrip",
    "disk_genus_zero",
    "disk_specialize",
    "disk_winding",
    "divisor_classes",
    "extract_bps",
    "g_function",
    "h_series",
    "lmov_roundtrip",
    "moebius",
]
