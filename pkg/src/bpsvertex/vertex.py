"""Three-point vertex, gluing into disconnected amplitudes, and the graded logarithm."""

from __future__ import annotations

import threading
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .graph import (
    OPEN,
    EffClass,
    FTCYGraph,
    InvalidClass,
    check_class,
    classes_up_to,
    fiber_enumerate,
)
from .partitions import (
    EMPTY,
    Partition,
    PartitionTuple,
    conjugate,
    diagram_contains,
    enumerate_partitions,
    kappa,
    partitions_up_to,
    z_factor,
)
from .qalgebra import ONE_R, ZERO_R, GaussRational, RatFuncQ, i_power
from .symfunc import mn_character, schur_rho, skew_schur_spec

# --------------------------------------------------------------------------
# Three-point function


def _w_direct(l1: Partition, l2: Partition, l3: Partition) -> RatFuncQ:
    l2t, l3t = conjugate(l2), conjugate(l3)
    total = ZERO_R
    for eta in partitions_up_to(min(l1.size, l3t.size)):
        if not (diagram_contains(l1, eta) and diagram_contains(l3t, eta)):
            continue
        a = skew_schur_spec(l1, eta, l2t)
        if a.is_zero():
            continue
        total = total + a * skew_schur_spec(l3t, eta, l2)
    return (schur_rho(l2) * total).shift(kappa(l3))


class AmplitudeCache:
    """Memo for the three-point function keyed by the least cyclic rotation."""

    def __init__(self):
        self._store: dict[tuple[Partition, Partition, Partition], RatFuncQ] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(l1, l2, l3):
        rots = [(l1, l2, l3), (l2, l3, l1), (l3, l1, l2)]
        return min(rots, key=lambda r: tuple(tuple(p) for p in r))

    def get(self, l1, l2, l3) -> RatFuncQ:
        k = self.key(l1, l2, l3)
        value = self._store.get(k)
        if value is not None:
            self.hits += 1
            return value
        value = _w_direct(*k)
        with self._lock:
            self.misses += 1
            self._store.setdefault(k, value)
        return value

    def clear(self):
        with self._lock:
            self._store.clear()

    def __len__(self):
        return len(self._store)


W_CACHE = AmplitudeCache()


def three_point_W(l1: Sequence[int], l2: Sequence[int], l3: Sequence[int],
                  cache: AmplitudeCache | None = W_CACHE) -> RatFuncQ:
    """The vertex W(l1, l2, l3) as a rational function of x = q^(1/2).

    With ``cache=None`` the value is evaluated directly for exactly the given
    ordering (used to test cyclic symmetry honestly).
    """
    l1, l2, l3 = Partition(l1), Partition(l2), Partition(l3)
    if cache is None:
        return _w_direct(l1, l2, l3)
    return cache.get(l1, l2, l3)


# --------------------------------------------------------------------------
# Gluing


def brane_factor(lam: Partition, mu: Partition) -> RatFuncQ:
    """chi_{lam^t}(mu) / z_mu * i^{l(mu)} * (-1)^{|mu|}, lam living on the brane edge."""
    chi = mn_character(conjugate(lam), mu)
    if chi == 0:
        return ZERO_R
    c = GaussRational(Fraction(chi * (-1) ** mu.size, z_factor(mu))) * i_power(len(mu))
    return RatFuncQ.constant(c)


def z_amplitude(g: FTCYGraph, c: EffClass, cache: AmplitudeCache | None = W_CACHE) -> RatFuncQ:
    """Disconnected amplitude Z_{d, mu}: sum over partition labels of compact edges."""
    check_class(g, c)
    edges = g.compact_edges
    degree = dict(zip(edges, c.degrees))
    emap = g.edge_map
    brane_mu = dict(zip(g.brane_edges, c.windings))
    choices = [enumerate_partitions(degree[e]) for e in edges]
    total = ZERO_R
    for labels in product(*choices):
        lam = dict(zip(edges, labels))
        term = ONE_R
        # brane factors first: they vanish often and are cheap
        for e, mu in brane_mu.items():
            term = term * brane_factor(lam[e], mu)
            if term.is_zero():
                break
        if term.is_zero():
            continue
        sign = 0
        shift = 0
        for e in edges:
            n = emap[e].n
            sign += (n + 1) * degree[e]
            shift += kappa(lam[e]) * n
        for v in g.vertices:
            triple = []
            for s in v.slots:
                edge = emap[s]
                if edge.head == OPEN:
                    triple.append(EMPTY)
                elif edge.tail == v.id:
                    triple.append(lam[s])
                else:
                    triple.append(conjugate(lam[s]))
            term = term * three_point_W(*triple, cache=cache)
        term = term.shift(shift)
        total = total + (-term if sign % 2 else term)
    return total


# --------------------------------------------------------------------------
# Graded logarithm and exponential


def decompositions(classes: Sequence[EffClass]) -> dict[EffClass, list[tuple[EffClass, EffClass]]]:
    """For each class c, the ordered pairs (a, b) of nonzero classes with a + b = c."""
    index = set(classes)
    out: dict[EffClass, list] = {c: [] for c in classes}
    for a in classes:
        for b in classes:
            s = a + b
            if s in index:
                out[s].append((a, b))
    return out


def log_series(Z: Mapping[EffClass, RatFuncQ]) -> dict[EffClass, RatFuncQ]:
    """F = log(1 + A) = sum (-1)^(k+1) A^k / k on a downward-closed class set."""
    classes = sorted(Z, key=lambda c: (c.total, c))
    pairs = decompositions(classes)
    power = {c: Z[c] for c in classes}
    F = dict(power)
    k = 1
    max_total = max((c.total for c in classes), default=0)
    while k < max_total:
        k += 1
        nxt = {}
        for c in classes:
            if c.total < k:
                continue
            acc = ZERO_R
            for a, b in pairs[c]:
                pa, zb = power.get(a), Z[b]
                if pa is None or pa.is_zero() or zb.is_zero():
                    continue
                acc = acc + pa * zb
            if not acc.is_zero():
                nxt[c] = acc
        power = nxt
        coef = Fraction((-1) ** (k + 1), k)
        for c, v in power.items():
            F[c] = F[c] + v.scale(coef)
    return F


def exp_series(F: Mapping[EffClass, RatFuncQ]) -> dict[EffClass, RatFuncQ]:
    """Inverse of log_series via |c| Z_c = sum_{a+b=c} |a| F_a Z_b (Z_0 = 1)."""
    classes = sorted(F, key=lambda c: (c.total, c))
    pairs = decompositions(classes)
    Z: dict[EffClass, RatFuncQ] = {}
    for c in classes:
        acc = F[c].scale(c.total)
        for a, b in pairs[c]:
            acc = acc + (F[a] * Z[b]).scale(a.total)
        Z[c] = acc.scale(Fraction(1, c.total))
    return Z


def _z_worker(args):
    g, c, use_cache = args
    return z_amplitude(g, c, cache=W_CACHE if use_cache else AmplitudeCache())


def amplitudes(g: FTCYGraph, max_degree: int, workers: int = 1,
               use_cache: bool = True) -> dict[EffClass, RatFuncQ]:
    classes = classes_up_to(g, max_degree)
    if workers > 1 and len(classes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_z_worker, [(g, c, use_cache) for c in classes]))
    else:
        cache = W_CACHE if use_cache else AmplitudeCache()
        values = [z_amplitude(g, c, cache=cache) for c in classes]
    return dict(zip(classes, values))


def connected_F(g: FTCYGraph, max_degree: int, workers: int = 1,
                use_cache: bool = True) -> dict[EffClass, RatFuncQ]:
    """Connected invariants of the relative geometry for all classes of total degree <= max_degree."""
    return log_series(amplitudes(g, max_degree, workers, use_cache))


# --------------------------------------------------------------------------
# Open Gromov-Witten invariants


def fiber_max_degree(g: FTCYGraph, beta: Sequence[int]) -> int:
    return max((sum(d) for d in fiber_enumerate(g, beta)), default=0)


def open_gw(g: FTCYGraph, beta: Sequence[int], windings: Sequence[Sequence[int]],
            F: Mapping[EffClass, RatFuncQ] | None = None) -> RatFuncQ:
    """Open invariant generating function for class beta = (H_2 part, disk degrees)."""
    windings = PartitionTuple(windings)
    fiber = fiber_enumerate(g, beta)
    if len(windings) != g.num_branes:
        raise InvalidClass(f"{len(windings)} windings for {g.num_branes} branes")
    for d in fiber:
        check_class(g, EffClass(d, windings))
    if F is None:
        F = connected_F(g, max((sum(d) for d in fiber), default=1))
    total = ZERO_R
    for d in fiber:
        key = EffClass(d, windings)
        if key not in F:
            raise InvalidClass(f"class {key} lies outside the computed cutoff")
        total = total + F[key]
    sign = (-1) ** (windings.size - windings.length)
    return total if sign > 0 else -total


def effective_classes(g: FTCYGraph, max_degree: int) -> list[tuple[tuple[int, ...], PartitionTuple]]:
    """Distinct (beta, windings) whose whole fiber has total degree <= max_degree."""
    seen = set()
    out = []
    for c in classes_up_to(g, max_degree):
        beta = g.project(c.degrees)
        key = (beta, c.windings)
        if key in seen:
            continue
        seen.add(key)
        if fiber_max_degree(g, beta) <= max_degree:
            out.append(key)
    return out
