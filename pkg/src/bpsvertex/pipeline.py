"""End-to-end runs: vertex amplitudes -> open/closed invariants -> BPS tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .bps import (
    BPSTable,
    closed_gv,
    extract_bps,
    g_function,
    h_series,
)
from .graph import FTCYGraph
from .partitions import PartitionTuple
from .qalgebra import ZERO_R, RatFuncQ
from .vertex import connected_F, effective_classes, fiber_max_degree, open_gw


@dataclass
class OpenRun:
    graph: FTCYGraph
    max_degree: int
    F: dict = field(default_factory=dict)  # (beta, windings) -> open GW generating function
    G: dict = field(default_factory=dict)
    table: BPSTable | None = None


def open_invariants(g: FTCYGraph, max_degree: int, workers: int = 1,
                    use_cache: bool = True) -> dict:
    """Open GW functions F^{X,L}_{beta,mu} for every class with nonempty winding in range."""
    Fconn = connected_F(g, max_degree, workers, use_cache)
    out = {}
    for beta, mu in effective_classes(g, max_degree):
        if mu.is_empty():
            continue
        out[(beta, mu)] = open_gw(g, beta, mu, Fconn)
    return out


def open_bps(g: FTCYGraph, max_degree: int, workers: int = 1, use_cache: bool = True) -> OpenRun:
    run = OpenRun(g, max_degree)
    run.F = open_invariants(g, max_degree, workers, use_cache)
    table = BPSTable(g.name or "geometry")
    for key in sorted(run.F, key=_order):
        beta, mu = key
        G = g_function(h_series(run.F, beta, mu), mu)
        run.G[key] = G
        table.add(key, extract_bps(G))
    run.table = table
    return run


def closed_invariants(g: FTCYGraph, max_degree: int, workers: int = 1,
                      use_cache: bool = True) -> dict[tuple, RatFuncQ]:
    """Closed GW functions F_beta (brane degrees zero) keyed by the H_2 class."""
    Fconn = connected_F(g, max_degree, workers, use_cache)
    out: dict[tuple, RatFuncQ] = {}
    for c, v in Fconn.items():
        if not c.windings.is_empty():
            continue
        beta = g.project(c.degrees)[: g.rank]
        out[beta] = out.get(beta, ZERO_R) + v
    # drop classes whose fiber reaches past the cutoff: their sums are incomplete
    pad = (0,) * g.num_branes
    return {b: v for b, v in out.items() if fiber_max_degree(g, b + pad) <= max_degree}


def closed_bps(g: FTCYGraph, max_degree: int, workers: int = 1,
               use_cache: bool = True) -> tuple[BPSTable, dict]:
    Fc = closed_invariants(g, max_degree, workers, use_cache)
    table = BPSTable(g.name or "geometry", closed=True)
    for beta in sorted(Fc, key=lambda b: (sum(b), b)):
        table.add((beta, PartitionTuple()), closed_gv(Fc, beta))
    return table, Fc


def _order(key):
    beta, mu = key
    return (sum(beta), beta, [list(p) for p in mu])


def sort_classes(keys) -> list:
    return sorted(keys, key=_order)


def restrict(F: Mapping, keys) -> dict:
    return {k: F[k] for k in keys}
