"""Principal specializations of (skew) Schur functions and symmetric group characters."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from flint import fmpq_poly

from .partitions import EMPTY, Partition, conjugate, diagram_contains
from .qalgebra import ONE_R, ZERO_R, HalfLaurent, RatFuncQ


class SizeMismatch(ValueError):
    """Character requested for partitions of different sizes."""


@dataclass(frozen=True)
class SpecKey:
    """s_{shape/inner} evaluated at q^{shift + rho}."""

    shape: Partition
    inner: Partition = EMPTY
    shift: Partition = EMPTY


@dataclass(frozen=True)
class CharKey:
    irrep: Partition
    cls: Partition


# --------------------------------------------------------------------------
# e_k at q^{shift + rho}


@lru_cache(maxsize=None)
def _e_rho(k: int) -> RatFuncQ:
    # x^{-k^2} / prod_{j<=k} (1 - x^{-2j})
    den = HalfLaurent.constant(1)
    for j in range(1, k + 1):
        den = den * HalfLaurent({0: 1, -2 * j: -1})
    return RatFuncQ(HalfLaurent.monomial(-k * k), den)


@lru_cache(maxsize=None)
def _correction(shift: tuple[int, ...], k: int) -> tuple[HalfLaurent, ...]:
    """First k+1 z-coefficients of prod_i (1 + z a_i) / (1 + z b_i)."""
    series = [HalfLaurent.constant(1)] + [HalfLaurent()] * k
    for i, s in enumerate(shift, start=1):
        a = HalfLaurent.monomial(2 * s - 2 * i + 1)
        b = HalfLaurent.monomial(-2 * i + 1)
        # multiply by (1 + z a)
        series = [series[0]] + [series[n] + series[n - 1] * a for n in range(1, k + 1)]
        # divide by (1 + z b): c_n <- c_n - b c_{n-1}, sequentially
        out = [series[0]]
        for n in range(1, k + 1):
            out.append(series[n] - out[n - 1] * b)
        series = out
    return tuple(series)


@lru_cache(maxsize=None)
def _elementary(k: int, shift: tuple[int, ...]) -> RatFuncQ:
    if k < 0:
        return ZERO_R
    if k == 0:
        return ONE_R
    if not shift:
        return _e_rho(k)
    corr = _correction(shift, k)
    out = ZERO_R
    for j in range(k + 1):
        if not corr[j].is_zero():
            out = out + RatFuncQ(corr[j]) * _e_rho(k - j)
    return out


def elementary_spec(k: int, shift: Sequence[int] = EMPTY) -> RatFuncQ:
    """e_k on the alphabet q^{shift_i - i + 1/2}, i = 1, 2, ..."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _elementary(k, tuple(Partition(shift)))


# --------------------------------------------------------------------------
# Determinants


def _real_parts(r: RatFuncQ):
    if not r.is_real():
        raise ValueError("determinant helper expects real entries")
    return r.nval, r.nre, r.dre


def det(matrix: Sequence[Sequence[RatFuncQ]]) -> RatFuncQ:
    """Determinant of a small matrix of real rational functions.

    Each row is cleared to polynomials with its own lcm denominator, then the
    polynomial determinant is taken by Bareiss fraction-free elimination.
    """
    n = len(matrix)
    if n == 0:
        return ONE_R
    if n == 1:
        return matrix[0][0]
    rows = []
    shift = 0
    denom = fmpq_poly([1])
    for row in matrix:
        parts = [_real_parts(r) for r in row]
        nonzero = [p for p in parts if not p[1].is_zero()]
        if not nonzero:
            return ZERO_R
        lcm = fmpq_poly([1])
        for _, _, d in nonzero:
            if d.degree() > 0:
                lcm = lcm.lcm(d) if hasattr(lcm, "lcm") else lcm * d // lcm.gcd(d)
        low = min(v for v, _, _ in nonzero)
        rows.append([
            fmpq_poly([]) if num.is_zero() else num.left_shift(v - low) * (lcm // d)
            for v, num, d in parts
        ])
        shift += low
        denom = denom * lcm
    sign = 1
    prev = fmpq_poly([1])
    for k in range(n - 1):
        if rows[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not rows[r][k].is_zero()), None)
            if swap is None:
                return ZERO_R
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = fmpq_poly([])
        prev = pivot
    result = rows[n - 1][n - 1]
    if sign < 0:
        result = -result
    return RatFuncQ._make(shift, result, fmpq_poly([]), denom, fmpq_poly([]))


# --------------------------------------------------------------------------
# Skew Schur functions


@lru_cache(maxsize=None)
def _skew(shape: Partition, inner: Partition, shift: Partition) -> RatFuncQ:
    if not diagram_contains(shape, inner):
        return ZERO_R
    if shape == inner:
        return ONE_R
    mt, nt = conjugate(shape), conjugate(inner)
    n = len(mt)
    nt = tuple(nt) + (0,) * (n - len(nt))
    matrix = [
        [_elementary(mt[i] - nt[j] - i + j, tuple(shift)) for j in range(n)]
        for i in range(n)
    ]
    return det(matrix)


def skew_schur_spec(key: SpecKey | Partition, inner: Sequence[int] = EMPTY,
                    shift: Sequence[int] = EMPTY) -> RatFuncQ:
    """s_{shape/inner}(q^{shift+rho}) by the dual Jacobi-Trudi determinant.

    Accepts either a SpecKey or the three partitions positionally.
    """
    if isinstance(key, SpecKey):
        return _skew(Partition(key.shape), Partition(key.inner), Partition(key.shift))
    return _skew(Partition(key), Partition(inner), Partition(shift))


def schur_rho(lam: Sequence[int]) -> RatFuncQ:
    return _skew(Partition(lam), EMPTY, EMPTY)


# --------------------------------------------------------------------------
# Characters


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    n = len(lam)
    beads = [lam[i] + n - 1 - i for i in range(n)]
    occupied = set(beads)
    total = 0
    for b in beads:
        nb = b - r
        if nb < 0 or nb in occupied:
            continue
        # removing a border strip = sliding a bead down r places;
        # the height is the number of beads jumped over
        height = sum(1 for c in beads if nb < c < b)
        moved = sorted((occupied - {b}) | {nb}, reverse=True)
        new = tuple(p for p in (moved[i] - (n - 1 - i) for i in range(n)) if p > 0)
        total += (-1) ** height * _mn(new, rest)
    return total


def mn_character(key: CharKey | Partition, cls: Sequence[int] | None = None) -> int:
    """chi_irrep(cls) by the Murnaghan-Nakayama rule, largest part of cls first."""
    if isinstance(key, CharKey):
        lam, mu = Partition(key.irrep), Partition(key.cls)
    else:
        lam, mu = Partition(key), Partition(cls or ())
    if lam.size != mu.size:
        raise SizeMismatch(f"|{lam}| = {lam.size} but |{mu}| = {mu.size}")
    return _mn(tuple(lam), tuple(mu))
