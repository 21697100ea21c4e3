"""Independent reference computations used only by the tests."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from bpsvertex.partitions import Partition, conjugate, enumerate_partitions, z_factor
from bpsvertex.qalgebra import RatFuncQ, bracket

LETTERS = 40
CUTOFF = 80


# --------------------------------------------------------------------------
# truncated alphabet q^{shift_i - i + 1/2}, i = 1..40, as Laurent series in x


def letter_exponents(shift, n=LETTERS):
    shift = list(shift) + [0] * (n - len(shift))
    return [2 * shift[i - 1] - 2 * i + 1 for i in range(1, n + 1)]


def _mul(a: dict, b: dict) -> dict:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def truncated_elementary(k: int, shift) -> dict[int, int]:
    """e_k of the first 40 letters, as an exact finite Laurent polynomial."""
    # coefficient list of prod (1 + z a_i) up to z^k
    poly = [{0: 1}] + [{} for _ in range(k)]
    for e in letter_exponents(shift):
        for j in range(k, 0, -1):
            add = {x + e: c for x, c in poly[j - 1].items()}
            merged = dict(poly[j])
            for x, c in add.items():
                merged[x] = merged.get(x, 0) + c
            poly[j] = {x: c for x, c in merged.items() if c}
    return poly[k]


def _horizontal_strips(mu: Partition, inner: Partition):
    """All nu with inner <= nu <= mu and mu/nu a horizontal strip."""
    mu = list(mu)
    ranges = []
    for i, m in enumerate(mu):
        lo = mu[i + 1] if i + 1 < len(mu) else 0
        lo = max(lo, inner[i] if i < len(inner) else 0)
        if lo > m:
            return
        ranges.append(range(lo, m + 1))

    def rec(i, acc):
        if i == len(ranges):
            yield Partition(p for p in acc if p)
            return
        for v in ranges[i]:
            yield from rec(i + 1, acc + [v])

    yield from rec(0, [])


def truncated_skew_schur(mu, inner, shift) -> dict[int, int]:
    """s_{mu/inner} on the first 40 letters by semistandard-tableau branching."""
    exps = letter_exponents(shift)
    mu, inner = Partition(mu), Partition(inner)

    @lru_cache(maxsize=None)
    def s(shape: Partition, n: int) -> tuple:
        if shape == inner:
            return ((0, 1),)
        if n == 0:
            return ()
        out: dict[int, int] = {}
        for nu in _horizontal_strips(shape, inner):
            if any((nu[i] if i < len(nu) else 0) < (inner[i]) for i in range(len(inner))):
                continue
            strip = shape.size - nu.size
            sub = dict(s(nu, n - 1))
            for e, c in sub.items():
                key = e + strip * exps[n - 1]
                out[key] = out.get(key, 0) + c
        return tuple((e, c) for e, c in out.items() if c)

    if len(inner) > len(mu) or any(a > b for a, b in zip(inner, mu)):
        return {}
    return dict(s(mu, LETTERS))


def trusted_window(shift, degree: int) -> int:
    """Exponents strictly above this value are unaffected by truncating the alphabet."""
    top = max(0, max(letter_exponents(shift)))
    return -(2 * LETTERS + 1) + max(degree - 1, 0) * top


def compare_with_series(R: RatFuncQ, series: dict[int, int], shift, degree: int) -> list[int]:
    """Exponents in [-80, 80] where the exact function and the truncated series disagree."""
    lo = max(-CUTOFF, trusted_window(shift, degree) + 1)
    exact = R.expand_at_infinity(lo)
    bad = []
    for e in range(lo, CUTOFF + 1):
        a = exact.get(e)
        a = Fraction(0) if a is None else a
        if a != series.get(e, 0):
            bad.append(e)
    return bad


# --------------------------------------------------------------------------
# characters by brute force: permutation modules + determinantal formula


def permutation_of_type(mu) -> tuple[int, ...]:
    perm = []
    start = 0
    for part in mu:
        block = list(range(start, start + part))
        perm.extend(block[1:] + block[:1])
        start += part
    return tuple(perm)


@lru_cache(maxsize=None)
def _tabloids(comp: tuple[int, ...]) -> list[tuple[frozenset, ...]]:
    n = sum(comp)

    def rec(remaining: frozenset, sizes):
        if not sizes:
            yield ()
            return
        for block in combinations(sorted(remaining), sizes[0]):
            b = frozenset(block)
            for rest in rec(remaining - b, sizes[1:]):
                yield (b,) + rest

    return list(rec(frozenset(range(n)), comp))


def permutation_character(comp, perm) -> int:
    """Number of tabloids of the given row sizes fixed by perm."""
    count = 0
    for tab in _tabloids(tuple(comp)):
        if all(frozenset(perm[x] for x in row) == row for row in tab):
            count += 1
    return count


def brute_character(lam, mu) -> int:
    lam = list(lam)
    n = len(lam)
    perm = permutation_of_type(mu)
    total = 0
    for w in permutations(range(n)):
        comp = [lam[i] - i + w[i] for i in range(n)]
        if any(c < 0 for c in comp):
            continue
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        total += (-1) ** inversions * permutation_character(tuple(c for c in comp if c), perm)
    return total


def brute_character_table(d: int) -> dict:
    parts = enumerate_partitions(d)
    return {(l, m): brute_character(l, m) for l in parts for m in parts}


def cycle_type(perm) -> Partition:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        out.append(n)
    return Partition(out)


# --------------------------------------------------------------------------
# Frobenius expansion of s_lambda(q^rho)


def frobenius_schur_rho(lam, character) -> RatFuncQ:
    out = RatFuncQ(0)
    for mu in enumerate_partitions(Partition(lam).size):
        chi = character(lam, mu)
        if chi:
            den = RatFuncQ(1)
            for part in mu:
                den = den * RatFuncQ(bracket(part))
            out = out + RatFuncQ.constant(Fraction(chi, z_factor(mu))) / den
    return out


def hook_schur_rho(lam) -> RatFuncQ:
    """q^{kappa/4} / prod over boxes of [hook length]."""
    from bpsvertex.partitions import kappa

    lam = Partition(lam)
    lt = conjugate(lam)
    out = RatFuncQ.monomial(kappa(lam) // 2)
    for i, row in enumerate(lam):
        for j in range(row):
            out = out / RatFuncQ(bracket(row - j + lt[j] - i - 1))
    return out


def count_by_type(perms) -> Counter:
    return Counter(cycle_type(p) for p in perms)
