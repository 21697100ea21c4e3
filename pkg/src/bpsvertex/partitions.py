"""Integer partitions and tuples of partitions.

A partition is stored as its weakly decreasing tuple of positive parts; all
statistics (length, size, multiplicities, z-factor, content sum kappa) are
computed on demand.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    >>> Partition([1, 3])
    Partition([3, 1])
    >>> str(Partition())
    '[]'
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple[int, ...]) -> "Partition":
        return super().__new__(cls, parts)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Inverse of ``str``: accepts ``"[3,1]"``, ``"[]"``, ``"3,1"`` or ``"3 1"``."""
        body = text.strip().strip("[]()").replace(",", " ").split()
        return cls(int(tok) for tok in body)


EMPTY = Partition()


def conjugate(lam: Sequence[int]) -> Partition:
    """Transpose of the Young diagram."""
    if not lam:
        return EMPTY
    return Partition._trusted(tuple(sum(1 for p in lam if p > i) for i in range(lam[0])))


def kappa(lam: Sequence[int]) -> int:
    """sum_j lam_j (lam_j - 2j + 1) with j starting at 1; always even."""
    return sum(p * (p - 2 * j - 1) for j, p in enumerate(lam))


def z_factor(lam: Sequence[int]) -> int:
    """|Aut(lam)| * prod(parts) = prod_a m_a! a^{m_a}."""
    return prod(factorial(m) * a**m for a, m in Counter(lam).items())


def scale(lam: Sequence[int], k: int) -> Partition:
    _check_k(k)
    return Partition._trusted(tuple(k * p for p in lam))


def divide(lam: Sequence[int], k: int) -> Partition | None:
    """lam / k when k divides every part, else None."""
    _check_k(k)
    if any(p % k for p in lam):
        return None
    return Partition._trusted(tuple(p // k for p in lam))


def repeat(lam: Sequence[int], k: int) -> Partition:
    """Multiply every multiplicity by k."""
    _check_k(k)
    return Partition._trusted(tuple(p for p in lam for _ in range(k)))


def unrepeat(lam: Sequence[int], k: int) -> Partition | None:
    """Inverse of :func:`repeat`; None unless k divides every multiplicity."""
    _check_k(k)
    counts = Counter(lam)
    if any(m % k for m in counts.values()):
        return None
    return Partition(a for a, m in counts.items() for _ in range(m // k))


def union(lam: Sequence[int], mu: Sequence[int]) -> Partition:
    return Partition(tuple(lam) + tuple(mu))


def contains(big: Sequence[int], small: Sequence[int]) -> bool:
    """Multiset containment of parts: m_a(small) <= m_a(big) for all a."""
    cb = Counter(big)
    return all(cb[a] >= m for a, m in Counter(small).items())


def diagram_contains(big: Sequence[int], small: Sequence[int]) -> bool:
    """Young-diagram containment small ⊆ big (needed for skew shapes)."""
    if len(small) > len(big):
        return False
    return all(s <= b for s, b in zip(small, big))


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(d: int) -> list[Partition]:
    """All partitions of d in reverse-lexicographic order, e.g. 3 -> (3),(2,1),(1,1,1)."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return [Partition._trusted(p) for p in _partitions(d, d)]


def partitions_up_to(n: int) -> list[Partition]:
    """All partitions of size 0..n, by size then reverse-lex."""
    return [p for d in range(n + 1) for p in enumerate_partitions(d)]


class PartitionTuple(tuple):
    """Fixed-length sequence of partitions (one per brane)."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[Iterable[int]] = ()):
        return super().__new__(
            cls, tuple(e if isinstance(e, Partition) else Partition(e) for e in entries)
        )

    @property
    def length(self) -> int:
        """Total number of parts, summed over entries."""
        return sum(len(p) for p in self)

    @property
    def size(self) -> int:
        return sum(p.size for p in self)

    def z(self) -> int:
        return prod(z_factor(p) for p in self)

    def is_empty(self) -> bool:
        return all(not p for p in self)

    def scale(self, k: int) -> "PartitionTuple":
        return PartitionTuple(scale(p, k) for p in self)

    def divide(self, k: int) -> "PartitionTuple | None":
        parts = [divide(p, k) for p in self]
        return None if any(p is None for p in parts) else PartitionTuple(parts)

    def repeat(self, k: int) -> "PartitionTuple":
        return PartitionTuple(repeat(p, k) for p in self)

    def unrepeat(self, k: int) -> "PartitionTuple | None":
        parts = [unrepeat(p, k) for p in self]
        return None if any(p is None for p in parts) else PartitionTuple(parts)

    def union(self, other: Sequence[Sequence[int]]) -> "PartitionTuple":
        _same_length(self, other)
        return PartitionTuple(union(a, b) for a, b in zip(self, other))

    def contains(self, other: Sequence[Sequence[int]]) -> bool:
        """True iff other ⊆ self componentwise (multiset containment)."""
        _same_length(self, other)
        return all(contains(a, b) for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"PartitionTuple({[list(p) for p in self]})"

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self) + ")"


def _same_length(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ValueError(f"partition tuples of different lengths: {len(a)} vs {len(b)}")
