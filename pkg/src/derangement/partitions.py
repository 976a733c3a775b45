"""Young diagrams: enumeration, hooks, n(lambda) and horizontal strips."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A Young diagram as a weakly decreasing tuple of positive parts.

    ``sorted(..., key=Partition.sort_key)`` gives the table row order:
    larger size first, then lexicographically descending.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"parts must be positive: {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def first(self) -> int:
        return self[0] if self else 0

    @property
    def second(self) -> int:
        return self[1] if len(self) > 1 else 0

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def sort_key(self):
        # canonical order: size descending, then lexicographically descending
        return (-self.size, tuple(-p for p in self))

    def is_almost_rectangular(self) -> bool:
        """Shape (m^a, b) with b < m: rectangular except possibly the last row."""
        if len(self) <= 1:
            return True
        return all(p == self[0] for p in self[:-1])

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __str__(self):
        return render_partition(self)


EMPTY = Partition(())


def render_partition(lam: Sequence[int]) -> str:
    """Exponent notation like ``(3,2^2,1)``; the empty diagram is ``()``."""
    if not lam:
        return "()"
    out = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        out.append(str(lam[i]) if j - i == 1 else f"{lam[i]}^{j - i}")
        i = j
    return "(" + ",".join(out) + ")"


def parse_partition(text: str) -> Partition:
    """Parse ``(3,2^2,1)``, ``3,2,2,1`` or ``()``/``0``/``empty``."""
    s = text.strip().strip("()[]")
    if s in ("", "0", "empty"):
        return EMPTY
    parts: list[int] = []
    for tok in s.split(","):
        tok = tok.strip()
        if "^" in tok:
            v, e = tok.split("^")
            parts.extend([int(v)] * int(e))
        else:
            parts.append(int(tok))
    return Partition(parts)


def _partitions_of(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_of(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """Partitions of n, lexicographically descending."""
    return tuple(Partition(p) for p in _partitions_of(n, n))


@lru_cache(maxsize=None)
def all_partitions_up_to(n: int) -> tuple[Partition, ...]:
    """Every partition of size 0..n in canonical table order."""
    out: list[Partition] = []
    for m in range(n, -1, -1):
        out.extend(partitions_of(m))
    return tuple(out)


def hook_lengths(lam: Sequence[int]) -> list[int]:
    """One hook length per box, row by row."""
    lam = tuple(lam)
    if not lam:
        return []
    conj = Partition(lam).conjugate()
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def n_stat(lam: Sequence[int]) -> int:
    """Sum of (i-1) * lambda_i over rows (1-based)."""
    return sum(i * p for i, p in enumerate(lam))


def _strip_ranges(lam: tuple[int, ...]) -> list[tuple[int, int]]:
    # row i of mu may take any length in [lambda_{i+1}, lambda_i]
    nxt = lam[1:] + (0,)
    return [(nxt[i], lam[i]) for i in range(len(lam))]


@lru_cache(maxsize=None)
def hstrip_minus(lam: Partition, m: int) -> tuple[Partition, ...]:
    """Diagrams mu with lam / mu a horizontal strip of m boxes, canonical order."""
    lam = Partition(lam)
    if m < 0 or m > lam.first:
        return ()
    ranges = _strip_ranges(tuple(lam))
    found: list[Partition] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(ranges):
            if left == 0:
                found.append(Partition(p for p in acc if p > 0))
            return
        lo, hi = ranges[i]
        for take in range(0, min(left, hi - lo) + 1):
            acc.append(hi - take)
            rec(i + 1, left - take, acc)
            acc.pop()

    rec(0, m, [])
    return tuple(sorted(set(found), key=Partition.sort_key))


@lru_cache(maxsize=None)
def hstrip_plus(mu: Partition, m: int, cap: int | None = None) -> tuple[Partition, ...]:
    """Diagrams lam with lam / mu a horizontal strip of m boxes, canonical order.

    ``cap`` bounds the size of the result diagrams and must be at least
    ``|mu| + m`` when given.
    """
    mu = Partition(mu)
    if m < 0:
        return ()
    if cap is not None and cap < mu.size + m:
        raise ValueError("cap must be at least |mu| + m")
    # row i of lam lies in [mu_i, mu_{i-1}] (row 0 unbounded), plus one new row
    ext = tuple(mu) + (0,)
    found: list[Partition] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(ext):
            if left == 0:
                found.append(Partition(p for p in acc if p > 0))
            return
        lo = ext[i]
        hi = lo + left if i == 0 else min(ext[i - 1], lo + left)
        for v in range(lo, hi + 1):
            acc.append(v)
            rec(i + 1, left - (v - lo), acc)
            acc.pop()

    rec(0, m, [])
    return tuple(sorted(set(found), key=Partition.sort_key))


def partition_count(n: int) -> int:
    return len(partitions_of(n))
