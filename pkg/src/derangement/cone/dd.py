"""Double description (Motzkin) for pointed cones {x : A x >= 0} over the integers."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence


class NotPointed(ValueError):
    """The constraint matrix does not have full column rank."""


def _normalize(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _independent_rows(a: Sequence[Sequence[int]], order: Sequence[int], d: int) -> list[int]:
    """Greedy choice of d linearly independent rows following ``order``."""
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen: list[int] = []
    for i in order:
        v = [Fraction(x) for x in a[i]]
        for b, p in zip(basis, pivots):
            if v[p]:
                f = v[p] / b[p]
                v = [x - f * y for x, y in zip(v, b)]
        p = next((c for c, x in enumerate(v) if x), None)
        if p is None:
            continue
        basis.append(v)
        pivots.append(p)
        chosen.append(i)
        if len(chosen) == d:
            break
    return chosen


def _inverse_columns(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Integer-scaled columns of the inverse of a nonsingular square matrix."""
    d = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(d)] for i, r in enumerate(rows)]
    for c in range(d):
        p = next(r for r in range(c, d) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(d):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    cols = []
    for j in range(d):
        col = [m[i][d + j] for i in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        cols.append(_normalize([int(x * den) for x in col]))
    return cols


def extreme_rays(
    a: Sequence[Sequence[int]],
    order: Optional[Sequence[int]] = None,
    tick: Optional[Callable[[], None]] = None,
) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : a x >= 0}, primitive integer vectors.

    ``order`` is the sequence in which constraints are processed; ``tick``
    is called once per processed constraint (budget hook).
    """
    m = len(a)
    if m == 0:
        raise NotPointed("no constraints")
    d = len(a[0])
    if order is None:
        order = list(range(m))
    init = _independent_rows(a, order, d)
    if len(init) < d:
        raise NotPointed(f"constraint rank {len(init)} < dimension {d}")
    init_rows = [a[i] for i in init]
    rays = _inverse_columns(init_rows)
    # zero sets as bitmasks over processed constraint positions
    processed: list[int] = list(init)
    zeros = []
    for r in rays:
        mask = 0
        for pos, i in enumerate(processed):
            if _dot(a[i], r) == 0:
                mask |= 1 << pos
        zeros.append(mask)

    for i in order:
        if i in init:
            continue
        if tick is not None:
            tick()
        row = a[i]
        vals = [_dot(row, r) for r in rays]
        pos_idx = [t for t, v in enumerate(vals) if v > 0]
        neg_idx = [t for t, v in enumerate(vals) if v < 0]
        zero_idx = [t for t, v in enumerate(vals) if v == 0]
        bit = 1 << len(processed)
        new_rays: list[tuple[int, ...]] = []
        new_zeros: list[int] = []
        for t in pos_idx:
            new_rays.append(rays[t])
            new_zeros.append(zeros[t])
        for t in zero_idx:
            new_rays.append(rays[t])
            new_zeros.append(zeros[t] | bit)
        if neg_idx:
            for p in pos_idx:
                for q_ in neg_idx:
                    common = zeros[p] & zeros[q_]
                    if bin(common).count("1") < d - 2:
                        continue
                    adjacent = True
                    for t in range(len(rays)):
                        if t != p and t != q_ and (zeros[t] & common) == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    vp, vn = vals[p], vals[q_]
                    comb = [vp * y - vn * x for x, y in zip(rays[p], rays[q_])]
                    new_rays.append(_normalize(comb))
                    new_zeros.append(common | bit)
        processed.append(i)
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays))


def zero_set(a: Sequence[Sequence[int]], ray: Sequence[int]) -> list[int]:
    return [i for i, row in enumerate(a) if _dot(row, ray) == 0]
