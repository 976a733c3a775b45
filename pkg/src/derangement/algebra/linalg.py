"""Fraction-free linear algebra over Z[q] and exact rationals."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from derangement.algebra.poly import ONE, ZERO, IntPoly
from derangement.algebra.ratfunc import RAT_ONE, RAT_ZERO, RatFunc

# Evaluation points used to cross-check symbolic ranks.
CHECK_POINTS = (Fraction(7, 2), Fraction(11, 3), Fraction(29, 5))


class RankMismatch(AssertionError):
    """The numeric cross-check exceeded the symbolic rank (an internal bug)."""


def _as_poly_matrix(m: Sequence[Sequence]) -> list[list[IntPoly]]:
    out = []
    for row in m:
        r = []
        for x in row:
            if isinstance(x, int):
                x = IntPoly.const(x)
            elif isinstance(x, RatFunc):
                raise TypeError("clear denominators before calling bareiss routines")
            r.append(x)
        out.append(r)
    return out


def bareiss_rank_symbolic(m: Sequence[Sequence[IntPoly]]) -> int:
    """Rank over Q(q) by fraction-free (Bareiss) elimination with row pivoting."""
    a = [list(r) for r in _as_poly_matrix(m)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = ONE
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        best = None
        for r in range(rank, nrows):
            x = a[r][col]
            if not x.is_zero() and (best is None or len(x.coeffs) < best):
                piv, best = r, len(x.coeffs)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row = a[r]
            prow = a[rank]
            for c in range(col + 1, ncols):
                v = p * row[c] - f * prow[c]
                row[c] = v.exact_div(prev) if prev != ONE else v
            row[col] = ZERO
        prev = p
        rank += 1
    return rank


def rank_fraction(m: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            if f:
                f /= p
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def evaluation_rank(m: Sequence[Sequence[IntPoly]], x: Fraction) -> int:
    return rank_fraction([[p.eval_fraction(x) for p in row] for row in _as_poly_matrix(m)])


def bareiss_rank(m: Sequence[Sequence], points: Sequence[Fraction] = CHECK_POINTS) -> int:
    """Rank of a matrix over Q(q) with entries in Z[q] (or RatFunc).

    Rational-function rows are first scaled by their common denominator.
    The symbolic rank is cross-checked against exact ranks at rational
    sample points; evaluation can only lose rank, never gain it.
    """
    pm = clear_row_denominators(m)
    r = bareiss_rank_symbolic(pm)
    if pm:
        numeric = max(evaluation_rank(pm, x) for x in points)
        if numeric > r:
            raise RankMismatch(f"numeric rank {numeric} exceeds symbolic rank {r}")
    return r


def clear_row_denominators(m: Sequence[Sequence]) -> list[list[IntPoly]]:
    out = []
    for row in m:
        rr = [RatFunc.coerce(x) for x in row]
        den = ONE
        for x in rr:
            if x.den != ONE:
                den = _lcm(den, x.den)
        out.append([x.num * den.exact_div(x.den) if den != ONE else x.num for x in rr])
    return out


def _lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    from derangement.algebra.poly import poly_gcd

    g = poly_gcd(a, b)
    return (a * b).exact_div(g) if g != ONE else a * b


def nullspace_ratfunc(m: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[RatFunc]]:
    """Basis of the right nullspace over Q(q) via reduced row echelon form."""
    rows = [[RatFunc.coerce(x) for x in row] for row in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rank = 0
    pivots: list[int] = []
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [RAT_ZERO] * ncols
        v[fcol] = RAT_ONE
        for i, pcol in enumerate(pivots):
            v[pcol] = -rows[i][fcol]
        basis.append(v)
    return basis


def solve_ratfunc(m: Sequence[Sequence], rhs: Sequence) -> Optional[list[RatFunc]]:
    """Solve a square nonsingular system over Q(q); None if singular."""
    n = len(m)
    rows = [[RatFunc.coerce(x) for x in row] + [RatFunc.coerce(b)] for row, b in zip(m, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def random_poly_matrix(rng: random.Random, nrows: int, ncols: int, max_degree: int,
                       coeff_range: int = 3, rank: Optional[int] = None) -> list[list[IntPoly]]:
    """Random test matrix; with ``rank`` given it is a product of random
    nrows x rank and rank x ncols factors, so its rank is at most ``rank``."""
    def rp(deg):
        return IntPoly([rng.randint(-coeff_range, coeff_range) for _ in range(deg + 1)])

    if rank is None:
        return [[rp(rng.randint(0, max_degree)) for _ in range(ncols)] for _ in range(nrows)]
    left = [[rp(rng.randint(0, max_degree // 2)) for _ in range(rank)] for _ in range(nrows)]
    right = [[rp(rng.randint(0, max_degree // 2)) for _ in range(ncols)] for _ in range(rank)]
    out = []
    for i in range(nrows):
        row = []
        for j in range(ncols):
            acc = ZERO
            for t in range(rank):
                acc = acc + left[i][t] * right[t][j]
            row.append(acc)
        out.append(row)
    return out
