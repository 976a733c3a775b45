"""Brute-force ground truth over GL(n, p) for tiny n and prime p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Optional, Sequence

from derangement import kernels
from derangement.characters import DerangementValues

GROUP_GUARD = 20_000
COUNT_GUARD = 1 << 16
GRAM_GUARD = 500


class SizeGuard(ValueError):
    """A brute-force enumeration would exceed its configured bound."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class FFMatrix:
    """An invertible n x n matrix over F_p, stored flat in row-major order."""

    n: int
    p: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(self.entries) != self.n * self.n:
            raise ValueError("entry count does not match n")
        object.__setattr__(self, "entries", tuple(x % self.p for x in self.entries))
        if kernels.rank_mod_p(self.rows(), self.p) != self.n:
            raise ValueError("matrix is singular mod p")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "FFMatrix":
        return cls(len(rows), p, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, p: int) -> "FFMatrix":
        return cls(n, p, tuple(int(i == j) for i in range(n) for j in range(n)))

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        n, p = self.n, self.p
        a, b = self.entries, other.entries
        out = tuple(
            sum(a[i * n + t] * b[t * n + j] for t in range(n)) % p
            for i in range(n) for j in range(n)
        )
        return FFMatrix(n, p, out)

    def inverse(self) -> "FFMatrix":
        n, p = self.n, self.p
        m = [r + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows())]
        for c in range(n):
            piv = next(r for r in range(c, n) if m[r][c])
            m[c], m[piv] = m[piv], m[c]
            inv = pow(m[c][c], -1, p)
            m[c] = [x * inv % p for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
        return FFMatrix(n, p, tuple(x for r in m for x in r[n:]))

    def direct_sum_one(self) -> "FFMatrix":
        """g (+) 1 in GL(n+1, p)."""
        n = self.n
        rows = [r + [0] for r in self.rows()] + [[0] * n + [1]]
        return FFMatrix.from_rows(rows, self.p)


def gl_order(n: int, p: int) -> int:
    return prod(p ** n - p ** i for i in range(n))


def enumerate_gl(n: int, p: int, guard: int = GROUP_GUARD) -> list[FFMatrix]:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    size = gl_order(n, p)
    if size > guard:
        raise SizeGuard(f"|GL({n},{p})| = {size} exceeds guard {guard}")
    out = []
    for entries in product(range(p), repeat=n * n):
        rows = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if kernels.rank_mod_p(rows, p) == n:
            out.append(FFMatrix(n, p, entries))
    return out


def r_of(g: FFMatrix) -> int:
    """dim ker(g - 1) over F_p."""
    return g.n - kernels.rank_of_difference(g.entries, FFMatrix.identity(g.n, g.p).entries, g.n, g.p)


def count_fixed(g: FFMatrix, k: int, rank_exact: bool, guard: int = COUNT_GUARD) -> int:
    """Number of n x k matrices x with g x = x (of rank k if ``rank_exact``)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if g.p ** (g.n * k) > guard:
        raise SizeGuard(f"{g.p}^{g.n * k} candidate matrices exceed guard {guard}")
    return kernels.count_fixed(g.entries, g.n, k, g.p, rank_exact)


def sigma_count(r: int, k: int, p: int) -> int:
    return p ** (k * r)


def psi_count(r: int, k: int, p: int) -> int:
    return prod(p ** r - p ** i for i in range(k))


# ----------------------------------------------------------------------
# positive semidefiniteness
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PSDCertificate:
    """Either nonnegative pivots of a full decomposition, or a principal minor
    (indices into the group list) whose determinant is negative."""

    psd: bool
    pivots: tuple[Fraction, ...] = ()
    minor: tuple[int, ...] = ()
    minor_det: Optional[Fraction] = None


def gram_matrix(f: Sequence[Fraction], group: Sequence[FFMatrix]) -> list[list[Fraction]]:
    """M[g][h] = f(r(g h^-1)); note r(g h^-1) = n - rank(g - h)."""
    n = group[0].n
    p = group[0].p
    size = len(group)
    m = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        gi = group[i].entries
        for j in range(i, size):
            r = n - kernels.rank_of_difference(gi, group[j].entries, n, p)
            m[i][j] = m[j][i] = Fraction(f[r])
    return m


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(map(Fraction, r)) for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def certify_psd_matrix(m: Sequence[Sequence[Fraction]]) -> PSDCertificate:
    """Exact symmetric elimination with largest-diagonal pivoting.

    Runs fraction-free on the integer matrix obtained by clearing a positive
    common denominator: after choosing pivots P, the working entry (i, j)
    equals det M[P + i, P + j], so diagonal entries are principal minors.
    """
    fm = [[Fraction(x) for x in r] for r in m]
    den = 1
    for r in fm:
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
    a = [[int(x * den) for x in r] for r in fm]
    size = len(a)
    active = list(range(size))
    pivots: list[Fraction] = []
    chosen: list[int] = []
    prev = 1
    while active:
        best = max(active, key=lambda i: a[i][i])
        d = a[best][best]
        if d <= 0:
            bad: Optional[tuple[int, ...]] = None
            neg = next((i for i in active if a[i][i] < 0), None)
            if neg is not None:
                bad = (neg,)
            else:
                bad = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if bad is None:
                # remaining Schur complement is zero
                pivots.extend(Fraction(0) for _ in active)
                return PSDCertificate(True, tuple(pivots))
            minor = tuple(sorted(chosen + list(bad)))
            return PSDCertificate(False, tuple(pivots), minor,
                                  determinant([[fm[x][y] for y in minor] for x in minor]))
        pivots.append(Fraction(d, prev * den))
        chosen.append(best)
        active.remove(best)
        row = a[best]
        for i in active:
            ai = a[i]
            f = ai[best]
            if f:
                for j in active:
                    ai[j] = (d * ai[j] - f * row[j]) // prev
            else:
                for j in active:
                    ai[j] = d * ai[j] // prev
        prev = d
    return PSDCertificate(True, tuple(pivots))


def certify_psd(values: DerangementValues | Sequence, group: Sequence[FFMatrix],
                guard: int = GRAM_GUARD) -> PSDCertificate:
    """Decide whether g -> f(r(g)) is positive semidefinite on ``group``.

    ``values`` may be symbolic (specialised at q = p) or already numeric.
    """
    if not group:
        raise ValueError("empty group")
    if len(group) > guard:
        raise SizeGuard(f"group of order {len(group)} exceeds guard {guard}")
    p = group[0].p
    if isinstance(values, DerangementValues):
        f = values.at(p)
    else:
        f = tuple(Fraction(x) for x in values)
    if len(f) != group[0].n + 1:
        raise ValueError("values must be indexed by r = 0..n")
    return certify_psd_matrix(gram_matrix(f, group))
