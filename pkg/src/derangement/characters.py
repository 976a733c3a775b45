"""Coefficient engine for derangement characters of GL(n, q).

Three representations of a derangement function at level ``n`` are used:

* :class:`PsiCoeffs` -- coordinates over psi_0..psi_n (or sigma_0..sigma_n),
* :class:`BlockVector` -- coefficients over the blocks ``[lambda]_n``,
* :class:`DerangementValues` -- the value at an element with r(g) = r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from derangement.algebra.poly import (
    ONE,
    ZERO,
    IntPoly,
    InexactDivision,
    signed_q_factorial,
    prod,
    q_binomial,
)
from derangement.algebra.ratfunc import RAT_ONE, RAT_ZERO, RatFunc
from derangement.algebra.sign import Sign, ratfunc_sign
from derangement.partitions import (
    EMPTY,
    Partition,
    all_partitions_up_to,
    hook_lengths,
    hstrip_minus,
    n_stat,
    partitions_of,
)

Scalar = Union[RatFunc, IntPoly, int, Fraction]


# ----------------------------------------------------------------------
# value types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PsiCoeffs:
    """sum_k coeffs[k] * basis_k at level n; ``basis`` is "psi" or "sigma"."""

    n: int
    coeffs: tuple[RatFunc, ...]
    basis: str = "psi"

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(RatFunc.coerce(c) for c in self.coeffs))

    @classmethod
    def unit_vector(cls, n: int, k: int, basis: str = "psi") -> "PsiCoeffs":
        return cls(n, tuple(RAT_ONE if i == k else RAT_ZERO for i in range(n + 1)), basis)

    def __getitem__(self, k: int) -> RatFunc:
        return self.coeffs[k]

    def __add__(self, other: "PsiCoeffs") -> "PsiCoeffs":
        self._check(other)
        return PsiCoeffs(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.basis)

    def __sub__(self, other: "PsiCoeffs") -> "PsiCoeffs":
        self._check(other)
        return PsiCoeffs(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.basis)

    def scale(self, c: Scalar) -> "PsiCoeffs":
        c = RatFunc.coerce(c)
        return PsiCoeffs(self.n, tuple(c * a for a in self.coeffs), self.basis)

    def _check(self, other: "PsiCoeffs"):
        if self.n != other.n or self.basis != other.basis:
            raise ValueError("level or basis mismatch")


class BlockVector:
    """Coefficients f<lambda> over the blocks [lambda]_n, |lambda| <= n.

    Only nonzero coefficients are stored; missing keys read as zero.
    """

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Optional[Mapping[Partition, Scalar]] = None):
        self.n = n
        d: dict[Partition, RatFunc] = {}
        for lam, c in (coeffs or {}).items():
            lam = Partition(lam)
            if lam.size > n:
                raise ValueError(f"{lam} has more than {n} boxes")
            c = RatFunc.coerce(c)
            if not c.is_zero():
                d[lam] = c
        self._coeffs = d

    def __getitem__(self, lam) -> RatFunc:
        return self._coeffs.get(Partition(lam), RAT_ZERO)

    def items(self) -> Iterator[tuple[Partition, RatFunc]]:
        """Nonzero entries in canonical row order."""
        for lam in all_partitions_up_to(self.n):
            c = self._coeffs.get(lam)
            if c is not None:
                yield lam, c

    def rows(self) -> list[tuple[Partition, RatFunc]]:
        """All entries (zeros included) in canonical row order."""
        return [(lam, self[lam]) for lam in all_partitions_up_to(self.n)]

    def support(self) -> frozenset[Partition]:
        return frozenset(self._coeffs)

    def __add__(self, other: "BlockVector") -> "BlockVector":
        self._check(other)
        out = dict(self._coeffs)
        for lam, c in other._coeffs.items():
            out[lam] = out.get(lam, RAT_ZERO) + c
        return BlockVector(self.n, out)

    def __sub__(self, other: "BlockVector") -> "BlockVector":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "BlockVector":
        c = RatFunc.coerce(c)
        if c.is_zero():
            return BlockVector(self.n)
        return BlockVector(self.n, {lam: c * v for lam, v in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, BlockVector):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self._coeffs.items())))

    def __repr__(self):
        body = ", ".join(f"{lam}: {c}" for lam, c in self.items())
        return f"BlockVector(n={self.n}, {{{body}}})"

    def _check(self, other: "BlockVector"):
        if self.n != other.n:
            raise ValueError("level mismatch")

    def is_character(self) -> bool:
        """Every coefficient nonnegative for all q > 1."""
        return first_negative_block(self) is None


def first_negative_block(f: BlockVector) -> Optional[Partition]:
    for lam, c in f.items():
        if not ratfunc_sign(c).nonnegative:
            return lam
    return None


@dataclass(frozen=True)
class DerangementValues:
    """values[r] = f(g) for any g with r(g) = r, r = 0..n."""

    n: int
    values: tuple[RatFunc, ...]

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise ValueError(f"need {self.n + 1} values, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(RatFunc.coerce(v) for v in self.values))

    def __getitem__(self, r: int) -> RatFunc:
        return self.values[r]

    def __add__(self, other: "DerangementValues") -> "DerangementValues":
        if self.n != other.n:
            raise ValueError("level mismatch")
        return DerangementValues(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "DerangementValues") -> "DerangementValues":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "DerangementValues":
        c = RatFunc.coerce(c)
        return DerangementValues(self.n, tuple(c * v for v in self.values))

    def at(self, q: int | Fraction) -> tuple[Fraction, ...]:
        """Specialise the formal q to a number."""
        return tuple(v(q) for v in self.values)

    @property
    def dimension(self) -> RatFunc:
        return self.values[self.n]


# ----------------------------------------------------------------------
# dimensions
# ----------------------------------------------------------------------

def _qint_minus_one(m: int) -> IntPoly:
    return IntPoly.monomial(m) - ONE


@lru_cache(maxsize=None)
def unipotent_dim(lam: Partition) -> IntPoly:
    """Degree of the unipotent character (lambda)_e by the q-hook formula."""
    lam = Partition(lam)
    n = lam.size
    numer = prod(_qint_minus_one(i) for i in range(1, n + 1))
    denom = prod(_qint_minus_one(h) for h in hook_lengths(lam))
    try:
        quot = numer.exact_div(denom)
    except InexactDivision as exc:  # pragma: no cover - would be a bug
        raise InexactDivision(f"q-hook formula not exact for {lam}") from exc
    return quot.shift_degree(n_stat(lam))


@lru_cache(maxsize=None)
def group_order(m: int) -> IntPoly:
    """|GL(m, q)| = prod_{i<m} (q^m - q^i)."""
    return prod(IntPoly.monomial(m) - IntPoly.monomial(i) for i in range(m))


@lru_cache(maxsize=None)
def dim_rho(m: int) -> IntPoly:
    """Dimension of rho_m, solved from |G_m| = sum over blocks of reg_m."""
    if m == 0:
        return ONE
    acc = group_order(m)
    for lam in all_partitions_up_to(m):
        if lam.size == 0:
            continue
        c = q_binomial(m, lam.size) * unipotent_dim(lam)
        acc = acc - c * c * dim_rho(m - lam.size)
    # the empty diagram contributes exactly dim_rho(m)
    return acc


def block_dim(n: int, lam: Partition) -> IntPoly:
    lam = Partition(lam)
    if lam.size > n:
        raise ValueError(f"{lam} has more than {n} boxes")
    return q_binomial(n, lam.size) * unipotent_dim(lam) * dim_rho(n - lam.size)


# ----------------------------------------------------------------------
# block coefficients of psi_k
# ----------------------------------------------------------------------

def coeff_c_direct(n: int, k: int, lam: Partition) -> IntPoly:
    """Multiplicity of [lam]_n in psi_k^(n) straight from the strip sum."""
    lam = Partition(lam)
    if lam.size > n or lam.first < n - k:
        return ZERO
    total = ZERO
    for mu in hstrip_minus(lam, n - k):
        total = total + unipotent_dim(mu)
    return q_binomial(k, n - lam.size) * total


@lru_cache(maxsize=None)
def coeff_c(n: int, k: int, lam: Partition) -> IntPoly:
    """Multiplicity of [lam]_n in psi_k^(n)."""
    lam = Partition(lam)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if lam.size > n or lam.first < n - k:
        return ZERO
    j = n - lam.size
    if j > 0:
        if k < j:
            return ZERO
        return q_binomial(k, j) * coeff_c(n - j, k - j, lam)
    m = n - k
    if lam.second <= m <= lam.first:
        nu = Partition(lam[1:])
        return q_binomial(k, lam.first - m) * unipotent_dim(nu)
    total = ZERO
    for mu in hstrip_minus(lam, m):
        total = total + unipotent_dim(mu)
    return total


def psi_block(n: int, k: int) -> BlockVector:
    return BlockVector(n, {lam: coeff_c(n, k, lam) for lam in all_partitions_up_to(n)})


def to_blocks(f: PsiCoeffs) -> BlockVector:
    """Block decomposition of a combination of psi's (or sigma's)."""
    if f.basis == "sigma":
        f = sigma_to_psi(f)
    acc: dict[Partition, RatFunc] = {}
    for k, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        for lam in all_partitions_up_to(f.n):
            c = coeff_c(f.n, k, lam)
            if not c.is_zero():
                acc[lam] = acc.get(lam, RAT_ZERO) + a * c
    return BlockVector(f.n, acc)


# ----------------------------------------------------------------------
# sigma <-> psi
# ----------------------------------------------------------------------

def sigma_in_psi(n: int, k: int) -> PsiCoeffs:
    """sigma_k = sum_j binom(k, j)_q psi_j."""
    _check_k(n, k)
    return PsiCoeffs(n, tuple(q_binomial(k, j) for j in range(n + 1)))


def psi_in_sigma(n: int, k: int) -> PsiCoeffs:
    """psi_k = sum_j (-1)^(k-j) q^C(k-j, 2) binom(k, j)_q sigma_j."""
    _check_k(n, k)
    out = []
    for j in range(n + 1):
        if j > k:
            out.append(ZERO)
            continue
        d = k - j
        c = q_binomial(k, j).shift_degree(d * (d - 1) // 2)
        out.append(-c if d % 2 else c)
    return PsiCoeffs(n, tuple(out), basis="sigma")


def sigma_to_psi(f: PsiCoeffs) -> PsiCoeffs:
    if f.basis == "psi":
        return f
    acc = PsiCoeffs(f.n, (RAT_ZERO,) * (f.n + 1))
    for k, a in enumerate(f.coeffs):
        if not a.is_zero():
            acc = acc + sigma_in_psi(f.n, k).scale(a)
    return acc


def psi_to_sigma(f: PsiCoeffs) -> PsiCoeffs:
    if f.basis == "sigma":
        return f
    acc = PsiCoeffs(f.n, (RAT_ZERO,) * (f.n + 1), basis="sigma")
    for k, a in enumerate(f.coeffs):
        if not a.is_zero():
            acc = acc + psi_in_sigma(f.n, k).scale(a)
    return acc


# ----------------------------------------------------------------------
# values
# ----------------------------------------------------------------------

def _check_k(n: int, k: int):
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")


@lru_cache(maxsize=None)
def psi_value(k: int, r: int) -> IntPoly:
    """prod_{i<k} (q^r - q^i): zero when r < k."""
    if r < k:
        return ZERO
    return prod(IntPoly.monomial(r) - IntPoly.monomial(i) for i in range(k))


def psi_values(n: int, k: int) -> DerangementValues:
    _check_k(n, k)
    return DerangementValues(n, tuple(psi_value(k, r) for r in range(n + 1)))


def sigma_values(n: int, k: int) -> DerangementValues:
    _check_k(n, k)
    return DerangementValues(n, tuple(IntPoly.monomial(k * r) for r in range(n + 1)))


def values_of(f: PsiCoeffs) -> DerangementValues:
    """Evaluate a psi- or sigma-combination as a function of r."""
    acc = [RAT_ZERO] * (f.n + 1)
    for k, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        vals = sigma_values(f.n, k) if f.basis == "sigma" else psi_values(f.n, k)
        for r in range(f.n + 1):
            acc[r] = acc[r] + a * vals[r]
    return DerangementValues(f.n, tuple(acc))


def restrict(f: DerangementValues) -> DerangementValues:
    """Restriction to G_{n-1} along g -> g + 1, which adds one fixed vector."""
    if f.n < 1:
        raise ValueError("cannot restrict below level 0")
    return DerangementValues(f.n - 1, f.values[1:])


def psi_from_values(v: DerangementValues) -> PsiCoeffs:
    """Coordinates over psi_0..psi_n of a function given by its values.

    The value matrix psi_k(r) is lower triangular in (r, k) with diagonal
    psi_r(r) != 0, so forward substitution suffices.
    """
    n = v.n
    out: list[RatFunc] = []
    for r in range(n + 1):
        acc = v[r]
        for k in range(r):
            acc = acc - out[k] * psi_value(k, r)
        out.append(acc / RatFunc.coerce(psi_value(r, r)))
    return PsiCoeffs(n, tuple(out))


# ----------------------------------------------------------------------
# generalised Thoma functions f_z(g) = z^(n - r(g))
# ----------------------------------------------------------------------

def fz_coeffs(n: int, z: Scalar) -> PsiCoeffs:
    """Coordinates of f_z over psi_0..psi_n."""
    z = RatFunc.coerce(z)
    out = []
    running = RAT_ONE  # prod_{i<j} (q^-i - z) / (q^(i+1) - 1)
    for j in range(n + 1):
        out.append((z ** (n - j)) * running)
        running = running * (RatFunc.q_power(-j) - z) / RatFunc.coerce(IntPoly.monomial(j + 1) - ONE)
    return PsiCoeffs(n, tuple(out))


def fz_values(n: int, z: Scalar) -> DerangementValues:
    z = RatFunc.coerce(z)
    return DerangementValues(n, tuple(z ** (n - r) for r in range(n + 1)))


@dataclass(frozen=True)
class FzReport:
    n: int
    z: str
    q: Optional[Fraction]
    is_character: bool
    first_negative_block: Optional[Partition]


def fz_positivity(n: int, z: Scalar, q: Optional[Fraction | int] = None) -> FzReport:
    """Test whether every block coefficient of f_z is nonnegative.

    With ``q`` given, coefficients are evaluated at that number (the exact
    sign of each rational); otherwise the generic q > 1 sign is decided.
    """
    blocks = to_blocks(fz_coeffs(n, z))
    bad = None
    if q is None:
        bad = first_negative_block(blocks)
    else:
        q = Fraction(q)
        for lam, c in blocks.items():
            if c(q) < 0:
                bad = lam
                break
    return FzReport(n, str(RatFunc.coerce(z)), None if q is None else Fraction(q), bad is None, bad)


def steinberg_fz_coeff(n: int, z: Scalar) -> RatFunc:
    """Coefficient of f_z at the Steinberg block [1^n]_n."""
    blocks = to_blocks(fz_coeffs(n, z))
    return blocks[Partition((1,) * n)]


def steinberg_threshold(n: int, q: Fraction | int) -> Fraction:
    """-1 / (q^n - q^(n-1) - 1): below this a negative z breaks [1^n]_n."""
    q = Fraction(q)
    return Fraction(-1) / (q ** n - q ** (n - 1) - 1)


# ----------------------------------------------------------------------
# the character with no unipotent part
# ----------------------------------------------------------------------

def _fact_ratio(n: int, k: int) -> IntPoly:
    """(n-1)_q! / k_q! = prod_{i=k+1}^{n-1} (1 - q^i) for k <= n-1."""
    return prod(ONE - IntPoly.monomial(i) for i in range(k + 1, n))


def hat_tau_blocks(n: int) -> BlockVector:
    if n < 1:
        raise ValueError("n must be at least 1")
    return BlockVector(n, {
        lam: q_binomial(n - 1, lam.size) * unipotent_dim(lam)
        for lam in all_partitions_up_to(n - 1)
    })


def hat_tau_psi(n: int) -> PsiCoeffs:
    if n < 1:
        raise ValueError("n must be at least 1")
    coeffs = [-(_fact_ratio(n, k).shift_degree(k)) for k in range(n)] + [ONE]
    return PsiCoeffs(n, tuple(coeffs))


def hat_tau_closed_form(n: int) -> DerangementValues:
    """(-1)^n q^C(n,2) n_q! delta_{r,n} - (n-1)_q! r_q!, the reference closed form."""
    vals = []
    for r in range(n + 1):
        v = -(signed_q_factorial(n - 1) * signed_q_factorial(r))
        if r == n:
            extra = signed_q_factorial(n).shift_degree(n * (n - 1) // 2)
            v = v + (-extra if n % 2 else extra)
        vals.append(v)
    return DerangementValues(n, tuple(vals))


@dataclass(frozen=True)
class HatTauDiagnostic:
    n: int
    blocks_agree: bool
    values_below_n_agree: bool
    value_at_n: RatFunc
    closed_form_at_n: RatFunc

    @property
    def value_at_n_agrees(self) -> bool:
        return self.value_at_n == self.closed_form_at_n


def hat_tau_diagnostic(n: int) -> HatTauDiagnostic:
    psi = hat_tau_psi(n)
    vals = values_of(psi)
    closed = hat_tau_closed_form(n)
    return HatTauDiagnostic(
        n=n,
        blocks_agree=to_blocks(psi) == hat_tau_blocks(n),
        values_below_n_agree=all(vals[r] == closed[r] for r in range(n)),
        value_at_n=vals[n],
        closed_form_at_n=closed[n],
    )


def kirillov_identity_residual(n: int, lam: Partition) -> IntPoly:
    """c_n(lam) - sum_{k<n} (n-1)_q!/k_q! q^k c_k(lam); vanishes for |lam| = n."""
    lam = Partition(lam)
    if lam.size != n:
        raise ValueError("need |lambda| = n")
    acc = coeff_c(n, n, lam)
    for k in range(n):
        acc = acc - _fact_ratio(n, k).shift_degree(k) * coeff_c(n, k, lam)
    return acc


def dimension_check(f: BlockVector, v: DerangementValues) -> bool:
    """sum_lambda f<lambda> dim[lambda]_n equals the value at the identity."""
    if f.n != v.n:
        raise ValueError("level mismatch")
    total = RAT_ZERO
    for lam, c in f.items():
        total = total + c * block_dim(f.n, lam)
    return total == v[f.n]


def unipotent_rows(n: int) -> list[Partition]:
    """Full-degree diagrams followed by the empty diagram."""
    return list(partitions_of(n)) + [EMPTY]
