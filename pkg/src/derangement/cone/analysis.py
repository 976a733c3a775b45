"""Extreme rays of the derangement cone D_n^+ and related checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from derangement.algebra.linalg import bareiss_rank, clear_row_denominators, rank_fraction
from derangement.algebra.poly import ONE, ZERO, IntPoly, poly_gcd, q_binomial
from derangement.algebra.ratfunc import RAT_ONE, RAT_ZERO, RatFunc
from derangement.algebra.sign import PreconditionViolation, ratfunc_sign, sign_on_q_gt_1
from derangement.characters import (
    BlockVector,
    DerangementValues,
    PsiCoeffs,
    coeff_c,
    first_negative_block,
    psi_block,
    restrict,
    to_blocks,
    unipotent_dim,
    unipotent_rows,
    values_of,
)
from derangement.cone.dd import extreme_rays, zero_set
from derangement.cone.elimination import (
    BudgetExceeded,
    ConeBasis,
    eigendiagrams,
    eliminate,
)
from derangement.cone.lp import ConicResult, conic_feasibility
from derangement.partitions import EMPTY, Partition, all_partitions_up_to, partitions_of

DEFAULT_SAMPLES = (Fraction(3), Fraction(5), Fraction(7))


# ----------------------------------------------------------------------
# extremality
# ----------------------------------------------------------------------

def is_extreme(f: BlockVector, basis: Sequence[BlockVector]) -> bool:
    """Rank test: complement-support coordinates of basis[1:] are independent.

    ``basis`` must span D_n and start with ``f``.
    """
    n = f.n
    if len(basis) != n + 1:
        raise ValueError(f"basis must have {n + 1} members")
    if basis[0] != f:
        raise ValueError("basis must start with f")
    supp = f.support()
    rows = []
    for lam in all_partitions_up_to(n):
        if lam in supp:
            continue
        rows.append([b[lam] for b in basis[1:]])
    if not rows:
        return n == 0
    return bareiss_rank(rows) == n


def completed_basis(f_psi: PsiCoeffs) -> list[BlockVector]:
    """[f] followed by all psi_j but one whose coefficient in f is nonzero."""
    n = f_psi.n
    drop = max(k for k, c in enumerate(f_psi.coeffs) if not c.is_zero())
    f = to_blocks(f_psi)
    return [f] + [psi_block(n, j) for j in range(n + 1) if j != drop]


def is_extreme_psi(f_psi: PsiCoeffs) -> bool:
    return is_extreme(to_blocks(f_psi), completed_basis(f_psi))


# ----------------------------------------------------------------------
# stable characters
# ----------------------------------------------------------------------

def stable_tau(n: int, k: int) -> BlockVector:
    """Explicit formula for tau_k^(n), valid for k <= n/2."""
    if not 0 <= 2 * k <= 2 * n or 2 * k > n:
        raise PreconditionViolation(f"stable formula needs 0 <= k <= n/2, got n={n}, k={k}")
    out: dict[Partition, IntPoly] = {}
    for j in range(k + 1):
        b = q_binomial(k, j)
        for mu in partitions_of(j):
            lam = Partition(tuple(x for x in (n - k,) + tuple(mu) if x))
            out[lam] = b * unipotent_dim(mu)
    return BlockVector(n, out)


def stable_tau_psi(n: int, k: int) -> PsiCoeffs:
    """tau_k = sum_j (-1)^(k-j) q^C(k-j,2) binom(k,j)_q psi_j (stable range)."""
    if 2 * k > n:
        raise PreconditionViolation(f"stable formula needs k <= n/2, got n={n}, k={k}")
    coeffs = []
    for j in range(n + 1):
        if j > k:
            coeffs.append(ZERO)
            continue
        d = k - j
        c = q_binomial(k, j).shift_degree(d * (d - 1) // 2)
        coeffs.append(-c if d % 2 else c)
    return PsiCoeffs(n, tuple(coeffs))


def tau_values(n: int, k: int) -> DerangementValues:
    return values_of(eliminate(n).tau_in_psi()[k])


def branch_tau_rhs(n: int, k: int) -> DerangementValues:
    """q^k tau_k + 2q^(k-1)(q^k-1) tau_(k-1) + q^(k-2)(q^(k-1)-1)(q^k-1) tau_(k-2), at level n-1.

    Terms whose tau index falls outside 0..n-1 are dropped.
    """
    m = n - 1
    acc = DerangementValues(m, (RAT_ZERO,) * (m + 1))
    qk1 = IntPoly.monomial(k) - ONE
    terms = [
        (k, RatFunc.q_power(k)),
        (k - 1, RatFunc.q_power(k - 1) * qk1 * 2),
        (k - 2, RatFunc.q_power(k - 2) * (IntPoly.monomial(k - 1) - ONE) * qk1),
    ]
    for idx, coef in terms:
        if 0 <= idx <= m and not coef.is_zero():
            acc = acc + tau_values(m, idx).scale(coef)
    return acc


def branch_tau_check(n: int, k: int) -> bool:
    if n < 1 or 2 * k > n:
        raise PreconditionViolation(f"need n >= 1 and k <= n/2, got n={n}, k={k}")
    return restrict(tau_values(n, k)) == branch_tau_rhs(n, k)


# ----------------------------------------------------------------------
# the additional extreme ray at n = 7
# ----------------------------------------------------------------------

def tau_star_coefficients() -> tuple[RatFunc, RatFunc]:
    q = IntPoly.q()
    a1 = RatFunc((1 + q) * (1 + q ** 2), 1 + q + q ** 2)
    a2 = RatFunc(
        (1 + q) * (1 + q ** 2) ** 2 * (1 + q + q ** 2 + q ** 3 + q ** 4),
        IntPoly([0, 0, 1, 0, 1, 1, 1, 1, 1, 0, 1]),
    )
    return a1, a2


def tau_star_7() -> BlockVector:
    b = eliminate(7)
    a1, a2 = tau_star_coefficients()
    return b.taus[4].scale(a1) + b.taus[6].scale(a2) - b.taus[5]


def tau_star_7_psi() -> PsiCoeffs:
    t = eliminate(7).tau_in_psi()
    a1, a2 = tau_star_coefficients()
    return t[4].scale(a1) + t[6].scale(a2) - t[5]


# ----------------------------------------------------------------------
# rank of coefficient blocks
# ----------------------------------------------------------------------

def rank_blocks(n: int, j: int) -> int:
    """Rank of {c_k^(n)(lambda) : |lambda| = n - j, k = 0..n}."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    rows = [[coeff_c(n, k, lam) for k in range(n + 1)] for lam in partitions_of(n - j)]
    return bareiss_rank(rows)


# ----------------------------------------------------------------------
# rays in psi-coordinates
# ----------------------------------------------------------------------

def canonical_ray(vec: Sequence) -> tuple[IntPoly, ...]:
    """Scale a nonzero vector over Q(q) to coprime polynomial entries.

    Two vectors give the same result exactly when they differ by a factor
    in Q(q) with positive leading coefficient.
    """
    rats = [RatFunc.coerce(x) for x in vec]
    polys = clear_row_denominators([rats])[0]
    g = ZERO
    for p in polys:
        if not p.is_zero():
            g = poly_gcd(g, p) if not g.is_zero() else (p if p.lc > 0 else -p)
    if g.is_zero():
        raise ValueError("zero vector has no ray")
    # the cleared denominator and g both have positive leading coefficient
    return tuple(p.exact_div(g) if g != ONE else p for p in polys)


def ray_blocks(ray: Sequence) -> BlockVector:
    n = len(ray) - 1
    return to_blocks(PsiCoeffs(n, tuple(RatFunc.coerce(x) for x in ray)))


def _det_bareiss(m: list[list[IntPoly]]) -> IntPoly:
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        for r in range(c + 1, n):
            for cc in range(c + 1, n):
                v = p * a[r][cc] - a[r][c] * a[c][cc]
                a[r][cc] = v.exact_div(prev) if prev != ONE else v
            a[r][c] = ZERO
        prev = p
    d = a[n - 1][n - 1] if n else ONE
    return d if sign > 0 else -d


def kernel_vector(rows: list[list[IntPoly]]) -> tuple[IntPoly, ...]:
    """Kernel of an n x (n+1) polynomial matrix of rank n via signed maximal minors."""
    n = len(rows)
    out = []
    for i in range(n + 1):
        minor = [[r[c] for c in range(n + 1) if c != i] for r in rows]
        d = _det_bareiss(minor)
        out.append(d if i % 2 == 0 else -d)
    return tuple(out)


@dataclass
class LiftedRay:
    sample: Fraction
    numeric: tuple[int, ...]
    ray: Optional[tuple[IntPoly, ...]]
    nonnegative: bool = False
    extreme: bool = False
    failure: Optional[str] = None


def lift_ray(n: int, q_star: Fraction, numeric: Sequence[int],
             lams: Sequence[Partition], a_num: Sequence[Sequence[int]]) -> LiftedRay:
    """Turn a sampled extreme ray into a symbolic one with the same zero pattern."""
    zs = zero_set(a_num, numeric)
    # pick n rows independent at q*, then solve symbolically
    chosen: list[int] = []
    for i in zs:
        trial = [a_num[t] for t in chosen + [i]]
        if rank_fraction(trial) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        return LiftedRay(q_star, tuple(numeric), None, failure="zero pattern has rank < n")
    rows = [[coeff_c(n, k, lams[i]) for k in range(n + 1)] for i in chosen]
    vec = kernel_vector(rows)
    if all(v.is_zero() for v in vec):
        return LiftedRay(q_star, tuple(numeric), None, failure="symbolic kernel is trivial")
    ray = canonical_ray(vec)
    at = [p.eval_fraction(q_star) for p in ray]
    # orient to agree with the sample
    lead = next(i for i, x in enumerate(numeric) if x != 0)
    if at[lead] == 0:
        return LiftedRay(q_star, tuple(numeric), ray, failure="lift vanishes at sample")
    factor = Fraction(numeric[lead]) / at[lead]
    if factor < 0:
        ray = tuple(-p for p in ray)
        at = [-x for x in at]
        factor = -factor
    if any(factor * x != y for x, y in zip(at, numeric)):
        return LiftedRay(q_star, tuple(numeric), ray, failure="lift disagrees with sample")
    blocks = ray_blocks(ray)
    nonneg = first_negative_block(blocks) is None
    extreme = nonneg and is_extreme_psi(PsiCoeffs(n, tuple(RatFunc.coerce(p) for p in ray)))
    return LiftedRay(q_star, tuple(numeric), ray, nonneg, extreme,
                     None if (nonneg and extreme) else "symbolic verification failed")


def constraint_matrix(n: int, q_star: Fraction) -> tuple[list[Partition], list[list[int]], list[int]]:
    """Integer rows c_k^(n)(lambda)(q*) (scaled by q* denominators) and a processing order.

    The unipotent rows and the empty diagram come first.
    """
    lams = list(all_partitions_up_to(n))
    a = []
    for lam in lams:
        vals = [coeff_c(n, k, lam).eval_fraction(q_star) for k in range(n + 1)]
        den = 1
        for v in vals:
            den = den * v.denominator // _igcd(den, v.denominator)
        a.append([int(v * den) for v in vals])
    first = [i for i, lam in enumerate(lams) if lam.size == n or lam.size == 0]
    rest = [i for i in range(len(lams)) if i not in first]
    return lams, a, first + rest


def _igcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def sampled_rays(n: int, q_star: Fraction, tick=None) -> tuple[list[Partition], list[list[int]], list[tuple[int, ...]]]:
    lams, a, order = constraint_matrix(n, q_star)
    return lams, a, extreme_rays(a, order, tick=tick)


# ----------------------------------------------------------------------
# the full analysis
# ----------------------------------------------------------------------

@dataclass
class ConeReport:
    n: int
    simplicial: bool
    extremes: list[BlockVector]
    # eigendiagrams are taken within the tau basis; extra rays map to None
    eigendiagram_of: dict[int, Optional[Partition]]
    notes: list[str] = field(default_factory=list)
    extremes_psi: list[tuple[RatFunc, ...]] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    complete: bool = True
    basis: Optional[ConeBasis] = None


class _Deadline:
    def __init__(self, budget: Optional[float]):
        self.end = None if budget is None else time.monotonic() + budget

    def __call__(self):
        if self.end is not None and time.monotonic() > self.end:
            raise BudgetExceeded("time budget exhausted")


def analyze(n: int, time_budget: Optional[float] = None,
            samples: Sequence[Fraction] = DEFAULT_SAMPLES,
            cross_check: bool = False) -> ConeReport:
    """Classify D_n^+ and list its extreme rays.

    If every tau has an eigendiagram the cone is simplicial and the taus are
    the extremes. Otherwise extreme rays are enumerated by double description
    at each sample q*, lifted to symbolic rays and verified. ``cross_check``
    runs the sampled enumeration in the simplicial case as well.
    """
    deadline = _Deadline(time_budget)
    try:
        basis = eliminate(n, deadline if time_budget is not None else None)
    except BudgetExceeded:
        return ConeReport(n, False, [], {}, [f"budget exhausted during elimination at n={n}"],
                          complete=False)
    taus = list(basis.taus)
    eig = eigendiagrams(taus)
    simplicial = all(v is not None for v in eig.values())
    tau_psi = basis.tau_in_psi()
    notes: list[str] = []
    missing = [k for k, v in eig.items() if v is None]
    if missing:
        notes.append("taus without eigendiagram: " + ", ".join(f"tau_{k}" for k in missing))
    report = ConeReport(n, simplicial, [], {}, notes, basis=basis)
    if simplicial and not cross_check:
        report.extremes = taus
        report.extremes_psi = [t.coeffs for t in tau_psi]
        report.eigendiagram_of = dict(eig)
        report.labels = [f"tau_{k}" for k in range(n + 1)]
        return report

    tau_rays = {canonical_ray(t.coeffs): k for k, t in enumerate(tau_psi)}
    per_sample: list[dict[tuple[IntPoly, ...], LiftedRay]] = []
    try:
        for qs in samples:
            lams, a, rays = sampled_rays(n, qs, tick=deadline)
            lifted: dict[tuple[IntPoly, ...], LiftedRay] = {}
            for r in rays:
                deadline()
                lr = lift_ray(n, qs, r, lams, a)
                if lr.failure is not None or lr.ray is None:
                    notes.append(f"SampleDisagreement: ray {list(r)} at q*={qs}: {lr.failure}")
                    continue
                lifted[lr.ray] = lr
            per_sample.append(lifted)
    except BudgetExceeded:
        notes.append(f"budget exhausted during extreme-ray search at n={n}; result incomplete")
        report.complete = False
        report.extremes = taus
        report.extremes_psi = [t.coeffs for t in tau_psi]
        report.eigendiagram_of = dict(eig)
        report.labels = [f"tau_{k}" for k in range(n + 1)]
        return report

    common = set(per_sample[0])
    for d in per_sample[1:]:
        common &= set(d)
    union = set().union(*(set(d) for d in per_sample))
    for ray in sorted(union - common, key=_ray_key):
        notes.append(f"SampleDisagreement: ray {[str(p) for p in ray]} not found at every sample")
    counts = [len(d) for d in per_sample]
    if len(set(counts)) > 1:
        notes.append(f"SampleDisagreement: ray counts per sample {counts}")

    ordered = sorted(common, key=lambda r: (tau_rays.get(r, n + 1), _ray_key(r)))
    extremes, extremes_psi, labels = [], [], []
    extra = 0
    for ray in ordered:
        if ray in tau_rays:
            k = tau_rays[ray]
            extremes.append(taus[k])
            extremes_psi.append(tau_psi[k].coeffs)
            labels.append(f"tau_{k}")
        else:
            extremes.append(ray_blocks(ray))
            extremes_psi.append(tuple(RatFunc.coerce(p) for p in ray))
            labels.append(f"extra_{extra}")
            extra += 1
    for k, t in enumerate(tau_psi):
        if canonical_ray(t.coeffs) not in common:
            notes.append(f"tau_{k} was not recovered as an extreme ray")
    report.extremes = extremes
    report.extremes_psi = extremes_psi
    report.labels = labels
    report.eigendiagram_of = {
        i: (eig[int(lab[4:])] if lab.startswith("tau_") else None) for i, lab in enumerate(labels)
    }
    if cross_check and simplicial and len(common) != n + 1:
        notes.append(f"cross-check found {len(common)} extreme rays, expected {n + 1}")
    return report


def _ray_key(ray: tuple[IntPoly, ...]):
    return tuple((p.degree, p.coeffs) for p in ray)


# ----------------------------------------------------------------------
# unipotent conjecture
# ----------------------------------------------------------------------

@dataclass
class ProbeRow:
    partition: Partition
    result: ConicResult
    verified: bool


def unipotent_conjecture_probe(n: int, q_star: Fraction | int,
                               almost_rectangular_only: bool = False,
                               rows: Optional[Sequence[Partition]] = None) -> list[ProbeRow]:
    """For each |lambda| < n, test whether its coefficient row at q* is a
    nonnegative combination of the full-degree rows and the empty-diagram row."""
    q_star = Fraction(q_star)
    if q_star <= 2:
        raise PreconditionViolation("q* must exceed 2")
    gens_lams = [lam for lam in partitions_of(n)
                 if not almost_rectangular_only or lam.is_almost_rectangular()] + [EMPTY]
    gens = [[coeff_c(n, k, lam).eval_fraction(q_star) for k in range(n + 1)] for lam in gens_lams]
    targets = rows if rows is not None else [lam for lam in all_partitions_up_to(n) if 0 < lam.size < n]
    out = []
    for lam in targets:
        v = [coeff_c(n, k, lam).eval_fraction(q_star) for k in range(n + 1)]
        res = conic_feasibility(gens, v)
        out.append(ProbeRow(Partition(lam), res, res.verify(gens, v)))
    return out
