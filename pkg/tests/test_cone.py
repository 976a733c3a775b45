import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from derangement.algebra.poly import IntPoly, parse
from derangement.algebra.ratfunc import RatFunc
from derangement.algebra.sign import PreconditionViolation, ratfunc_sign
from derangement.cache import cached_basis
from derangement.characters import (
    PsiCoeffs,
    first_negative_block,
    hat_tau_psi,
    psi_block,
    sigma_in_psi,
    to_blocks,
    values_of,
)
from derangement.cone import (
    NotPointed,
    analyze,
    branch_tau_check,
    canonical_ray,
    conic_feasibility,
    decompose_in_taus,
    eigendiagrams,
    eliminate,
    extreme_rays,
    is_extreme,
    is_extreme_psi,
    rank_blocks,
    reconstruct_psi,
    stable_tau,
    stable_tau_psi,
    tau_star_7,
    tau_star_7_psi,
    tau_star_coefficients,
    unipotent_conjecture_probe,
)
from derangement.cone.analysis import (
    branch_tau_rhs,
    completed_basis,
    kernel_vector,
    sampled_rays,
    tau_values,
)
from derangement.cone.dd import zero_set
from derangement.partitions import EMPTY, Partition, all_partitions_up_to, parse_partition

from golden import (
    A1_FACTORS,
    A2_FACTORS,
    RELATION_TYPO,
    RELATION_TYPO_CONSISTENT,
    RELATIONS_4,
    SIGNS_7,
    TAU_4,
    factored,
    parsed,
)

Q = IntPoly.q()
P = Partition


# ----------------------------------------------------------------------
# the tau basis
# ----------------------------------------------------------------------

def test_tau_table_n4():
    b = eliminate(4)
    for lam, row in parsed(TAU_4):
        for k, expected in enumerate(row):
            assert b.taus[k][lam] == RatFunc.coerce(expected), (lam, k)


def test_transition_rows_n4_except_misprint():
    b = eliminate(4)
    for k, row in enumerate(RELATIONS_4):
        for j, entry in enumerate(row):
            if (k, j) == RELATION_TYPO:
                continue
            assert b.transition[k][j] == RatFunc.coerce(parse(entry)), (k, j)


def test_transition_misprint_consistent_value():
    k, j = RELATION_TYPO
    assert eliminate(4).transition[k][j] == RatFunc.coerce(parse(RELATION_TYPO_CONSISTENT))


@pytest.mark.xfail(strict=True, reason="reference entry contradicts both reference tables")
def test_transition_misprint_literal_value():
    k, j = RELATION_TYPO
    assert eliminate(4).transition[k][j] == RatFunc.coerce(parse(RELATIONS_4[k][j]))


def test_misprint_is_inconsistent_with_tables():
    # rows (3) and (3,1) of psi_4 pin down the tau_1 coefficient
    k, j = RELATION_TYPO
    from derangement.characters import coeff_c

    lhs_3 = coeff_c(4, k, P((3,)))
    tau_cols = {lam: row for lam, row in parsed(TAU_4)}
    literal = [parse(x) for x in RELATIONS_4[k]]
    rebuilt = IntPoly([0])
    for jj, a in enumerate(literal):
        rebuilt = rebuilt + a * tau_cols[P((3,))][jj]
    assert rebuilt != lhs_3


def test_n1_golden():
    b = eliminate(1)
    t1 = b.tau_in_psi()[1]
    assert t1.coeffs == (RatFunc(-1), RatFunc(1))
    assert b.taus[1].support() == frozenset({EMPTY})
    assert b.taus[1][EMPTY] == RatFunc(1)
    assert values_of(t1).values == (RatFunc(-1), RatFunc(Q - 2))


@pytest.mark.parametrize("n", range(0, 10))
def test_basis_reproduces_psi_and_is_a_character(n):
    b = cached_basis(n)
    for k in range(n + 1):
        assert reconstruct_psi(b, k) == psi_block(n, k)
        assert first_negative_block(b.taus[k]) is None
        assert to_blocks(b.tau_in_psi()[k]) == b.taus[k]
    for row in b.transition:
        for a in row:
            assert ratfunc_sign(a).nonnegative


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9])
def test_psi_sigma_hat_tau_decompose_positively(n):
    b = cached_basis(n)
    targets = [PsiCoeffs.unit_vector(n, k) for k in range(n + 1)]
    targets += [sigma_in_psi(n, k) for k in range(n + 1)]
    targets.append(hat_tau_psi(n))
    for f in targets:
        assert all(ratfunc_sign(c).nonnegative for c in decompose_in_taus(b, f))


def test_eigendiagrams_n4():
    eig = eigendiagrams(eliminate(4).taus)
    assert eig == {0: P((4,)), 1: P((3, 1)), 2: P((2, 2)), 3: P((1, 1, 1, 1)), 4: EMPTY}


def test_tau_0_is_trivial_and_tau_n_is_empty_block():
    for n in range(1, 8):
        b = cached_basis(n)
        assert b.taus[0].support() == frozenset({P((n,))})
        assert EMPTY in b.taus[n].support()


# ----------------------------------------------------------------------
# stable taus and branching
# ----------------------------------------------------------------------

def test_stable_tau_examples():
    assert stable_tau(0, 0).support() == frozenset({EMPTY})
    assert stable_tau(4, 2) == eliminate(4).taus[2]
    with pytest.raises(PreconditionViolation):
        stable_tau(4, 3)


@pytest.mark.parametrize("n", range(0, 10))
def test_stable_tau_matches_elimination(n):
    b = cached_basis(n)
    for k in range(n // 2 + 1):
        assert stable_tau(n, k) == b.taus[k]
        assert stable_tau_psi(n, k) == b.tau_in_psi()[k]


@pytest.mark.parametrize("n,k", [(8, 2), (6, 3), (5, 1), (9, 4)])
def test_tau_branching(n, k):
    assert branch_tau_check(n, k)
    assert tau_values(n, k).n == n
    from derangement.characters import restrict

    assert restrict(tau_values(n, k)) == branch_tau_rhs(n, k)


# ----------------------------------------------------------------------
# extremality
# ----------------------------------------------------------------------

def test_is_extreme_examples():
    for n in range(2, 7):
        assert is_extreme_psi(PsiCoeffs.unit_vector(n, 0))
        assert not is_extreme_psi(PsiCoeffs.unit_vector(n, 1))
    assert is_extreme_psi(tau_star_7_psi())


@pytest.mark.parametrize("n", range(1, 9))
def test_taus_extreme_when_simplicial(n):
    b = cached_basis(n)
    eig = eigendiagrams(b.taus)
    for k, t in enumerate(b.tau_in_psi()):
        if eig[k] is not None:
            assert is_extreme_psi(t)


@pytest.mark.parametrize("n", range(1, 9))
def test_hat_tau_is_extreme(n):
    assert is_extreme_psi(hat_tau_psi(n))


def test_completed_basis_starts_with_input():
    f = hat_tau_psi(3)
    basis = completed_basis(f)
    assert basis[0] == to_blocks(f)
    assert is_extreme(to_blocks(f), basis)


def test_rank_blocks():
    assert rank_blocks(4, 0) == 4
    assert rank_blocks(4, 1) == 3
    for n in range(1, 7):
        assert rank_blocks(n, n) == 1
        for j in range(n):
            assert rank_blocks(n, j) == n - j
    with pytest.raises(ValueError):
        rank_blocks(3, 4)


# ----------------------------------------------------------------------
# tau_* at n = 7
# ----------------------------------------------------------------------

def test_tau_star_coefficients():
    a1, a2 = tau_star_coefficients()
    assert a1 == factored(A1_FACTORS)
    assert a2 == factored(A2_FACTORS)


def _sign_char(c):
    if c.is_zero():
        return "0"
    return "+" if ratfunc_sign(c).nonnegative else "-"


def test_tau_star_sign_pattern():
    b = cached_basis(7)
    star = tau_star_7()
    for lam_text, taus, s in SIGNS_7:
        lam = parse_partition(lam_text)
        assert "".join(_sign_char(t[lam]) for t in b.taus) == taus, lam_text
        assert _sign_char(star[lam]) == s, lam_text
    assert first_negative_block(star) is None


def test_tau_star_zero_blocks_and_extremality():
    star = tau_star_7()
    zeros = [lam for lam in all_partitions_up_to(7) if star[lam].is_zero()]
    assert len(zeros) >= 7
    assert is_extreme_psi(tau_star_7_psi())


# ----------------------------------------------------------------------
# analysis
# ----------------------------------------------------------------------

def test_analyze_n4():
    r = analyze(4)
    assert r.simplicial and r.complete
    assert r.labels == [f"tau_{k}" for k in range(5)]
    assert r.eigendiagram_of[3] == P((1, 1, 1, 1))


def test_analyze_n4_cross_check():
    r = analyze(4, cross_check=True)
    assert r.simplicial and len(r.extremes) == 5 and not r.notes


def test_analyze_n7():
    r = analyze(7)
    assert not r.simplicial and r.complete
    assert len(r.extremes) == 9
    extras = [i for i, lab in enumerate(r.labels) if lab.startswith("extra")]
    assert len(extras) == 1
    assert canonical_ray(r.extremes_psi[extras[0]]) == canonical_ray(tau_star_7_psi().coeffs)
    assert r.eigendiagram_of[r.labels.index("tau_5")] is None
    assert r.eigendiagram_of[r.labels.index("tau_3")] == P((4, 3))
    assert not any(n.startswith("SampleDisagreement") for n in r.notes)


def test_analyze_budget_reports_incomplete():
    r = analyze(7, time_budget=0.0)
    assert not r.complete


@pytest.mark.parametrize("n", range(1, 10))
def test_sample_counts_agree_and_extremes_are_tight(n):
    counts = []
    for qs in (3, 5, 7):
        lams, a, rays = sampled_rays(n, Fraction(qs))
        counts.append(len(rays))
        for r in rays:
            assert len(zero_set(a, r)) >= n
            assert all(sum(x * y for x, y in zip(row, r)) >= 0 for row in a)
    assert len(set(counts)) == 1


def test_kernel_vector():
    rows = [[IntPoly([1]), Q, Q * Q]]
    rows.append([IntPoly([1]), IntPoly([1]), IntPoly([1])])
    v = kernel_vector(rows)
    for row in rows:
        assert sum((a * b for a, b in zip(row, v)), IntPoly([0])).is_zero()
    assert any(not x.is_zero() for x in v)


def test_canonical_ray_scale_invariant():
    v = (RatFunc(Q + 1, 2), RatFunc(3), RatFunc(0))
    w = tuple(x * RatFunc(Q * Q + 1, 5) for x in v)
    assert canonical_ray(v) == canonical_ray(w)
    assert canonical_ray(v) != canonical_ray(tuple(-x for x in v))
    with pytest.raises(ValueError):
        canonical_ray((RatFunc(0),))


# ----------------------------------------------------------------------
# double description against a brute-force ray oracle
# ----------------------------------------------------------------------

def brute_extreme_rays(a):
    """Rays cut out by d-1 independent tight constraints that satisfy all others."""
    d = len(a[0])
    out = set()
    for rows in combinations(range(len(a)), d - 1):
        m = sympy.Matrix([a[i] for i in rows])
        if m.rank() != d - 1:
            continue
        (k,) = m.nullspace()
        k = k * sympy.lcm([x.q for x in k])
        g = sympy.gcd(list(k))
        k = [int(x / g) for x in k]
        for s in (1, -1):
            v = [s * x for x in k]
            if all(sum(x * y for x, y in zip(row, v)) >= 0 for row in a):
                out.add(tuple(v))
    return out


@settings(max_examples=40)
@given(st.integers(3, 4).flatmap(lambda d: st.lists(
    st.lists(st.integers(-4, 4), min_size=d, max_size=d), min_size=d, max_size=d + 4)))
def test_double_description_matches_brute_force(a):
    d = len(a[0])
    if sympy.Matrix(a).rank() < d:
        with pytest.raises(NotPointed):
            extreme_rays(a)
        return
    assert set(extreme_rays(a)) == brute_extreme_rays(a)


def test_double_description_orthant():
    rays = extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert set(rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


# ----------------------------------------------------------------------
# conic feasibility
# ----------------------------------------------------------------------

def test_lp_feasible_and_infeasible():
    gens = [[1, 0], [1, 1]]
    res = conic_feasibility(gens, [3, 1])
    assert res.feasible and res.verify(gens, [3, 1])
    res = conic_feasibility(gens, [0, 1])
    assert not res.feasible and res.verify(gens, [0, 1])


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=6),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_lp_always_returns_a_checkable_answer(gens, v):
    res = conic_feasibility(gens, v)
    assert res.verify(gens, v)


def test_lp_random_positive_combinations_are_feasible():
    rng = random.Random(5)
    for _ in range(50):
        gens = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(5)]
        y = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in gens]
        v = [sum(y[i] * gens[i][c] for i in range(5)) for c in range(4)]
        res = conic_feasibility(gens, v)
        assert res.feasible and res.verify(gens, v)


# ----------------------------------------------------------------------
# unipotent rows generate the lower rows
# ----------------------------------------------------------------------

def test_probe_n4_row_3():
    (row,) = unipotent_conjecture_probe(4, 3, rows=[P((3,))])
    assert row.result.feasible and row.verified


@pytest.mark.parametrize("almost_rectangular", [False, True])
def test_probe_n7(almost_rectangular):
    rows = unipotent_conjecture_probe(7, 3, almost_rectangular)
    assert len(rows) == len([lam for lam in all_partitions_up_to(7) if 0 < lam.size < 7])
    assert all(r.result.feasible and r.verified for r in rows)


def test_probe_requires_q_above_2():
    with pytest.raises(PreconditionViolation):
        unipotent_conjecture_probe(4, 2)
