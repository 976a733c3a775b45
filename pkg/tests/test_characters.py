from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from derangement.algebra.poly import ONE, ZERO, IntPoly, parse, q_binomial
from derangement.algebra.ratfunc import RatFunc
from derangement.characters import (
    BlockVector,
    DerangementValues,
    PsiCoeffs,
    block_dim,
    coeff_c,
    coeff_c_direct,
    dim_rho,
    dimension_check,
    first_negative_block,
    fz_coeffs,
    fz_positivity,
    fz_values,
    group_order,
    hat_tau_blocks,
    hat_tau_diagnostic,
    hat_tau_psi,
    kirillov_identity_residual,
    psi_block,
    psi_from_values,
    psi_in_sigma,
    psi_to_sigma,
    psi_values,
    restrict,
    sigma_in_psi,
    sigma_to_psi,
    sigma_values,
    steinberg_fz_coeff,
    steinberg_threshold,
    to_blocks,
    unipotent_dim,
    values_of,
)
from derangement.partitions import EMPTY, Partition, all_partitions_up_to, partitions_of

from golden import PSI_4, parsed

Q = IntPoly.q()
P = Partition


# ----------------------------------------------------------------------
# dimensions
# ----------------------------------------------------------------------

def test_unipotent_dim_examples():
    assert unipotent_dim(P((3,))) == ONE
    assert unipotent_dim(P((1, 1))) == Q
    assert unipotent_dim(P((2, 1))) == parse("q+q^2")
    assert unipotent_dim(P((1, 1, 1))) == parse("q^3")
    assert unipotent_dim(EMPTY) == ONE


def test_steinberg_degree():
    for n in range(1, 9):
        assert unipotent_dim(P((1,) * n)) == IntPoly.monomial(n * (n - 1) // 2)


def test_unipotent_dims_sum_over_partitions_at_q1():
    # at q = 1 the q-hook formula collapses to the hook formula for S_n
    for n in range(1, 8):
        total = sum(unipotent_dim(lam)(1) ** 2 for lam in partitions_of(n))
        assert total == factorial(n)


def test_group_order_examples():
    assert group_order(1)(2) == 1
    assert group_order(2)(2) == 6
    assert group_order(3)(2) == 168
    assert group_order(2)(3) == 48


def test_dim_rho_small():
    assert dim_rho(0) == ONE
    assert dim_rho(1) == Q - 2
    # GL(1,q) has q-1 linear characters, one of them trivial
    assert dim_rho(1)(5) == 3


@pytest.mark.parametrize("n", range(0, 7))
def test_block_dims_square_sum_to_group_order(n):
    # one copy of each block with multiplicity equal to its degree
    total = ZERO
    for lam in all_partitions_up_to(n):
        c = q_binomial(n, lam.size) * unipotent_dim(lam)
        total = total + c * c * dim_rho(n - lam.size)
    assert total == group_order(n)


def test_block_dim_rejects_oversize():
    with pytest.raises(ValueError):
        block_dim(2, P((3,)))


# ----------------------------------------------------------------------
# block coefficients
# ----------------------------------------------------------------------

def test_psi_table_n4():
    for lam, row in parsed(PSI_4):
        for k, expected in enumerate(row):
            assert coeff_c(4, k, lam) == expected, (lam, k)


@pytest.mark.parametrize("n", range(0, 8))
def test_recursive_coefficients_match_strip_sum(n):
    for k in range(n + 1):
        for lam in all_partitions_up_to(n):
            assert coeff_c(n, k, lam) == coeff_c_direct(n, k, lam), (n, k, lam)


@pytest.mark.parametrize("n", range(0, 9))
def test_zero_pattern_and_nonnegativity(n):
    for k in range(n + 1):
        for lam in all_partitions_up_to(n):
            c = coeff_c(n, k, lam)
            expected_zero = lam.first < n - k or n - lam.size > k
            assert c.is_zero() == expected_zero, (n, k, lam)
            assert all(x >= 0 for x in c.coeffs)


@pytest.mark.parametrize("n", range(1, 9))
def test_support_grows_with_k(n):
    supports = [psi_block(n, k).support() for k in range(n + 1)]
    for a, b in zip(supports, supports[1:]):
        assert a <= b


def test_coeff_c_rejects_bad_k():
    with pytest.raises(ValueError):
        coeff_c(3, 4, P((1,)))


def test_psi_0_is_trivial_block():
    for n in range(6):
        b = psi_block(n, 0)
        assert b.support() == frozenset({P((n,)) if n else EMPTY})


def test_block_vector_arithmetic():
    a = psi_block(3, 1)
    b = psi_block(3, 2)
    assert (a + b) - b == a
    assert a.scale(2) == a + a
    with pytest.raises(ValueError):
        _ = a + psi_block(4, 1)


def test_first_negative_block():
    f = psi_block(2, 1) - psi_block(2, 2)
    assert first_negative_block(f) is not None
    assert first_negative_block(psi_block(2, 2)) is None


# ----------------------------------------------------------------------
# sigma / psi transforms and values
# ----------------------------------------------------------------------

def test_sigma_in_psi_example():
    s = sigma_in_psi(3, 2)
    assert s.coeffs[:3] == (RatFunc(1), RatFunc(Q + 1), RatFunc(1))
    assert s.coeffs[3].is_zero()


def test_psi_in_sigma_example():
    p = psi_in_sigma(2, 2)
    assert p.coeffs == (RatFunc(Q), RatFunc(-(Q + 1)), RatFunc(1))


@pytest.mark.parametrize("n", range(0, 7))
def test_transforms_invert(n):
    for k in range(n + 1):
        e = PsiCoeffs.unit_vector(n, k)
        assert sigma_to_psi(psi_to_sigma(e)) == e
        s = PsiCoeffs.unit_vector(n, k, "sigma")
        assert psi_to_sigma(sigma_to_psi(s)) == s


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1))))
def test_values_round_trip(args):
    n, cs = args
    f = PsiCoeffs(n, tuple(RatFunc(c) for c in cs))
    assert psi_from_values(values_of(f)) == f
    assert values_of(psi_to_sigma(f)) == values_of(f)


def test_values_examples():
    assert psi_values(3, 2)[3] == (IntPoly.monomial(3) - 1) * (IntPoly.monomial(3) - Q)
    assert psi_values(3, 2)[2] == (Q * Q - 1) * (Q * Q - Q)
    assert psi_values(3, 2)[1].is_zero()
    assert sigma_values(3, 2)[3] == IntPoly.monomial(6)


def test_psi_values_count_subspace_embeddings_at_q2():
    # psi_k(r) counts injective linear maps F_q^k -> F_q^r
    for r in range(5):
        for k in range(r + 1):
            expected = 1
            for i in range(k):
                expected *= 2 ** r - 2 ** i
            assert psi_values(4, k)[r](2) == expected


def test_restrict_shifts_values():
    v = sigma_values(4, 2)
    assert restrict(v) == DerangementValues(3, v.values[1:])
    with pytest.raises(ValueError):
        restrict(sigma_values(0, 0))


def test_sigma_branching():
    for n in range(1, 7):
        for k in range(n):
            assert restrict(sigma_values(n, k)) == sigma_values(n - 1, k).scale(RatFunc.q_power(k))


def test_sigma_blocks_are_characters():
    for n in range(7):
        for k in range(n + 1):
            assert first_negative_block(to_blocks(sigma_in_psi(n, k))) is None


@pytest.mark.parametrize("n", range(0, 7))
def test_dimension_check_on_psi_and_sigma(n):
    for k in range(n + 1):
        e = PsiCoeffs.unit_vector(n, k)
        assert dimension_check(to_blocks(e), values_of(e))
        s = sigma_in_psi(n, k)
        assert dimension_check(to_blocks(s), values_of(s))


def test_dimension_check_detects_errors():
    e = PsiCoeffs.unit_vector(3, 2)
    bad = values_of(e) + DerangementValues(3, (RatFunc(0),) * 3 + (RatFunc(1),))
    assert not dimension_check(to_blocks(e), bad)


# ----------------------------------------------------------------------
# f_z
# ----------------------------------------------------------------------

def test_fz_examples():
    assert values_of(fz_coeffs(3, 1)) == fz_values(3, 1)
    assert fz_coeffs(3, 1) == PsiCoeffs.unit_vector(3, 0)
    assert fz_coeffs(3, 0) == PsiCoeffs.unit_vector(3, 3).scale(
        RatFunc(1) / RatFunc.coerce(psi_values(3, 3)[3]))


@pytest.mark.parametrize("n", range(1, 6))
def test_fz_values_match_coefficients(n):
    for z in (Fraction(1, 2), Fraction(-1, 3), RatFunc(Q), RatFunc.q_power(-2)):
        assert values_of(fz_coeffs(n, z)) == fz_values(n, z)


def test_fz_at_inverse_powers_is_normalised_sigma():
    for n in range(1, 6):
        for k in range(n + 1):
            z = RatFunc.q_power(-k)
            assert fz_coeffs(n, z) == sigma_in_psi(n, k).scale(RatFunc.q_power(-k * n))
            assert fz_positivity(n, z).is_character


def test_fz_at_positive_q_power_fails():
    assert not fz_positivity(3, RatFunc(Q)).is_character


def test_steinberg_threshold_at_q2():
    z = Fraction(-1, 10)
    fails = [n for n in range(2, 9) if steinberg_fz_coeff(n, z)(2) < 0]
    assert fails[0] == 5
    first_pred = next(n for n in range(2, 9) if z < steinberg_threshold(n, 2))
    assert first_pred == 5


def test_fz_negative_z_first_breaks_at_n3_for_q2():
    z = Fraction(-1, 10)
    assert fz_positivity(2, z, 2).is_character
    rep = fz_positivity(3, z, 2)
    assert not rep.is_character and rep.first_negative_block == P((3,))


# ----------------------------------------------------------------------
# the character with no unipotent part
# ----------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_hat_tau_two_constructions_agree(n):
    d = hat_tau_diagnostic(n)
    assert d.blocks_agree
    assert d.values_below_n_agree


def test_hat_tau_has_no_full_degree_block():
    for n in range(1, 7):
        b = hat_tau_blocks(n)
        assert all(lam.size < n for lam in b.support())
        assert first_negative_block(b) is None


def test_hat_tau_n1():
    assert hat_tau_psi(1).coeffs == (RatFunc(-1), RatFunc(1))
    assert values_of(hat_tau_psi(1)).values == (RatFunc(-1), RatFunc(Q - 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_hat_tau_dimension(n):
    assert dimension_check(hat_tau_blocks(n), values_of(hat_tau_psi(n)))


def test_hat_tau_value_at_n_against_reference_form():
    # the reference closed form differs at r = n; the two constructions agree
    diffs = [hat_tau_diagnostic(n) for n in range(1, 5)]
    assert all(not d.value_at_n_agrees for d in diffs)


@pytest.mark.parametrize("n", range(1, 8))
def test_kirillov_identity(n):
    for lam in partitions_of(n):
        assert kirillov_identity_residual(n, lam).is_zero()


def test_kirillov_requires_full_degree():
    with pytest.raises(ValueError):
        kirillov_identity_residual(3, P((2,)))


def test_block_vector_json_rows_order():
    b = psi_block(2, 2)
    assert [lam for lam, _ in b.rows()] == list(all_partitions_up_to(2))
    assert isinstance(b, BlockVector)
