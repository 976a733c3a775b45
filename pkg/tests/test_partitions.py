from itertools import product

import pytest
from hypothesis import given, strategies as st

from derangement.partitions import (
    EMPTY,
    Partition,
    all_partitions_up_to,
    hook_lengths,
    hstrip_minus,
    hstrip_plus,
    n_stat,
    parse_partition,
    partitions_of,
)

P = Partition


def brute_partitions(n):
    """Every weakly decreasing positive tuple summing to n (independent enumeration)."""
    out = set()
    for length in range(n + 1):
        for parts in product(range(1, n + 1), repeat=length):
            if sum(parts) == n and all(parts[i] >= parts[i + 1] for i in range(length - 1)):
                out.add(parts)
    return out


def boxes(lam):
    return {(i, j) for i, r in enumerate(lam) for j in range(r)}


def is_horizontal_strip(lam, mu):
    if not boxes(mu) <= boxes(lam):
        return False
    cols = [j for _, j in boxes(lam) - boxes(mu)]
    return len(cols) == len(set(cols))


def test_validation():
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, 0))
    assert P(()) == EMPTY and EMPTY.size == 0


def test_all_partitions_examples():
    assert all_partitions_up_to(0) == (EMPTY,)
    assert all_partitions_up_to(2) == (P((2,)), P((1, 1)), P((1,)), EMPTY)
    assert len(all_partitions_up_to(4)) == 12


def test_partition_function_values():
    assert [len(partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for n in range(8):
        assert len(all_partitions_up_to(n)) == sum(len(partitions_of(m)) for m in range(n + 1))


@pytest.mark.parametrize("n", range(7))
def test_partitions_against_brute_force(n):
    assert {tuple(p) for p in partitions_of(n)} == brute_partitions(n)
    assert len(set(partitions_of(n))) == len(partitions_of(n))


def test_canonical_order():
    assert [str(p) for p in all_partitions_up_to(4)] == [
        "(4)", "(3,1)", "(2^2)", "(2,1^2)", "(1^4)", "(3)", "(2,1)", "(1^3)", "(2)", "(1^2)", "(1)", "()",
    ]


def test_render_and_parse():
    assert str(P((3, 2, 2, 1))) == "(3,2^2,1)"
    assert parse_partition("(3,2^2,1)") == P((3, 2, 2, 1))
    assert parse_partition("()") == EMPTY
    for lam in all_partitions_up_to(6):
        assert parse_partition(str(lam)) == lam


def test_hook_lengths():
    assert sorted(hook_lengths((5,)), reverse=True) == [5, 4, 3, 2, 1]
    assert sorted(hook_lengths((2, 1))) == [1, 1, 3]
    assert sorted(hook_lengths((2, 2))) == [1, 2, 2, 3]
    for lam in all_partitions_up_to(7):
        assert len(hook_lengths(lam)) == lam.size


def test_n_stat():
    assert n_stat((6,)) == 0
    assert n_stat((1, 1, 1)) == 3
    assert n_stat((2, 1)) == 1


def test_conjugate_involution():
    for lam in all_partitions_up_to(7):
        assert lam.conjugate().conjugate() == lam
        assert lam.conjugate().size == lam.size


def test_hstrip_examples():
    lam = P((2, 1))
    assert hstrip_minus(lam, 0) == (lam,)
    assert set(hstrip_minus(lam, 1)) == {P((1, 1)), P((2,))}
    assert hstrip_minus(lam, 2) == (P((1,)),)
    assert hstrip_minus(P((2,)), 3) == ()
    assert hstrip_plus(EMPTY, 3) == (P((3,)),)
    assert set(hstrip_plus(P((1,)), 1)) == {P((2,)), P((1, 1))}
    assert set(hstrip_plus(P((2,)), 2)) == {P((4,)), P((3, 1)), P((2, 2))}


@pytest.mark.parametrize("n", range(7))
def test_hstrip_minus_against_brute_force(n):
    for lam in partitions_of(n):
        for m in range(n + 1):
            expected = {mu for mu in partitions_of(n - m) if is_horizontal_strip(lam, mu)}
            assert set(hstrip_minus(lam, m)) == expected


def test_hstrip_reciprocity():
    for lam in all_partitions_up_to(8):
        for m in range(lam.size + 1):
            for mu in hstrip_minus(lam, m):
                assert lam in hstrip_plus(mu, m, lam.size)
    for mu in all_partitions_up_to(6):
        for m in range(3):
            for lam in hstrip_plus(mu, m):
                assert mu in hstrip_minus(lam, m)


def test_hstrip_plus_cap_precondition():
    with pytest.raises(ValueError):
        hstrip_plus(P((2,)), 2, cap=3)


@given(st.integers(0, 9).flatmap(lambda n: st.sampled_from(partitions_of(n))))
def test_almost_rectangular(lam):
    if not lam:
        return
    a = lam.first
    expected = all(x == a for x in lam[:-1])
    assert lam.is_almost_rectangular() == expected
