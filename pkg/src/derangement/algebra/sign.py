"""Sign decisions for polynomials and rational functions on the ray q > 1.

Characters are recognised generically in ``q``: a coefficient counts as
nonnegative only if it is nonnegative for every real q > 1. The fast path
substitutes q = 1 + t; Sturm sequences settle everything else exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from derangement.algebra.poly import ONE, IntPoly, poly_gcd
from derangement.algebra.ratfunc import RatFunc


class PreconditionViolation(ValueError):
    """An operation was called outside its documented domain."""


class Sign(enum.Enum):
    POSITIVE = "PositiveOnQgt1"
    NONNEGATIVE = "NonNegativeOnQgt1"
    ZERO = "ZeroEverywhere"
    NEGATIVE = "NegativeSomewhere"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class SignVerdict:
    kind: Sign
    witness: Optional[Fraction] = None

    @property
    def nonnegative(self) -> bool:
        """True for verdicts compatible with a character coefficient."""
        return self.kind in (Sign.POSITIVE, Sign.NONNEGATIVE, Sign.ZERO)

    def __str__(self):
        if self.kind is Sign.NEGATIVE:
            return f"{self.kind.value}(q={self.witness})"
        return self.kind.value


class Order(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    UNDETERMINED = "Undetermined"


POSITIVE = SignVerdict(Sign.POSITIVE)
NONNEGATIVE = SignVerdict(Sign.NONNEGATIVE)
ZERO_EVERYWHERE = SignVerdict(Sign.ZERO)
UNDETERMINED = SignVerdict(Sign.UNDETERMINED)


# -- Sturm machinery ----------------------------------------------------

def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of ``p`` with every member rescaled by a positive constant."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = a.pseudo_rem(b)
        # prem multiplies by lc(b)**e; undo its sign so -r is a positive
        # multiple of the true negated remainder
        e = a.degree - b.degree + 1
        if b.lc < 0 and e % 2:
            r = -r
        r = -r
        if r.is_zero():
            break
        c = abs(r.content())
        seq.append(r.scale_down(c) if c > 1 else r)
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _variations(signs: list[int]) -> int:
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _var_at(seq: list[IntPoly], x: Fraction) -> int:
    return _variations([p.sign_at(x) for p in seq])


def _var_at_infinity(seq: list[IntPoly]) -> int:
    return _variations([(p.lc > 0) - (p.lc < 0) for p in seq])


def squarefree_part(p: IntPoly) -> IntPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    return p.exact_div(g).primitive() if g.lc else p


def count_roots(seq: list[IntPoly], a: Fraction, b: Optional[Fraction]) -> int:
    """Distinct real roots in (a, b] (b=None means +infinity)."""
    vb = _var_at_infinity(seq) if b is None else _var_at(seq, b)
    return _var_at(seq, a) - vb


def cauchy_bound(p: IntPoly) -> Fraction:
    """Strict upper bound on |root|."""
    lc = abs(p.lc)
    m = max(abs(c) for c in p.coeffs[:-1]) if p.degree > 0 else 0
    return Fraction(m, lc) + 1 + Fraction(1, 2)


def _nonroot_between(p: IntPoly, a: Fraction, b: Fraction) -> Fraction:
    """A rational in (a, b) where p does not vanish."""
    den = 2
    while True:
        for num in range(1, den):
            if num * 2 == den and den > 2:
                continue
            x = a + (b - a) * Fraction(num, den)
            if p.sign_at(x) != 0:
                return x
        den *= 2


def sample_points(p: IntPoly) -> tuple[list[Fraction], int]:
    """Rationals > 1 meeting every sign region of ``p`` on (1, inf).

    Returns the samples in increasing order and the number of distinct
    roots of ``p`` in (1, inf).
    """
    s = squarefree_part(p)
    seq = sturm_sequence(s)
    one = Fraction(1)
    total = count_roots(seq, one, None)
    bound = cauchy_bound(s)
    if bound <= 2:
        bound = Fraction(2)
    while s.sign_at(bound) == 0:
        bound += 1
    if total == 0:
        return [bound], 0
    samples: list[Fraction] = []
    stack = [(one, bound)]
    intervals: list[tuple[Fraction, Fraction]] = []
    while stack:
        a, b = stack.pop()
        c = count_roots(seq, a, b)
        if c == 0 or (c == 1 and a != one):
            intervals.append((a, b))
            continue
        m = _nonroot_between(s, a, b)
        stack.append((m, b))
        stack.append((a, m))
    intervals.sort()
    for a, b in intervals:
        if a != one:
            samples.append(a)
    samples.append(bound)
    samples = sorted(set(samples))
    return samples, total


def _simplest_witness(p: IntPoly, x: Fraction, max_steps: int = 4096) -> Fraction:
    """Walk the Stern-Brocot tree toward x; first node > 1 with p < 0 wins."""
    lo_n, lo_d, hi_n, hi_d = 0, 1, 1, 0
    for _ in range(max_steps):
        m = Fraction(lo_n + hi_n, lo_d + hi_d)
        if m > 1 and p.sign_at(m) < 0:
            return m
        if m == x:
            break
        if x < m:
            hi_n, hi_d = m.numerator, m.denominator
        else:
            lo_n, lo_d = m.numerator, m.denominator
    return x


def sign_on_q_gt_1(p: IntPoly) -> SignVerdict:
    """Decide the sign behaviour of ``p`` for all real q > 1."""
    if p.is_zero():
        return ZERO_EVERYWHERE
    if p.taylor_shift(1).has_nonnegative_coeffs():
        return POSITIVE
    samples, nroots = sample_points(p)
    for x in samples:
        if p.sign_at(x) < 0:
            return SignVerdict(Sign.NEGATIVE, _simplest_witness(p, x))
    return POSITIVE if nroots == 0 else NONNEGATIVE


def ratfunc_sign(f: RatFunc) -> SignVerdict:
    """Sign of a rational function on q > 1; Undetermined if it has a pole there."""
    if f.is_zero():
        return ZERO_EVERYWHERE
    dv = sign_on_q_gt_1(f.den)
    if dv.kind is Sign.POSITIVE:
        return sign_on_q_gt_1(f.num)
    # away from poles sign(num/den) = sign(num*den)
    if sample_points(f.den)[1] > 0:
        return UNDETERMINED
    return sign_on_q_gt_1(f.num * f.den)


def ratfunc_cmp_q_gt_1(a: RatFunc, b: RatFunc) -> Order:
    """Compare two rational functions uniformly on q > 1."""
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    for d in (a.den, b.den):
        if d != ONE and sign_on_q_gt_1(d).kind is not Sign.POSITIVE:
            raise PreconditionViolation(f"denominator {d} is not positive on q > 1")
    if a == b:
        return Order.EQUAL
    diff = a.num * b.den - b.num * a.den
    v = sign_on_q_gt_1(diff)
    if v.kind is Sign.ZERO:
        return Order.EQUAL
    if v.kind in (Sign.POSITIVE, Sign.NONNEGATIVE):
        return Order.GREATER
    nv = sign_on_q_gt_1(-diff)
    if nv.kind in (Sign.POSITIVE, Sign.NONNEGATIVE):
        return Order.LESS
    return Order.UNDETERMINED
