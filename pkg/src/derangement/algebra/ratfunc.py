"""Rational functions in ``q`` with integer coefficients, kept reduced."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Union

from derangement.algebra.poly import ONE, ZERO, IntPoly, poly_gcd, render

Scalar = Union["RatFunc", IntPoly, int, Fraction]


class RatFunc:
    """``num / den`` with gcd(num, den) = 1 and lc(den) > 0.

    Zero is ``0 / 1``. Equality is equality of the canonical pair.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[IntPoly, int] = 0, den: Union[IntPoly, int] = 1):
        if isinstance(num, int):
            num = IntPoly.const(num)
        if isinstance(den, int):
            den = IntPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, num: IntPoly, den: IntPoly) -> "RatFunc":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def coerce(cls, x: Scalar) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, IntPoly):
            return cls._raw(x, ONE)
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, int):
            return cls._raw(IntPoly.const(x), ONE)
        if isinstance(x, Fraction):
            return cls._raw(IntPoly.const(x.numerator), IntPoly.const(x.denominator))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    @classmethod
    def q_power(cls, e: int) -> "RatFunc":
        """``q**e`` for any integer ``e``."""
        if e >= 0:
            return cls._raw(IntPoly.monomial(e), ONE)
        return cls._raw(ONE, IntPoly.monomial(-e))

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> IntPoly:
        if self.den != ONE:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            if self.den == ONE:
                return RatFunc._raw(self.num + o.num, ONE)
            return RatFunc(self.num + o.num, self.den)
        if self.den == ONE:
            return RatFunc._raw(self.num * o.den + o.num, o.den)
        if o.den == ONE:
            return RatFunc._raw(self.num + o.num * self.den, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RAT_ZERO
        if self.den == ONE and o.den == ONE:
            return RatFunc._raw(self.num * o.num, ONE)
        # cross-cancel before multiplying keeps the result reduced
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num.exact_div(g1) if g1 != ONE else self.num
        d2 = o.den.exact_div(g1) if g1 != ONE else o.den
        n2 = o.num.exact_div(g2) if g2 != ONE else o.num
        d1 = self.den.exact_div(g2) if g2 != ONE else self.den
        num, den = n1 * n2, d1 * d2
        if den.lc < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        if den.lc < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den)

    def __truediv__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._raw(self.num ** e, self.den ** e)

    # -- evaluation ---------------------------------------------------
    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        d = self.den.eval_fraction(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at q={x}")
        return self.num.eval_fraction(x) / d

    # -- comparison / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (RatFunc, IntPoly, int, Fraction)) and not isinstance(other, bool):
            o = RatFunc.coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.den == ONE:
                h = hash(self.num)
            else:
                h = hash(("RatFunc", self.num.coeffs, self.den.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == ONE:
            return render(self.num)
        n = render(self.num)
        d = render(self.den)
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den.coeffs if c) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __reduce__(self):
        return (RatFunc._raw, (self.num, self.den))


def _reduce(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if num.is_zero():
        return ZERO, ONE
    if den.is_constant():
        c = den.lc
        g = igcd(num.content(), c)
        if c < 0:
            g = -g
        return num.scale_down(g), IntPoly.const(c // g)
    g = poly_gcd(num, den)
    if g != ONE:
        num = num.exact_div(g)
        den = den.exact_div(g)
    if den.lc < 0:
        num, den = -num, -den
    return num, den


RAT_ZERO = RatFunc._raw(ZERO, ONE)
RAT_ONE = RatFunc._raw(ONE, ONE)
