"""Dense univariate polynomials in ``q`` over the integers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from typing import Iterable, Sequence, Union

from derangement.kernels import poly_mul


class InexactDivision(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Immutable polynomial with integer coefficients, ascending in ``q``.

    The zero polynomial has the empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        object.__setattr__(self, "coeffs", _trim(c))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPoly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls._raw((int(c),) if c else ())

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        if not coeff:
            return ZERO
        return cls._raw((0,) * degree + (int(coeff),))

    @classmethod
    def q(cls) -> "IntPoly":
        return Q

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def content(self) -> int:
        """Gcd of the coefficients, signed like the leading coefficient."""
        g = 0
        for c in self.coeffs:
            g = igcd(g, c)
            if g == 1:
                break
        return -g if self.lc < 0 else g

    def primitive(self) -> "IntPoly":
        if not self.coeffs:
            return self
        g = self.content()
        if g == 1:
            return self
        return IntPoly._raw(tuple(c // g for c in self.coeffs))

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = IntPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] += y
        return IntPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-c for c in self.coeffs))

    def __pos__(self) -> "IntPoly":
        return self

    def __sub__(self, other):
        other = IntPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = IntPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return IntPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        return IntPoly._raw(_trim(poly_mul(a, b)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_degree(self, d: int) -> "IntPoly":
        """Multiply by ``q**d``."""
        if not self.coeffs or d == 0:
            return self
        return IntPoly._raw((0,) * d + self.coeffs)

    def scale_down(self, c: int) -> "IntPoly":
        """Exact division of every coefficient by the integer ``c``."""
        out = []
        for x in self.coeffs:
            qt, r = divmod(x, c)
            if r:
                raise InexactDivision(f"{self} not divisible by {c}")
            out.append(qt)
        return IntPoly._raw(tuple(out))

    def divmod_exact(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division over the integers; raises if a quotient coefficient is
        not integral (use :meth:`pseudo_rem` when that can happen)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lcb = other.degree, other.lc
        b = other.coeffs
        if len(r) - 1 < db:
            return ZERO, self
        qt = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            f, rem = divmod(c, lcb)
            if rem:
                raise InexactDivision(f"{self} / {other}")
            qt[i - db] = f
            off = i - db
            for j, y in enumerate(b):
                r[off + j] -= f * y
        return IntPoly._raw(_trim(qt)), IntPoly._raw(_trim(r))

    def exact_div(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return self.scale_down(other)
        qt, r = self.divmod_exact(other)
        if not r.is_zero():
            raise InexactDivision(f"{self} / {other} leaves {r}")
        return qt

    def divides(self, other: "IntPoly") -> bool:
        """True when ``self`` divides ``other`` in Z[q]."""
        try:
            _, r = other.divmod_exact(self)
        except InexactDivision:
            return False
        return r.is_zero()

    def pseudo_rem(self, other: "IntPoly") -> "IntPoly":
        """prem(self, other) = lc(other)**(deg self - deg other + 1) * self mod other."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero")
        db, lcb = other.degree, other.lc
        b = other.coeffs
        r = list(self.coeffs)
        if len(r) - 1 < db:
            return self
        e = len(r) - 1 - db + 1
        while len(r) - 1 >= db and r:
            c = r[-1]
            off = len(r) - 1 - db
            r = [x * lcb for x in r]
            for j, y in enumerate(b):
                r[off + j] -= c * y
            e -= 1
            r = list(_trim(r))
        if e:
            m = lcb ** e
            r = [x * m for x in r]
        return IntPoly._raw(_trim(r))

    def derivative(self) -> "IntPoly":
        return IntPoly._raw(_trim([i * c for i, c in enumerate(self.coeffs)][1:]))

    def taylor_shift(self, a: int = 1) -> "IntPoly":
        """Coefficients of p(q + a) in powers of q."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return IntPoly._raw(_trim(c))

    # -- evaluation ---------------------------------------------------
    def __call__(self, x):
        if isinstance(x, Fraction) and x.denominator != 1:
            return self.eval_fraction(x)
        if isinstance(x, Fraction):
            x = x.numerator
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        num, den = x.numerator, x.denominator
        d = len(self.coeffs) - 1
        if d < 0:
            return Fraction(0)
        acc = 0
        dp = 1
        # homogenised Horner: sum c_i num^i den^(d-i)
        for c in reversed(self.coeffs):
            acc = acc * num + c * dp
            dp *= den
        return Fraction(acc, den ** d)

    def sign_at(self, x: Fraction) -> int:
        """Sign of p(x) for rational x, computed in integers."""
        num, den = x.numerator, x.denominator
        acc = 0
        dp = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * dp
            dp *= den
        return (acc > 0) - (acc < 0)

    # -- comparisons / hashing ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(("IntPoly", self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        return render(self)

    def __reduce__(self):
        return (IntPoly, (self.coeffs,))

    # -- nonnegativity helpers ---------------------------------------
    def has_nonnegative_coeffs(self) -> bool:
        return all(c >= 0 for c in self.coeffs)


ZERO = IntPoly._raw(())
ONE = IntPoly._raw((1,))
Q = IntPoly._raw((0, 1))


def render(p: IntPoly, var: str = "q") -> str:
    """Render like ``1+2q+q^3``; zero renders as ``0``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def parse(text: str, var: str = "q") -> IntPoly:
    """Inverse of :func:`render` (accepts ``*`` between coefficient and q)."""
    s = text.replace(" ", "").replace("*", "")
    if s in ("", "0"):
        return ZERO
    terms: list[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] != "^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    acc: dict[int, int] = {}
    for t in terms:
        sign = 1
        if t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        if var in t:
            coef_s, _, rest = t.partition(var)
            coef = int(coef_s) if coef_s else 1
            deg = int(rest[1:]) if rest.startswith("^") else 1
        else:
            coef, deg = int(t), 0
        acc[deg] = acc.get(deg, 0) + sign * coef
    top = max(acc)
    return IntPoly([acc.get(i, 0) for i in range(top + 1)])


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Gcd in Z[q] by the subresultant PRS, normalised to positive lc."""
    if a.is_zero():
        return -b if b.lc < 0 else b
    if b.is_zero():
        return a if a.lc > 0 else -a
    ca, cb = abs(a.content()), abs(b.content())
    d = igcd(ca, cb)
    A, B = a.primitive(), b.primitive()
    if A.lc < 0:
        A = -A
    if B.lc < 0:
        B = -B
    if A.degree < B.degree:
        A, B = B, A
    if B.degree == 0:
        return IntPoly.const(d)
    if A == B:
        return A * d
    g = h = 1
    while True:
        delta = A.degree - B.degree
        R = A.pseudo_rem(B)
        if R.is_zero():
            break
        if R.degree == 0:
            return IntPoly.const(d)
        A = B
        B = R.scale_down(g * h ** delta)
        g = A.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta) // (h ** (delta - 1))
    B = B.primitive()
    if B.lc < 0:
        B = -B
    return B * d


@lru_cache(maxsize=None)
def q_binomial(k: int, j: int) -> IntPoly:
    """Gaussian binomial coefficient: number of j-subspaces of F_q^k."""
    if j < 0 or k < 0 or j > k:
        return ZERO
    if j == 0 or j == k:
        return ONE
    # Pascal-type recursion keeps everything in Z[q]
    return q_binomial(k - 1, j - 1) + q_binomial(k - 1, j).shift_degree(j)


@lru_cache(maxsize=None)
def signed_q_factorial(n: int) -> IntPoly:
    """Product of (1 - q**i) for i = 1..n; 1 when n = 0."""
    if n <= 0:
        return ONE
    return signed_q_factorial(n - 1) * (ONE - IntPoly.monomial(n))


def q_power_minus(r: int, i: int) -> IntPoly:
    """``q**r - q**i``."""
    return IntPoly.monomial(r) - IntPoly.monomial(i)


def prod(polys: Iterable[IntPoly]) -> IntPoly:
    out = ONE
    for p in polys:
        out = out * p
    return out
