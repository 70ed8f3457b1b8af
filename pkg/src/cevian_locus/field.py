"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

A :class:`Scalar` is ``a + b*sqrt(d)`` with ``a, b`` reduced fractions and ``d``
a squarefree integer > 1 (or ``d == 0`` for a plain rational).  Values from two
different fields never combine; doing so raises :class:`MixedDiscriminants`.
"""
from __future__ import annotations

import decimal
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational
from typing import Union

from sympy import factorint

from .errors import DivisionByZero, MixedDiscriminants, NonSquarefreeDiscriminant, NotASquare

Number = Union["Scalar", int, Fraction]


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    # sympy may hand back gmpy2 integers, which do not mix with Fraction
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s * f**2`` and ``s`` squarefree (n > 0)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, f = 1, 1
    for p, e in _factor(n):
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return s, f


def is_squarefree(n: int) -> bool:
    return n > 0 and squarefree_split(n)[0] == n


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """Immutable element ``a + b*sqrt(d)`` of Q or Q(sqrt(d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a, b = _frac(a), _frac(b)
        if d in (0, 1):
            a, b, d = a + b if d == 1 else a, Fraction(0), 0
        elif d < 0:
            raise ValueError("only real quadratic fields are supported")
        elif not is_squarefree(d):
            raise NonSquarefreeDiscriminant(f"{d} is not squarefree")
        elif b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> Scalar:
        s = object.__new__(cls)
        if b == 0:
            d = 0
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "d", d)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.a, self.b, self.d))

    @staticmethod
    def of(x: Number) -> Scalar:
        if isinstance(x, Scalar):
            return x
        return Scalar._raw(_frac(x), Fraction(0), 0)

    # --- structure -----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def to_fraction(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> Scalar:
        return Scalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    # --- arithmetic ----------------------------------------------------
    def _common(self, other: Scalar) -> int:
        if self.d == other.d or other.d == 0:
            return self.d
        if self.d == 0:
            return other.d
        raise MixedDiscriminants(f"cannot combine Q(sqrt({self.d})) with Q(sqrt({other.d}))")

    def __add__(self, other):
        try:
            o = Scalar.of(other)
        except TypeError:
            return NotImplemented
        d = self._common(o)
        return Scalar._raw(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Scalar.of(other)
        except TypeError:
            return NotImplemented
        d = self._common(o)
        return Scalar._raw(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            o = Scalar.of(other)
        except TypeError:
            return NotImplemented
        d = self._common(o)
        if o.d == 0:
            return Scalar._raw(self.a * o.a, self.b * o.a, d)
        if self.d == 0:
            return Scalar._raw(self.a * o.a, self.a * o.b, d)
        return Scalar._raw(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return Scalar._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            o = Scalar.of(other)
        except TypeError:
            return NotImplemented
        if o.d == 0:
            if o.a == 0:
                raise DivisionByZero("division by zero")
            return Scalar._raw(self.a / o.a, self.b / o.a, self.d)
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            return Scalar.of(other) / self
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Scalar.of(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- comparison ----------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        try:
            o = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.d == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        return sign(self)

    def _cmp(self, other) -> int:
        return sign(self - Scalar.of(other))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if sign(self) < 0 else self

    # --- roots ---------------------------------------------------------
    def sqrt(self, field: int = 0) -> Scalar:
        """Non-negative square root.

        A rational argument may open a new field; ``field`` names the field
        the caller is already working in, and a root outside it raises
        :class:`MixedDiscriminants`.  A non-rational argument must have its
        root in its own field.
        """
        if sign(self) < 0:
            raise NotASquare(f"{self} is negative")
        if self.d == 0:
            root = sqrt_rational(self.a)
            if field and root.d not in (0, field):
                raise MixedDiscriminants(
                    f"sqrt({self}) lies in Q(sqrt({root.d})), not Q(sqrt({field}))"
                )
            return root
        if field and field != self.d:
            raise MixedDiscriminants(f"{self} is not in Q(sqrt({field}))")
        n = _rational_sqrt(self.norm())
        if n is not None:
            for cand in ((self.a + n) / 2, (self.a - n) / 2):
                x = _rational_sqrt(cand)
                if x:
                    r = Scalar._raw(x, self.b / (2 * x), self.d)
                    return -r if sign(r) < 0 else r
        raise MixedDiscriminants(f"sqrt({self}) needs a second quadratic extension")

    def is_square(self) -> bool:
        try:
            self.sqrt(self.d)
        except (NotASquare, MixedDiscriminants):
            return False
        return True

    # --- rendering -----------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = digits + 10
            val = decimal.Decimal(self.a.numerator) / decimal.Decimal(self.a.denominator)
            if self.d:
                val += (
                    decimal.Decimal(self.b.numerator)
                    / decimal.Decimal(self.b.denominator)
                    * decimal.Decimal(self.d).sqrt()
                )
            ctx.prec = digits
            return +val

    def __float__(self):
        return float(self.to_decimal(20))


ZERO = Scalar.of(0)
ONE = Scalar.of(1)


def sign(s: Scalar) -> int:
    """Exact sign of ``a + b*sqrt(d)`` without floating point."""
    sa = (s.a > 0) - (s.a < 0)
    sb = (s.b > 0) - (s.b < 0)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    # opposite signs: the larger magnitude wins; equality is impossible for squarefree d
    return sa if s.a * s.a > s.b * s.b * s.d else sb


def adjoin(r, d: int) -> Scalar:
    """``r * sqrt(d)`` for squarefree ``d > 1``."""
    if d <= 1 or not is_squarefree(d):
        raise NonSquarefreeDiscriminant(f"{d} is not a squarefree integer > 1")
    return Scalar(0, r, d)


def sqrt_rational(q) -> Scalar:
    """Square root of a non-negative rational, with the radicand reduced (sqrt(12) = 2*sqrt(3))."""
    q = _frac(q)
    if q < 0:
        raise NotASquare(f"{q} is negative")
    if q == 0:
        return ZERO
    exact = _rational_sqrt(q)
    if exact is not None:
        return Scalar.of(exact)
    # sqrt(n/m) = sqrt(n*m)/m
    sn, fn = squarefree_split(q.numerator)
    sm, fm = squarefree_split(q.denominator)
    g = gcd(sn, sm)
    s = (sn // g) * (sm // g)
    coeff = Fraction(fn * fm * g, q.denominator)
    return Scalar(0, coeff, s)


def common_field(values) -> int:
    """The single discriminant shared by ``values`` (0 if all rational)."""
    d = 0
    for v in values:
        vd = v.d if isinstance(v, Scalar) else 0
        if vd:
            if d and vd != d:
                raise MixedDiscriminants(f"values from Q(sqrt({d})) and Q(sqrt({vd}))")
            d = vd
    return d


# --- literal grammar ------------------------------------------------------
_RAT = r"-?\d+(?:/\d+)?"
_LITERAL = re.compile(
    rf"^(?P<a>{_RAT})?(?:(?P<op>[+-])?(?P<b>{_RAT})?\*?sqrt\((?P<d>\d+)\))?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``INT``, ``INT/INT`` or ``RAT+RAT*sqrt(INT)`` (e.g. ``9/2+1/2*sqrt(89)``)."""
    s = re.sub(r"\s+", "", text)
    m = _LITERAL.match(s)
    if not s or not m:
        raise ValueError(f"not a scalar literal: {text!r}")
    a, op, b, d = m.group("a", "op", "b", "d")
    if d is None:
        if a is None:
            raise ValueError(f"not a scalar literal: {text!r}")
        return Scalar.of(Fraction(a))
    if op is None and a is not None and b is None:
        # "2*sqrt(6)": the leading number was the coefficient
        a, b = None, a
    coeff = Fraction(b) if b is not None else Fraction(1)
    if op == "-":
        coeff = -coeff
    rational = Fraction(a) if a is not None else Fraction(0)
    return rational + coeff * sqrt_rational(int(d))


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    if s.d == 0:
        return _fmt_frac(s.a)
    rad = f"{_fmt_frac(abs(s.b))}*sqrt({s.d})"
    if s.a == 0:
        return rad if s.b > 0 else "-" + rad
    return f"{_fmt_frac(s.a)}{'+' if s.b > 0 else '-'}{rad}"
