"""The cubic curve ``E: x^2(y+z) + y^2(x+z) + z^2(x+y) - 2xyz = 0`` and its arithmetic.

Points of ``E`` form a group under the chord-tangent law with identity
``A_inf = (0, 1, -1)``.  ``E`` is birational to the quartic
``Y^2 = (X-1)(5X-1)(5X^2-2X+1)`` and to the Weierstrass curve
``v^2 = (u+1)(u^2+4)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from . import linalg as la
from .errors import (
    ExceptionalFiber,
    LineNotMeetingCurveProperly,
    NotOnCurve,
    SingularFiber,
)
from .field import ONE, ZERO, Scalar
from .projective import BARY_LINF, PLine, PPoint, join, normalized, points_on_line

Monomial = tuple[int, int, int]


class Cubic:
    """A ternary cubic form, stored as ``{(i, j, k): coefficient}`` for ``x^i y^j z^k``."""

    def __init__(self, coeffs: Mapping[Monomial, object]):
        self.coeffs = {m: Scalar.of(c) for m, c in coeffs.items() if c}
        if any(sum(m) != 3 for m in self.coeffs):
            raise ValueError("not a cubic form")

    def __call__(self, p) -> Scalar:
        x, y, z = p.coords if isinstance(p, PPoint) else p
        acc = ZERO
        for (i, j, k), c in self.coeffs.items():
            acc = acc + c * x**i * y**j * z**k
        return acc

    def gradient(self, p) -> tuple[Scalar, Scalar, Scalar]:
        x, y, z = p.coords if isinstance(p, PPoint) else p
        v = (x, y, z)
        out = []
        for axis in range(3):
            acc = ZERO
            for m, c in self.coeffs.items():
                if m[axis]:
                    e = list(m)
                    e[axis] -= 1
                    acc = acc + c * m[axis] * v[0] ** e[0] * v[1] ** e[1] * v[2] ** e[2]
            out.append(acc)
        return tuple(out)

    def is_symmetric(self) -> bool:
        from itertools import permutations

        for perm in permutations(range(3)):
            for m, c in self.coeffs.items():
                pm = tuple(m[perm[i]] for i in range(3))
                if self.coeffs.get(pm, ZERO) != c:
                    return False
        return True

    def as_sympy(self):
        x, y, z = sympy.symbols("x y z")
        return sum(
            sympy.Rational(c.a.numerator, c.a.denominator) * x**i * y**j * z**k
            for (i, j, k), c in self.coeffs.items()
        )


E = Cubic(
    {
        (2, 1, 0): 1,
        (2, 0, 1): 1,
        (1, 2, 0): 1,
        (0, 2, 1): 1,
        (1, 0, 2): 1,
        (0, 1, 2): 1,
        (1, 1, 1): -2,
    }
)

A = PPoint(1, 0, 0)
B = PPoint(0, 1, 0)
C = PPoint(0, 0, 1)
A_INF = PPoint(0, 1, -1)
B_INF = PPoint(1, 0, -1)
C_INF = PPoint(1, -1, 0)
IDENTITY = A_INF
RATIONAL_POINTS = {"A_inf": A_INF, "A": A, "B_inf": B_INF, "C_inf": C_INF, "B": B, "C": C}


def member(p: PPoint) -> tuple[bool, Scalar]:
    """Exact membership test on ``E`` together with the residual ``F(p)``."""
    r = E(p)
    return (not r), r


def on_curve(p: PPoint) -> bool:
    return not E(p)


def _require(p: PPoint) -> None:
    if E(p):
        raise NotOnCurve(f"{p} is not on the curve")


# --- restriction of the cubic to a line ------------------------------------
def _binary_restriction(cubic: Cubic, p: Sequence, q: Sequence) -> list[Scalar]:
    """Coefficients ``[c0, c1, c2, c3]`` of ``F(s p + t q) = c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3``."""
    fp, fq = cubic(p), cubic(q)
    fplus = cubic(la.add(p, q))
    fminus = cubic(la.sub(p, q))
    c2 = (fplus + fminus) / 2 - fp
    c1 = (fplus - fminus) / 2 - fq
    return [fp, c1, c2, fq]


def _param_of(point: Sequence, p: Sequence, q: Sequence) -> tuple[Scalar, Scalar]:
    """``(s, t)`` with ``point`` proportional to ``s p + t q``."""
    # solve via 2x2 minors: point x (s p + t q) = 0
    cp, cq = la.cross(point, p), la.cross(point, q)
    # s * cp + t * cq = 0
    k = next((i for i in range(3) if cp[i] or cq[i]), None)
    if k is None:
        raise LineNotMeetingCurveProperly("degenerate parametrization")
    s, t = cq[k], -cp[k]
    v = la.add(la.scale(s, p), la.scale(t, q))
    if not la.is_zero(la.cross(v, point)):
        raise LineNotMeetingCurveProperly(f"{point} is not on the line")
    return s, t


def _deflate(coeffs: list[Scalar], s0: Scalar, t0: Scalar) -> list[Scalar]:
    """Divide the binary form by ``(t0 s - s0 t)``, which vanishes at ``(s0, t0)``.

    Coefficients are in descending powers of ``s``: ``sum c_i s^(n-i) t^i``.
    """
    if t0:
        # synthetic division of f(s, 1) by (s - s0/t0)
        root = s0 / t0
        out, acc = [], ZERO
        for c in coeffs:
            acc = acc * root + c
            out.append(acc)
        if out[-1]:
            raise LineNotMeetingCurveProperly("point is not a root of the restricted cubic")
        return [c / t0 for c in out[:-1]]
    # the root is (1 : 0), so t divides the form
    if coeffs[0]:
        raise LineNotMeetingCurveProperly("point is not a root of the restricted cubic")
    return [c / (-s0) for c in coeffs[1:]]


def _root_multiplicity(coeffs: list[Scalar], s0: Scalar, t0: Scalar) -> int:
    m = 0
    cur = coeffs
    while any(cur) and len(cur) > 1:
        try:
            cur = _deflate(cur, s0, t0)
        except LineNotMeetingCurveProperly:
            break
        m += 1
    if not any(cur):
        return 3
    return m


def intersection_multiplicity(line: PLine, point: PPoint, cubic: Cubic = E) -> int:
    """Multiplicity of ``point`` as a root of the cubic restricted to ``line`` (3 if the line is a component)."""
    if not line.contains(point):
        return 0
    p, q = points_on_line(line)
    coeffs = _binary_restriction(cubic, p, q)
    if not any(coeffs):
        return 3
    s0, t0 = _param_of(point.coords, p, q)
    return _root_multiplicity(coeffs, s0, t0)


def third_intersection(line: PLine, known: Iterable[PPoint], cubic: Cubic = E) -> PPoint:
    """The remaining meet of ``line`` with the cubic once two roots (with multiplicity) are known."""
    known = list(known)
    if len(known) != 2:
        raise LineNotMeetingCurveProperly("exactly two known intersections (counted with multiplicity) are required")
    p, q = points_on_line(line)
    coeffs = _binary_restriction(cubic, p, q)
    if not any(coeffs):
        raise LineNotMeetingCurveProperly("line is a component of the curve")
    for k in known:
        if not line.contains(k):
            raise LineNotMeetingCurveProperly(f"{k} is not on the line")
        s0, t0 = _param_of(k.coords, p, q)
        coeffs = _deflate(coeffs, s0, t0)
    a, b = coeffs  # a s + b t
    return PPoint(la.add(la.scale(-b, p), la.scale(a, q)))


def tangent(p: PPoint) -> PLine:
    g = E.gradient(p)
    if la.is_zero(g):
        raise LineNotMeetingCurveProperly(f"{p} is a singular point")
    return PLine(g)


# --- group law ----------------------------------------------------------------
def star(p: PPoint, q: PPoint) -> PPoint:
    """Third point of ``E`` on the chord (or tangent) through ``p`` and ``q``."""
    line = tangent(p) if p == q else join(p, q)
    return third_intersection(line, (p, q))


def neg(p: PPoint) -> PPoint:
    _require(p)
    # A_inf is a flex, so -p is the third point on the line p A_inf
    return p if p == IDENTITY else star(p, IDENTITY)


def add(p: PPoint, q: PPoint) -> PPoint:
    _require(p)
    _require(q)
    return star(IDENTITY, star(p, q))


def scalar_mul(n: int, p: PPoint) -> PPoint:
    _require(p)
    if n < 0:
        return scalar_mul(-n, neg(p))
    result, base = IDENTITY, p
    while n:
        if n & 1:
            result = add(result, base)
        base = add(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class NotTorsionUpToBound:
    bound: int

    def __str__(self):
        return f"not torsion up to {self.bound}"


def order_of(p: PPoint, bound: int = 20, add_fn=None, identity=IDENTITY) -> int | NotTorsionUpToBound:
    """Least ``n <= bound`` with ``n p = identity``."""
    add_fn = add_fn or add
    acc = p
    for n in range(1, bound + 1):
        if acc == identity:
            return n
        acc = add_fn(acc, p)
    return NotTorsionUpToBound(bound)


def torsion_table() -> dict[str, int | NotTorsionUpToBound]:
    return {name: order_of(pt, 20) for name, pt in RATIONAL_POINTS.items()}


# --- affine model and birational chain ------------------------------------
def to_affine_xy(p: PPoint) -> tuple[Scalar, Scalar]:
    x, y, _ = normalized(p, BARY_LINF)
    return x, y


def from_affine_xy(x, y) -> PPoint:
    x, y = Scalar.of(x), Scalar.of(y)
    return PPoint(x, y, ONE - x - y)


def curve_affine_residual(x, y) -> Scalar:
    """Left side of ``(5x-1)y^2 + (5x-1)(x-1)y - x^2 + x``."""
    x, y = Scalar.of(x), Scalar.of(y)
    f = 5 * x - 1
    return f * y * y + f * (x - 1) * y - x * x + x


def quartic_residual(X, Y) -> Scalar:
    X, Y = Scalar.of(X), Scalar.of(Y)
    return Y * Y - (X - 1) * (5 * X - 1) * (5 * X * X - 2 * X + 1)


def weierstrass_residual(u, v) -> Scalar:
    u, v = Scalar.of(u), Scalar.of(v)
    return v * v - (u + 1) * (u * u + 4)


def to_quartic(x, y) -> tuple[Scalar, Scalar]:
    """``(X, Y) = (x, 2(5x-1)y + (5x-1)(x-1))``: completing the square in ``y``."""
    x, y = Scalar.of(x), Scalar.of(y)
    f = 5 * x - 1
    return x, 2 * f * y + f * (x - 1)


def from_quartic(X, Y) -> tuple[Scalar, Scalar]:
    X, Y = Scalar.of(X), Scalar.of(Y)
    f = 5 * X - 1
    if not f:
        raise SingularFiber("5x = 1 has no inverse image")
    return X, (Y - f * (X - 1)) / (2 * f)


def quartic_to_uv(X, Y) -> tuple[Scalar, Scalar]:
    """Inverse of ``X = u/(u-4), Y = 8v/(u-4)^2``."""
    X, Y = Scalar.of(X), Scalar.of(Y)
    if X == 1:
        raise ExceptionalFiber("X = 1 maps to the point at infinity")
    d = X - 1
    return 4 * X / d, 2 * Y / (d * d)


def uv_to_quartic(u, v) -> tuple[Scalar, Scalar]:
    u, v = Scalar.of(u), Scalar.of(v)
    if u == 4:
        raise ExceptionalFiber("u = 4 maps to infinity on the quartic")
    d = u - 4
    return u / d, 8 * v / (d * d)


def curve_to_uv(p: PPoint) -> tuple[Scalar, Scalar]:
    return quartic_to_uv(*to_quartic(*to_affine_xy(p)))


def uv_to_curve(u, v) -> PPoint:
    return from_affine_xy(*from_quartic(*uv_to_quartic(u, v)))


def quartic_identity_holds() -> bool:
    """``Y^2 - quartic(X) == 4(5x-1) * affine_curve(x, y)`` as polynomials."""
    x, y = sympy.symbols("x y")
    f = 5 * x - 1
    Y = 2 * f * y + f * (x - 1)
    quartic = (x - 1) * f * (5 * x**2 - 2 * x + 1)
    affine = f * y**2 + f * (x - 1) * y - x**2 + x
    return sympy.expand(Y**2 - quartic - 4 * f * affine) == 0


# --- Weierstrass model v^2 = u^3 + u^2 + 4u + 4 ------------------------------
W_COEFFS = (0, 1, 0, 4, 4)  # a1, a2, a3, a4, a6
W_INFINITY = None
W_TORSION = ((-1, 0), (0, 2), (0, -2), (4, 10), (4, -10))


def j_invariant(coeffs=W_COEFFS) -> Fraction:
    a1, a2, a3, a4, a6 = (Fraction(c) for c in coeffs)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise ValueError("singular curve")
    return c4**3 / disc


def discriminant(coeffs=W_COEFFS) -> Fraction:
    a1, a2, a3, a4, a6 = (Fraction(c) for c in coeffs)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def w_add(p, q):
    """Group law on ``v^2 = u^3 + u^2 + 4u + 4``; ``None`` is the point at infinity."""
    if p is None:
        return q
    if q is None:
        return p
    (u1, v1), (u2, v2) = p, q
    if u1 == u2:
        if v1 == -v2:
            return None
        slope = (3 * u1 * u1 + 2 * u1 + 4) / (2 * v1)
    else:
        slope = (v2 - v1) / (u2 - u1)
    u3 = slope * slope - 1 - u1 - u2
    v3 = slope * (u1 - u3) - v1
    return (u3, v3)


def w_point(u, v) -> tuple[Scalar, Scalar]:
    u, v = Scalar.of(u), Scalar.of(v)
    if weierstrass_residual(u, v):
        raise NotOnCurve(f"({u}, {v}) is not on v^2 = (u+1)(u^2+4)")
    return (u, v)


def w_order(p, bound: int = 20):
    return order_of(p, bound, add_fn=w_add, identity=W_INFINITY)


# --- geometry reports -----------------------------------------------------
def singular_points_exist(cubic: Cubic = E) -> bool:
    """Exact test for common zeros of the three partials, chart by chart (Groebner bases over Q)."""
    x, y, z = sympy.symbols("x y z")
    f = cubic.as_sympy()
    grads = [sympy.diff(f, v) for v in (x, y, z)]
    for var in (x, y, z):
        others = [v for v in (x, y, z) if v != var]
        gb = sympy.groebner([g.subs(var, 1) for g in grads], *others, order="lex")
        if list(gb.exprs) != [1]:
            return True
    return False


def smoothness_and_tangency_report() -> dict[str, bool]:
    out: dict[str, bool] = {}
    out["no singular points"] = not singular_points_exist()
    for name, pt in RATIONAL_POINTS.items():
        out[f"gradient nonzero at {name}"] = not la.is_zero(E.gradient(pt))
    # sides of K^-1(ABC): the line through each vertex parallel to the opposite side
    for name, vertex, side in (("A", A, PLine(0, 1, 1)), ("B", B, PLine(1, 0, 1)), ("C", C, PLine(1, 1, 0))):
        out[f"side of K^-1(ABC) meets curve at {name} with multiplicity 2"] = (
            intersection_multiplicity(side, vertex) == 2
        )
    for name in ("A_inf", "B_inf", "C_inf"):
        pt = RATIONAL_POINTS[name]
        out[f"{name} is a flex"] = intersection_multiplicity(tangent(pt), pt) == 3
    return out


def sample_rational_multiples(n: int) -> list[PPoint]:
    """``n`` distinct points ``kP + T`` over Q(sqrt(6)), for a fixed non-torsion ``P`` and rational torsion ``T``.

    Cycling through the torsion translates keeps the heights small.
    """
    base = uv_to_curve(2, Scalar(0, 2, 6))
    torsion = list(RATIONAL_POINTS.values())
    out, acc = [], base
    while len(out) < n:
        for t in torsion:
            if len(out) == n:
                break
            out.append(add(acc, t))
        acc = add(acc, base)
    return out
