"""Projective incidence kernel: points, lines, conics and affine maps.

Every affine notion (midpoint, center, interior, dilatation type) takes the
line at infinity explicitly, so one kernel serves both barycentric
coordinates (``BARY_LINF = [1, 1, 1]``) and Cartesian ones (``CART_LINF = [0, 0, 1]``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from . import linalg as la
from .errors import (
    CenterAtInfinity,
    CoincidentArguments,
    CollinearTriple,
    DegenerateConic,
    NoSharedInvolution,
    NotCollinear,
    PointAtInfinity,
    PointNotOnConic,
    UnderdeterminedConic,
)
from .field import ONE, ZERO, Scalar, common_field, sign


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def canonical(values: Sequence) -> tuple:
    """Scale a nonzero homogeneous vector to its unique representative.

    The first nonzero entry becomes a positive integer and the rational and
    radical parts of all entries together become coprime integers.
    """
    vs = [Scalar.of(v) for v in values]
    k = next((i for i, v in enumerate(vs) if v), None)
    if k is None:
        raise ValueError("zero vector has no projective meaning")
    pivot = vs[k]
    if pivot != ONE:
        inv = ONE / pivot
        vs = [v * inv if v else v for v in vs]
    den = 1
    for v in vs:
        den = _lcm(den, v.a.denominator)
        den = _lcm(den, v.b.denominator)
    num = 0
    for v in vs:
        num = gcd(num, (v.a * den).numerator)
        num = gcd(num, (v.b * den).numerator)
    f = Fraction(den, num)
    if f != 1:
        vs = [v * f for v in vs]
    return tuple(vs)


class _Homogeneous:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, Scalar)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("expected a homogeneous triple")
        object.__setattr__(self, "coords", canonical(coords))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), (self.coords,))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return 3

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    @property
    def field(self) -> int:
        return common_field(self.coords)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(str(c) for c in self.coords)})"


class PPoint(_Homogeneous):
    """A point of the projective plane."""

    __slots__ = ()

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class PLine(_Homogeneous):
    """A line ``[l, m, n]``: the points with ``l*x + m*y + n*z = 0``."""

    __slots__ = ()

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def contains(self, p: PPoint) -> bool:
        return not la.dot(self.coords, p.coords)


BARY_LINF = PLine(1, 1, 1)
CART_LINF = PLine(0, 0, 1)

Linf = PLine


def incident(p: PPoint, l: PLine) -> bool:
    return not la.dot(p.coords, l.coords)


def join(p: PPoint, q: PPoint) -> PLine:
    c = la.cross(p.coords, q.coords)
    if la.is_zero(c):
        raise CoincidentArguments(f"join of coincident points {p}")
    return PLine(c)


def meet(l: PLine, m: PLine) -> PPoint:
    c = la.cross(l.coords, m.coords)
    if la.is_zero(c):
        raise CoincidentArguments(f"meet of coincident lines {l}")
    return PPoint(c)


def collinear(*points: PPoint) -> bool:
    if len(points) < 3:
        return True
    p, q = points[0], next((x for x in points[1:] if x != points[0]), None)
    if q is None:
        return True
    l = join(p, q)
    return all(incident(x, l) for x in points)


def concurrent(*lines: PLine) -> bool:
    return collinear(*(PPoint(l.coords) for l in lines))


# --- affine chart ---------------------------------------------------------
def weight(p: PPoint, linf: PLine) -> Scalar:
    return la.dot(p.coords, linf.coords)


def is_ordinary(p: PPoint, linf: PLine) -> bool:
    return bool(weight(p, linf))


def normalized(p: PPoint, linf: PLine) -> tuple:
    """Coordinates of ``p`` scaled so that ``linf . p == 1``."""
    w = weight(p, linf)
    if not w:
        raise PointAtInfinity(f"{p} lies on the line at infinity")
    inv = ONE / w
    return tuple(c * inv for c in p.coords)


def affine_combination(terms: Iterable[tuple[object, PPoint]], linf: PLine) -> PPoint:
    """``sum(c_i * p_i)`` of normalized points; the coefficients should sum to 1."""
    acc = (ZERO, ZERO, ZERO)
    for c, p in terms:
        acc = la.add(acc, la.scale(Scalar.of(c), normalized(p, linf)))
    return PPoint(acc)


def midpoint(p: PPoint, q: PPoint, linf: PLine) -> PPoint:
    return PPoint(la.add(normalized(p, linf), normalized(q, linf)))


def reflect_in_point(p: PPoint, c: PPoint, linf: PLine) -> PPoint:
    return PPoint(la.sub(la.scale(2, normalized(c, linf)), normalized(p, linf)))


def direction(p: PPoint, q: PPoint, linf: PLine) -> tuple:
    """The displacement vector ``q - p`` (a vector with zero weight)."""
    return la.sub(normalized(q, linf), normalized(p, linf))


def signed_ratio(a: PPoint, b: PPoint, c: PPoint, linf: PLine) -> Scalar:
    """The scalar ``(b - a) / (c - b)`` along a line, i.e. the signed ratio ``AB/BC``."""
    u = direction(a, b, linf)
    w = direction(b, c, linf)
    if la.is_zero(w):
        raise CoincidentArguments("signed ratio with b == c")
    if not la.is_zero(la.cross(u, w)):
        raise NotCollinear(f"{a}, {b}, {c} are not collinear")
    k = next(i for i, x in enumerate(w) if x)
    return u[k] / w[k]


def parallel(l: PLine, m: PLine, linf: PLine) -> bool:
    return not la.dot(la.cross(l.coords, m.coords), linf.coords)


def parallel_through(p: PPoint, l: PLine, linf: PLine) -> PLine:
    return join(p, meet(l, linf))


def points_on_line(l: PLine) -> tuple[tuple, tuple]:
    """Two independent coordinate vectors of points on ``l``."""
    cands = [la.cross(l.coords, e) for e in la.identity()]
    cands = [c for c in cands if not la.is_zero(c)]
    p = cands[0]
    q = next(c for c in cands[1:] if not la.is_zero(la.cross(p, c)))
    return p, q


# --- conics ---------------------------------------------------------------
_SYM_INDEX = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


class Conic:
    """Symmetric 3x3 form ``M``; the conic is ``{x : x^T M x = 0}``."""

    __slots__ = ("entries",)

    def __init__(self, matrix):
        m = [[Scalar.of(x) for x in row] for row in matrix]
        for i in range(3):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("conic matrix must be symmetric")
        object.__setattr__(self, "entries", canonical([m[i][j] for i, j in _SYM_INDEX]))

    def __setattr__(self, name, value):
        raise AttributeError("Conic is immutable")

    def __reduce__(self):
        return (Conic, (self.matrix,))

    @classmethod
    def from_coefficients(cls, a, b, c, f, g, h) -> Conic:
        """``a x^2 + b y^2 + c z^2 + 2f yz + 2g zx + 2h xy``."""
        return cls(((a, h, g), (h, b, f), (g, f, c)))

    @property
    def matrix(self) -> la.Mat:
        e = dict(zip(_SYM_INDEX, self.entries))
        return tuple(tuple(e[(min(i, j), max(i, j))] for j in range(3)) for i in range(3))

    def __eq__(self, other):
        if not isinstance(other, Conic):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(("Conic", self.entries))

    def __repr__(self):
        return f"Conic({[[str(x) for x in row] for row in self.matrix]})"

    @property
    def field(self) -> int:
        return common_field(self.entries)

    def value(self, p) -> Scalar:
        x = p.coords if isinstance(p, _Homogeneous) else p
        return la.dot(x, la.mat_vec(self.matrix, x))

    def bilinear(self, p, q) -> Scalar:
        x = p.coords if isinstance(p, _Homogeneous) else p
        y = q.coords if isinstance(q, _Homogeneous) else q
        return la.dot(x, la.mat_vec(self.matrix, y))

    def contains(self, p: PPoint) -> bool:
        return not self.value(p)

    __contains__ = contains

    @property
    def det(self) -> Scalar:
        return la.det3(self.matrix)

    @property
    def is_degenerate(self) -> bool:
        return not self.det

    def transformed(self, t: "AffMap | la.Mat") -> Conic:
        """Image of the conic under the point map ``t``."""
        m = t.matrix if isinstance(t, AffMap) else t
        a = la.adj3(m)  # proportional to the inverse
        return Conic(la.mat_mul(la.transpose(a), la.mat_mul(self.matrix, a)))


def _monomials(p: PPoint) -> tuple:
    x, y, z = p.coords
    return (x * x, y * y, z * z, 2 * y * z, 2 * z * x, 2 * x * y)


def conic_from_constraints(rows: Sequence[Sequence]) -> Conic:
    """Conic whose coefficient vector ``(a, b, c, f, g, h)`` spans the null space of ``rows``."""
    basis = la.nullspace(rows, 6)
    if len(basis) != 1:
        raise UnderdeterminedConic(f"constraint system has nullity {len(basis)}")
    return Conic.from_coefficients(*basis[0])


def conic_through_five(*points: PPoint) -> Conic:
    """The unique conic through five points; it may be degenerate (see :attr:`Conic.is_degenerate`)."""
    if len(points) != 5:
        raise ValueError("need exactly five points")
    return conic_from_constraints([_monomials(p) for p in points])


def polar_constraints(p: PPoint, line: PLine) -> list[tuple]:
    """Linear conditions on ``(a, b, c, f, g, h)`` saying the polar of ``p`` is ``line``."""
    x, y, z = p.coords
    # rows of M . p as linear forms in (a, b, c, f, g, h)
    rows = (
        (x, ZERO, ZERO, ZERO, z, y),
        (ZERO, y, ZERO, z, ZERO, x),
        (ZERO, ZERO, z, y, x, ZERO),
    )
    l = line.coords
    # rows[i] * l[j] - rows[j] * l[i] == 0 for independent pairs
    k = next(i for i in range(3) if l[i])
    out = []
    for j in range(3):
        if j != k:
            out.append(tuple(ri * l[k] - rk * l[j] for ri, rk in zip(rows[j], rows[k])))
    return out


def center_constraints(center: PPoint, linf: PLine) -> list[tuple]:
    """The center is the pole of the line at infinity."""
    return polar_constraints(center, linf)


def conic_with_center(center: PPoint, points: Sequence[PPoint], linf: PLine) -> Conic:
    """The conic with the given center passing through three given points."""
    rows = [_monomials(p) for p in points] + center_constraints(center, linf)
    return conic_from_constraints(rows)


def center(c: Conic, linf: PLine) -> PPoint:
    if c.is_degenerate:
        raise DegenerateConic("degenerate conic has no center")
    z = PPoint(la.mat_vec(la.adj3(c.matrix), linf.coords))
    if not is_ordinary(z, linf):
        raise CenterAtInfinity("conic is a parabola in this chart")
    return z


def polar(p: PPoint, c: Conic) -> PLine:
    if c.is_degenerate:
        raise DegenerateConic("polar with respect to a degenerate conic")
    return PLine(la.mat_vec(c.matrix, p.coords))


def pole(l: PLine, c: Conic) -> PPoint:
    if c.is_degenerate:
        raise DegenerateConic("pole with respect to a degenerate conic")
    return PPoint(la.mat_vec(la.adj3(c.matrix), l.coords))


def tangent_at(p: PPoint, c: Conic) -> PLine:
    if not c.contains(p):
        raise PointNotOnConic(f"{p} is not on the conic")
    return polar(p, c)


def is_tangent(l: PLine, c: Conic) -> bool:
    """A line is tangent to a non-degenerate conic iff its pole lies on it."""
    return incident(pole(l, c), l)


def conjugate(p: PPoint, q: PPoint, c: Conic) -> bool:
    return not c.bilinear(p, q)


def is_ellipse_type(c: Conic, linf: PLine) -> bool:
    """True when the conic has no real points at infinity (an ellipse in this chart)."""
    u, w = points_on_line(linf)
    g11, g12, g22 = c.bilinear(u, u), c.bilinear(u, w), c.bilinear(w, w)
    return sign(g12 * g12 - g11 * g22) < 0


def line_conic_intersect(l: PLine, c: Conic) -> list[PPoint]:
    """Real intersections of a line with a non-degenerate conic.

    Returns zero, one (tangency) or two points; a non-square discriminant puts
    the points in a quadratic extension of the inputs' field.
    """
    if c.is_degenerate:
        raise DegenerateConic("line intersection with a degenerate conic")
    field = common_field(l.coords + c.entries)
    p, q = points_on_line(l)
    alpha, beta, gamma = c.bilinear(p, p), c.bilinear(p, q), c.bilinear(q, q)
    disc = beta * beta - alpha * gamma
    s = sign(disc)
    if s < 0:
        return []
    root = disc.sqrt(field) if s > 0 else ZERO
    # points s*p + t*q with alpha s^2 + 2 beta s t + gamma t^2 = 0
    if gamma:
        sols = [(gamma, -beta + root), (gamma, -beta - root)]
    elif alpha:
        sols = [(-beta + root, alpha), (-beta - root, alpha)]
    else:
        sols = [(ONE, ZERO), (ZERO, ONE)]
    pts = []
    for sv, tv in sols:
        v = la.add(la.scale(sv, p), la.scale(tv, q))
        if not la.is_zero(v):
            pt = PPoint(v)
            if pt not in pts:
                pts.append(pt)
    return sorted(pts, key=lambda pt: _sort_key(pt.coords))


def _sort_key(coords):
    return tuple(_Ordered(x) for x in coords)


class _Ordered:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v

    def __eq__(self, other):
        return self.v == other.v


def conic_conic_intersect_shared_infinity(c1: Conic, c2: Conic, linf: PLine) -> list[PPoint]:
    """Ordinary common points of two conics inducing the same involution on ``linf``.

    Some member of the pencil ``c1 - t c2`` splits as ``linf`` plus a second
    line (the radical line); the common points are that line's meets with ``c1``.
    """
    if c1.is_degenerate or c2.is_degenerate:
        raise DegenerateConic("conic intersection needs non-degenerate conics")
    u, w = points_on_line(linf)
    g1 = (c1.bilinear(u, u), c1.bilinear(u, w), c1.bilinear(w, w))
    g2 = (c2.bilinear(u, u), c2.bilinear(u, w), c2.bilinear(w, w))
    k = next(i for i, x in enumerate(g2) if x)
    t = g1[k] / g2[k]
    if any(a != t * b for a, b in zip(g1, g2)):
        raise NoSharedInvolution("the conics induce different involutions on the line at infinity")
    n = la.mat_sub(c1.matrix, la.mat_scale(t, c2.matrix))
    if all(not x for row in n for x in row):
        raise CoincidentArguments("the two conics coincide")
    lk = next(i for i, x in enumerate(linf.coords) if x)
    p0 = tuple(ONE / linf.coords[lk] if i == lk else ZERO for i in range(3))
    np0 = la.mat_vec(n, p0)
    m = la.sub(np0, la.scale(la.dot(p0, np0) / 2, linf.coords))
    if la.is_zero(la.cross(m, linf.coords)):
        return []
    return line_conic_intersect(PLine(m), c1)


def interior(p: PPoint, c: Conic, linf: PLine) -> bool:
    """Whether ``p`` is strictly inside a central conic (same side as its center)."""
    z = center(c, linf)
    if not is_ordinary(p, linf):
        raise PointAtInfinity(f"{p} lies on the line at infinity")
    return sign(c.value(p)) == sign(c.value(z)) != 0


# --- affine maps ----------------------------------------------------------
class AffMap:
    """Invertible projective map that preserves a designated line at infinity."""

    __slots__ = ("matrix", "linf")

    def __init__(self, matrix, linf: PLine):
        m = la.mat(matrix)
        flat = canonical([x for row in m for x in row])
        m = tuple(tuple(flat[3 * i : 3 * i + 3]) for i in range(3))
        if not la.det3(m):
            raise ValueError("affine map matrix is singular")
        row = la.mat_vec(la.transpose(m), linf.coords)
        if not la.is_zero(la.cross(row, linf.coords)):
            raise ValueError("matrix does not preserve the line at infinity")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "linf", linf)

    def __setattr__(self, name, value):
        raise AttributeError("AffMap is immutable")

    def __reduce__(self):
        return (AffMap, (self.matrix, self.linf))

    def __eq__(self, other):
        if not isinstance(other, AffMap):
            return NotImplemented
        return self.matrix == other.matrix and self.linf == other.linf

    def __hash__(self):
        return hash((self.matrix, self.linf))

    def __repr__(self):
        return f"AffMap({[[str(x) for x in row] for row in self.matrix]})"

    @classmethod
    def identity(cls, linf: PLine) -> AffMap:
        return cls(la.identity(), linf)

    def __call__(self, p: PPoint) -> PPoint:
        return PPoint(la.mat_vec(self.matrix, p.coords))

    def apply_line(self, l: PLine) -> PLine:
        return PLine(la.mat_vec(la.transpose(la.adj3(self.matrix)), l.coords))

    def apply_conic(self, c: Conic) -> Conic:
        return c.transformed(self.matrix)

    def __matmul__(self, other: AffMap) -> AffMap:
        """Composition: ``(f @ g)(p) == f(g(p))``."""
        return AffMap(la.mat_mul(self.matrix, other.matrix), self.linf)

    def inverse(self) -> AffMap:
        return AffMap(la.adj3(self.matrix), self.linf)

    def equals_map(self, other: AffMap) -> bool:
        return self.matrix == other.matrix


def half_turn(c: PPoint, linf: PLine) -> AffMap:
    """Point reflection ``x -> 2c - x``."""
    cn = normalized(c, linf)
    m = [[2 * cn[i] * linf.coords[j] - (ONE if i == j else ZERO) for j in range(3)] for i in range(3)]
    return AffMap(m, linf)


def homothety(k, c: PPoint, linf: PLine) -> AffMap:
    """``x -> c + k (x - c)``."""
    k = Scalar.of(k)
    cn = normalized(c, linf)
    m = [
        [(1 - k) * cn[i] * linf.coords[j] + (k if i == j else ZERO) for j in range(3)]
        for i in range(3)
    ]
    return AffMap(m, linf)


def affine_map_from_triangles(src: Sequence[PPoint], dst: Sequence[PPoint], linf: PLine) -> AffMap:
    """The unique affine map sending ``src[i]`` to ``dst[i]``."""
    for tri in (src, dst):
        if collinear(*tri):
            raise CollinearTriple("triangle vertices are collinear")
    s = la.transpose([normalized(p, linf) for p in src])
    d = la.transpose([normalized(p, linf) for p in dst])
    return AffMap(la.mat_mul(d, la.adj3(s)), linf)


# --- dilatation classes ---------------------------------------------------
@dataclass(frozen=True)
class Identity:
    def describe(self) -> str:
        return "identity"


@dataclass(frozen=True)
class Translation:
    direction: PPoint

    def describe(self) -> str:
        return f"translation along {self.direction}"


@dataclass(frozen=True)
class Homothety:
    ratio: Scalar
    center: PPoint

    def describe(self) -> str:
        return f"homothety with ratio {self.ratio} about {self.center}"


@dataclass(frozen=True)
class HalfTurn:
    center: PPoint

    @property
    def ratio(self) -> Scalar:
        return Scalar.of(-1)

    def describe(self) -> str:
        return f"half-turn about {self.center}"


@dataclass(frozen=True)
class NotDilatation:
    def describe(self) -> str:
        return "not a dilatation"


DilatationClass = Union[Identity, Translation, Homothety, HalfTurn, NotDilatation]


def make_homothety(k, c: PPoint) -> DilatationClass:
    k = Scalar.of(k)
    if k == -1:
        return HalfTurn(c)
    if k == 1:
        return Identity()
    return Homothety(k, c)


def classify_dilatation(t: AffMap, linf: PLine) -> DilatationClass:
    m = t.matrix
    u, w = points_on_line(linf)
    tu, tw = la.mat_vec(m, u), la.mat_vec(m, w)
    if not (la.is_zero(la.cross(tu, u)) and la.is_zero(la.cross(tw, w))):
        return NotDilatation()
    ku = next(i for i, x in enumerate(u) if x)
    kw = next(i for i, x in enumerate(w) if x)
    lam = tu[ku] / u[ku]
    if tw[kw] / w[kw] != lam:
        return NotDilatation()
    # linf^T T = mu linf^T
    row = la.mat_vec(la.transpose(m), linf.coords)
    kl = next(i for i, x in enumerate(linf.coords) if x)
    mu = row[kl] / linf.coords[kl]
    k = lam / mu
    if k == 1:
        p0 = tuple(ONE / linf.coords[kl] if i == kl else ZERO for i in range(3))
        shift = la.sub(la.scale(ONE / mu, la.mat_vec(m, p0)), p0)
        if la.is_zero(shift):
            return Identity()
        return Translation(PPoint(shift))
    fixed = la.mat_sub(m, la.mat_scale(mu, la.identity()))
    null = la.nullspace(fixed, 3)
    return make_homothety(k, PPoint(null[0]))
