"""Square-on-circle construction of the half-turn locus.

The scene lives in the Cartesian chart: the unit circle centered at
``Z1 = (0, 0)`` with the square ``Q1 Z1 P1' O1``.  Every point ``A1`` on the
arc ``P1 Q1 Q1' P1'`` completes to a unique triangle ``A1 B1 C1`` inscribed in
the circle with centroid ``G1``; the affine map taking that triangle to the
reference triangle carries ``P1`` and ``P1'`` onto the cubic locus.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import CollinearTriple, InternalInconsistency, OutsideArc, PointNotOnConic
from .field import ONE, Scalar, common_field
from .projective import (
    CART_LINF,
    Conic,
    HalfTurn,
    PPoint,
    affine_combination,
    conic_conic_intersect_shared_infinity,
    conic_with_center,
    direction,
    half_turn,
    incident,
    interior,
    is_ellipse_type,
    join,
    meet,
    midpoint,
    normalized,
    parallel,
    signed_ratio,
    tangent_at,
)

LINF = CART_LINF
UNIT_CIRCLE = Conic(((1, 0, 0), (0, 1, 0), (0, 0, -1)))


def pt(x, y) -> PPoint:
    return PPoint(Scalar.of(x), Scalar.of(y), ONE)


def xy(p: PPoint) -> tuple[Scalar, Scalar]:
    x, y, _ = normalized(p, LINF)
    return x, y


def complement_about(g: PPoint, x: PPoint) -> PPoint:
    """Homothety about ``g`` with ratio -1/2."""
    return affine_combination([(Fraction(3, 2), g), (Fraction(-1, 2), x)], LINF)


def reflect_across_line(p: PPoint, a: PPoint, b: PPoint) -> PPoint:
    """Euclidean reflection of ``p`` in the line ``ab``."""
    ax, ay = xy(a)
    dx, dy = direction(a, b, LINF)[:2]
    px, py = xy(p)
    wx, wy = px - ax, py - ay
    n2 = dx * dx + dy * dy
    proj = (wx * dx + wy * dy) / n2
    return pt(ax + 2 * proj * dx - wx, ay + 2 * proj * dy - wy)


@dataclass(frozen=True)
class Scene:
    circle: Conic
    Z1: PPoint
    Q1: PPoint
    P1_prime: PPoint
    O1: PPoint
    S1: PPoint
    G1: PPoint
    P1: PPoint
    Q1_prime: PPoint
    V1: PPoint

    def marked_points(self) -> dict[str, PPoint]:
        return {
            "P1": self.P1,
            "Q1": self.Q1,
            "Q1'": self.Q1_prime,
            "P1'": self.P1_prime,
            "O1": self.O1,
            "S1": self.S1,
            "G1": self.G1,
            "V1": self.V1,
            "Z1": self.Z1,
        }


def make_scene() -> Scene:
    z, q, pp, o = pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)
    s = midpoint(o, q, LINF)
    g = meet(join(s, z), join(q, pp))
    p = reflect_across_line(pp, g, z)
    qp = reflect_across_line(q, g, z)
    v = meet(join(p, q), join(pp, qp))
    return Scene(UNIT_CIRCLE, z, q, pp, o, s, g, p, qp, v)


SCENE = make_scene()


def scene_checks(scene: Scene = SCENE) -> dict[str, bool]:
    sc = scene
    k = lambda x: complement_about(sc.G1, x)  # noqa: E731
    return {
        "QZP'O is a square": midpoint(sc.Q1, sc.P1_prime, LINF) == midpoint(sc.Z1, sc.O1, LINF)
        and _dot(sc.Z1, sc.Q1, sc.Z1, sc.P1_prime) == 0
        and _dot(sc.Z1, sc.Q1, sc.Z1, sc.Q1) == _dot(sc.Z1, sc.P1_prime, sc.Z1, sc.P1_prime),
        "P, Q, Q', P' on circle": all(sc.circle.contains(x) for x in (sc.P1, sc.Q1, sc.Q1_prime, sc.P1_prime)),
        "S = midpoint(O, Q)": sc.S1 == midpoint(sc.O1, sc.Q1, LINF),
        "G on SZ and QP'": incident(sc.G1, join(sc.S1, sc.Z1)) and incident(sc.G1, join(sc.Q1, sc.P1_prime)),
        "ZG/GS = 2": signed_ratio(sc.Z1, sc.G1, sc.S1, LINF) == 2,
        "ZG/GV = 5/4": signed_ratio(sc.Z1, sc.G1, sc.V1, LINF) == Scalar.of(5) / 4,
        "V on GZ": incident(sc.V1, join(sc.G1, sc.Z1)),
        "K(Z) = S": k(sc.Z1) == sc.S1,
        "K(P') = Q": k(sc.P1_prime) == sc.Q1,
        "K(P) = Q'": k(sc.P1) == sc.Q1_prime,
        "K(V) = midpoint(P, P')": k(sc.V1) == midpoint(sc.P1, sc.P1_prime, LINF),
        "Q = midpoint(V, P)": sc.Q1 == midpoint(sc.V1, sc.P1, LINF),
        "Q' = midpoint(V, P')": sc.Q1_prime == midpoint(sc.V1, sc.P1_prime, LINF),
        "OQ tangent at Q": join(sc.O1, sc.Q1) == tangent_at(sc.Q1, sc.circle),
        "OP' tangent at P'": join(sc.O1, sc.P1_prime) == tangent_at(sc.P1_prime, sc.circle),
    }


def _dot(a, b, c, d) -> Scalar:
    u, w = direction(a, b, LINF), direction(c, d, LINF)
    return u[0] * w[0] + u[1] * w[1]


# --- the arc ---------------------------------------------------------------
ARC_START, ARC_END = Fraction(-1, 3), Fraction(1)
MARKED_PARAMS = {Fraction(-1, 3): "P1", Fraction(0): "Q1", Fraction(1, 2): "Q1'", Fraction(1): "P1'"}


def arc_param(t) -> PPoint:
    """Rational parametrization of the unit circle by ``t = tan(theta/2)``."""
    t = Fraction(t)
    return pt((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def on_open_arc(a: PPoint, scene: Scene = SCENE) -> bool:
    """``a`` on the circle with ``K(a)`` strictly inside it, and not one of the marked points."""
    if not scene.circle.contains(a):
        return False
    if a in (scene.P1, scene.Q1, scene.Q1_prime, scene.P1_prime):
        return False
    return interior(complement_about(scene.G1, a), scene.circle, LINF)


def arc_contains(t) -> bool:
    t = Fraction(t)
    by_param = ARC_START < t < ARC_END and t not in MARKED_PARAMS
    if t not in MARKED_PARAMS and by_param != on_open_arc(arc_param(t)):
        raise InternalInconsistency(f"arc membership disagrees with interiority at t={t}")
    return by_param


def _xy_key(p: PPoint):
    x, y = xy(p)
    return (_Key(x), _Key(y))


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v

    def __eq__(self, other):
        return self.v == other.v


def inscribe_with_centroid(a: PPoint, scene: Scene = SCENE) -> tuple[PPoint, PPoint]:
    """The two other vertices of the triangle inscribed in the circle with centroid ``G1``.

    ``B1`` is the one with the lexicographically smaller ``(x, y)``.
    """
    if not scene.circle.contains(a):
        raise PointNotOnConic(f"{a} is not on the circle")
    if a in (scene.P1, scene.Q1, scene.Q1_prime, scene.P1_prime):
        raise OutsideArc(f"{a} is one of the excluded marked points")
    d0 = complement_about(scene.G1, a)
    if not interior(d0, scene.circle, LINF):
        raise OutsideArc(f"{a} is not on the open arc P1 Q1 Q1' P1'")
    reflected = half_turn(d0, LINF).apply_conic(scene.circle)
    pts = conic_conic_intersect_shared_infinity(scene.circle, reflected, LINF)
    if len(pts) != 2:
        raise InternalInconsistency(f"expected two intersections, found {len(pts)}")
    b, c = sorted(pts, key=_xy_key)
    if midpoint(b, c, LINF) != d0:
        raise InternalInconsistency("midpoint of BC is not K(A)")
    if centroid(a, b, c) != scene.G1:
        raise InternalInconsistency("centroid check failed")
    if not (on_open_arc(b, scene) and on_open_arc(c, scene)):
        raise InternalInconsistency("B or C left the arc")
    return b, c


def centroid(a: PPoint, b: PPoint, c: PPoint) -> PPoint:
    third = Fraction(1, 3)
    return affine_combination([(third, a), (third, b), (third, c)], LINF)


def transport(triangle: tuple[PPoint, PPoint, PPoint], x: PPoint) -> PPoint:
    """Barycentric coordinates of ``x`` relative to ``triangle`` (the image of ``x`` under the map onto ABC)."""
    cols = la.transpose([normalized(v, LINF) for v in triangle])
    det = la.det3(cols)
    if not det:
        raise CollinearTriple("triangle is degenerate")
    return PPoint(la.mat_vec(la.adj3(cols), normalized(x, LINF)))


@dataclass(frozen=True)
class LocusSample:
    t: Fraction
    triangle: tuple[PPoint, PPoint, PPoint]
    d: int
    P: PPoint
    P_prime: PPoint
    P_swapped: PPoint | None = None
    P_prime_swapped: PPoint | None = None

    @property
    def both_orientations(self) -> bool:
        return self.P_swapped is not None

    def points(self) -> list[PPoint]:
        return [p for p in (self.P, self.P_prime, self.P_swapped, self.P_prime_swapped) if p is not None]


def sample_at(t, orientation: str = "both", scene: Scene = SCENE) -> LocusSample:
    if orientation not in ("both", "primary"):
        raise ValueError("orientation must be 'both' or 'primary'")
    t = Fraction(t)
    a = arc_param(t)
    b, c = inscribe_with_centroid(a, scene)
    tri = (a, b, c)
    p = transport(tri, scene.P1)
    pp = transport(tri, scene.P1_prime)
    ps = pps = None
    if orientation == "both":
        swapped = (a, c, b)
        ps = transport(swapped, scene.P1)
        pps = transport(swapped, scene.P1_prime)
    d = common_field([x for v in tri for x in v.coords])
    return LocusSample(t, tri, d, p, pp, ps, pps)


def parameters(n: int) -> list[Fraction]:
    """``n`` parameters evenly spread over the open arc, nudged off the marked points."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = []
    for i in range(n):
        t = Fraction(4 * i + 2 - n, 3 * n)
        if t in MARKED_PARAMS:
            t += Fraction(1, 12 * n)
        out.append(t)
    return out


def sample_locus(n: int, orientation: str = "both", scene: Scene = SCENE) -> list[LocusSample]:
    return [sample_at(t, orientation, scene) for t in parameters(n)]


def verify_sample(sample: LocusSample, classify: bool = True) -> dict[str, bool]:
    """Membership, centroid, negation and half-turn checks for one sample."""
    from . import locus, triangle

    a, b, c = sample.triangle
    out = {
        "vertices on circle": all(SCENE.circle.contains(v) for v in sample.triangle),
        "centroid is G1": centroid(a, b, c) == SCENE.G1,
        "transported points on curve": all(locus.on_curve(p) for p in sample.points()),
        "exterior to K^-1(ABC)": not any(
            triangle.interior_to_anticomplementary(p) for p in sample.points()
        ),
        "P' is the isotomic conjugate of P": triangle.isotomic(sample.P) == sample.P_prime,
    }
    if sample.both_orientations:
        out["swapped orientation gives -P"] = locus.neg(sample.P) == sample.P_swapped
        out["chord P P~ parallel to BC"] = (
            meet(join(sample.P, sample.P_swapped), triangle.LINF) == triangle.A_INF
        )
    if classify:
        out["M is a half-turn"] = all(
            isinstance(triangle.classify_M(triangle.build_config(p)), HalfTurn) for p in sample.points()
        )
    return out


# --- the conic determined by G, V, Z, P -------------------------------------
@dataclass(frozen=True)
class GVZData:
    G: PPoint
    V: PPoint
    Z: PPoint
    P: PPoint

    @property
    def Q_prime(self) -> PPoint:
        return complement_about(self.G, self.P)

    @property
    def P_prime(self) -> PPoint:
        return affine_combination([(2, self.Q_prime), (-1, self.V)], LINF)

    @property
    def Q(self) -> PPoint:
        return midpoint(self.P, self.V, LINF)


def gvz_data(z, v, p) -> GVZData:
    """Data with ``ZG/GV = 5/4``: ``G = (4Z + 5V)/9``."""
    z, v, p = pt(*z), pt(*v), pt(*p)
    g = affine_combination([(Fraction(4, 9), z), (Fraction(5, 9), v)], LINF)
    if incident(p, join(g, z)):
        raise CollinearTriple("P must not lie on GZ")
    return GVZData(g, v, z, p)


def gvz_conic(data: GVZData) -> Conic:
    """The conic centered at ``Z`` through ``P``, ``P'`` and ``Q``."""
    return conic_with_center(data.Z, [data.P, data.P_prime, data.Q], LINF)


def gvz_checks(data: GVZData) -> dict[str, bool]:
    conic = gvz_conic(data)
    tq = tangent_at(data.Q, conic)
    kz = complement_about(data.G, data.Z)
    return {
        "Q' on the conic": conic.contains(data.Q_prime),
        "conic is an ellipse": is_ellipse_type(conic, LINF),
        "ZG/GV = 5/4": signed_ratio(data.Z, data.G, data.V, LINF) == Scalar.of(5) / 4,
        "tangent at Q parallel to P'Z": parallel(tq, join(data.P_prime, data.Z), LINF),
        "tangent at Q through K(Z)": incident(kz, tq),
    }
