"""The reference triangle ABC in barycentric coordinates and everything built from a point P.

``build_config(P)`` returns a :class:`TriangleConfig` holding the isotomic
conjugate ``P'``, the complements ``Q = K(P')`` and ``Q' = K(P)``, the cevian
maps ``T_P`` and ``T_P'``, the generalized circumcenters ``O`` and ``O'``, the
inconic, the circumconics, the nine-point conics and the cevian conic, and the
dilatation ``M = T_P K^-1 T_P'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import linalg as la
from .errors import (
    DegenerateAxis,
    GeometryError,
    HypothesisViolated,
    InternalInconsistency,
    PointAtInfinity,
    PointOnAnticomplementarySide,
    PointOnSideline,
)
from .field import ONE, Scalar
from .projective import (
    BARY_LINF,
    AffMap,
    Conic,
    DilatationClass,
    HalfTurn,
    NotDilatation,
    PLine,
    PPoint,
    Translation,
    affine_map_from_triangles,
    center,
    classify_dilatation,
    conic_from_constraints,
    conic_through_five,
    conic_with_center,
    direction,
    half_turn,
    incident,
    is_tangent,
    join,
    meet,
    midpoint,
    parallel_through,
    polar,
    polar_constraints,
    signed_ratio,
    tangent_at,
)

LINF = BARY_LINF
A = PPoint(1, 0, 0)
B = PPoint(0, 1, 0)
C = PPoint(0, 0, 1)
G = PPoint(1, 1, 1)
VERTICES = (A, B, C)
A_INF = PPoint(0, 1, -1)
B_INF = PPoint(1, 0, -1)
C_INF = PPoint(1, -1, 0)
SIDE_BC, SIDE_CA, SIDE_AB = PLine(1, 0, 0), PLine(0, 1, 0), PLine(0, 0, 1)

K = AffMap(((0, 1, 1), (1, 0, 1), (1, 1, 0)), LINF)
K_INV = AffMap(((-1, 1, 1), (1, -1, 1), (1, 1, -1)), LINF)


def complement(p: PPoint) -> PPoint:
    x, y, z = p
    return PPoint(y + z, z + x, x + y)


def anticomplement(p: PPoint) -> PPoint:
    x, y, z = p
    return PPoint(y + z - x, z + x - y, x + y - z)


def isotomic(p: PPoint) -> PPoint:
    x, y, z = p
    if not (x and y and z):
        raise PointOnSideline(f"{p} lies on a side of ABC")
    return PPoint(y * z, z * x, x * y)


def cevian_traces(p: PPoint) -> tuple[PPoint, PPoint, PPoint]:
    x, y, z = p
    if not (x and y and z):
        raise PointOnSideline(f"{p} lies on a side of ABC")
    return PPoint(0, y, z), PPoint(x, 0, z), PPoint(x, y, 0)


def cevian_map(p: PPoint) -> AffMap:
    """The affine map taking ABC to the cevian triangle of ``p``."""
    return affine_map_from_triangles(VERTICES, cevian_traces(p), LINF)


def on_steiner_circumellipse(p: PPoint) -> bool:
    x, y, z = p
    return not (x * y + y * z + z * x)


def on_median(p: PPoint) -> bool:
    x, y, z = p
    return not ((y - z) * (z - x) * (x - y))


def interior_to_anticomplementary(p: PPoint) -> bool:
    """Strictly inside the triangle ``K^-1(ABC)``.

    Barycentrics of ``p`` relative to ``K^-1(ABC)`` are the barycentrics of
    ``K(p)`` relative to ABC, so interiority means ``y+z, z+x, x+y`` all share
    the sign of ``x+y+z``.
    """
    x, y, z = p
    s = (x + y + z).sign()
    return s != 0 and all((c.sign() == s) for c in (y + z, z + x, x + y))


def s_formula(p: PPoint) -> PPoint:
    x, y, z = p
    return PPoint(x * (y + z) ** 2, y * (x + z) ** 2, z * (x + y) ** 2)


def z_formula(p: PPoint) -> PPoint:
    x, y, z = p
    return PPoint(x * (y - z) ** 2, y * (z - x) ** 2, z * (x - y) ** 2)


def nine_point_conic(x: PPoint) -> Conic:
    """Conic through the six side-midpoints and the diagonal points of quadrangle ``ABCX``.

    Built from five midpoints; the other four points are checked.
    """
    mids = [midpoint(B, C, LINF), midpoint(C, A, LINF), midpoint(A, B, LINF)]
    mids += [midpoint(v, x, LINF) for v in VERTICES]
    conic = conic_through_five(*mids[:5])
    for extra in (mids[5], *cevian_traces(x)):
        if not conic.contains(extra):
            raise InternalInconsistency(f"nine-point conic misses {extra}")
    return conic


def inconic(p: PPoint) -> Conic:
    """Conic tangent to BC, CA, AB at the traces of ``p``: six linear tangency conditions."""
    d, e, f = cevian_traces(p)
    rows = []
    for trace, side in ((d, SIDE_BC), (e, SIDE_CA), (f, SIDE_AB)):
        rows += polar_constraints(trace, side)
    return conic_from_constraints(rows)


def circumconic_with_center(o: PPoint) -> Conic:
    return conic_with_center(o, VERTICES, LINF)


def _maybe(fn):
    try:
        return fn()
    except (GeometryError, ZeroDivisionError):
        return None


def _same_map(f: AffMap, g: AffMap) -> bool:
    return f.matrix == g.matrix


class TriangleConfig:
    """All objects derived from the reference triangle and a point ``P``.

    Points and maps are computed up front; conics and the points derived from
    them are computed on first access.  Quantities that do not exist for a
    degenerate ``P`` (on a median or the Steiner circumellipse) are ``None``.
    """

    def __init__(self, p: PPoint):
        x, y, z = p
        if not (x + y + z):
            raise PointAtInfinity(f"{p} lies on the line at infinity")
        if not (x and y and z):
            raise PointOnSideline(f"{p} lies on a side of ABC")
        if not ((y + z) * (z + x) * (x + y)):
            raise PointOnAnticomplementarySide(f"{p} lies on a side of K^-1(ABC)")
        self.P = p
        self.P_prime = isotomic(p)
        self.Q = complement(self.P_prime)
        self.Q_prime = complement(p)
        self.DEF = cevian_traces(p)
        self.D0E0F0 = cevian_traces(G)
        self.D2E2F2 = cevian_traces(self.Q)
        self.D3E3F3 = cevian_traces(self.P_prime)
        self.T_P = affine_map_from_triangles(VERTICES, self.DEF, LINF)
        self.T_P_prime = affine_map_from_triangles(VERTICES, self.D3E3F3, LINF)
        self.M = self.T_P @ K_INV @ self.T_P_prime
        self.lam = self.T_P_prime @ self.T_P.inverse()
        self.O = self.T_P_prime.inverse()(complement(self.Q))
        self.O_prime = self.T_P.inverse()(complement(self.Q_prime))
        self.H = anticomplement(self.O)
        self.H_prime = anticomplement(self.O_prime)
        self.N = complement(self.O)
        self.N_prime = complement(self.O_prime)
        self.flags = {
            "on_median": on_median(p),
            "on_steiner": on_steiner_circumellipse(p),
            "h_at_vertex": self.H in VERTICES,
            # the symmetric condition for P'; not part of the checked hypotheses
            "h_prime_at_vertex": self.H_prime in VERTICES,
        }

    @property
    def G(self) -> PPoint:
        return G

    @property
    def field(self) -> int:
        return self.P.field

    # --- derived points -------------------------------------------------
    @cached_property
    def V(self) -> PPoint | None:
        return _maybe(lambda: meet(join(self.P, self.Q), join(self.P_prime, self.Q_prime)))

    @cached_property
    def S(self) -> PPoint | None:
        if self.V is None:
            return None
        return _maybe(lambda: meet(join(self.O, self.Q), join(G, self.V)))

    @cached_property
    def Z(self) -> PPoint | None:
        if self.cevian_conic is None:
            return None
        return _maybe(lambda: center(self.cevian_conic, LINF))

    @cached_property
    def Z_tilde(self) -> PPoint | None:
        if self.Z is None:
            return None
        return _maybe(lambda: half_turn(self.O, LINF)(anticomplement(self.Z)))

    # --- conics ---------------------------------------------------------
    @cached_property
    def inconic(self) -> Conic:
        return inconic(self.P)

    @cached_property
    def nine_point_P(self) -> Conic | None:
        return _maybe(lambda: nine_point_conic(self.P))

    @cached_property
    def nine_point_P_prime(self) -> Conic | None:
        return _maybe(lambda: nine_point_conic(self.P_prime))

    def _circumconic(self, cevian: AffMap, npc: Conic | None, o: PPoint) -> Conic | None:
        by_center = _maybe(lambda: circumconic_with_center(o))
        if npc is None:
            return by_center
        by_definition = cevian.inverse().apply_conic(npc)
        if by_center is not None and by_center != by_definition:
            raise InternalInconsistency("circumconic routes disagree")
        return by_definition

    @cached_property
    def circumconic_O(self) -> Conic | None:
        return self._circumconic(self.T_P_prime, self.nine_point_P_prime, self.O)

    @cached_property
    def circumconic_O_prime(self) -> Conic | None:
        return self._circumconic(self.T_P, self.nine_point_P, self.O_prime)

    @cached_property
    def cevian_conic(self) -> Conic | None:
        return _maybe(lambda: conic_through_five(A, B, C, self.P, self.Q))

    # --- maps -----------------------------------------------------------
    @cached_property
    def eta(self) -> AffMap:
        """Harmonic homology with axis GZ and center ``PP' . l_inf``."""
        if self.flags["on_median"] or self.Z is None or self.Z == G:
            raise DegenerateAxis("P lies on a median; GZ is undefined")
        axis = join(G, self.Z).coords
        ctr = meet(join(self.P, self.P_prime), LINF).coords
        ac = la.dot(axis, ctr)
        if not ac:
            raise DegenerateAxis("homology center lies on its axis")
        m = [
            [(ac if i == j else 0) - 2 * ctr[i] * axis[j] for j in range(3)]
            for i in range(3)
        ]
        return AffMap(m, LINF)

    @cached_property
    def M_class(self) -> DilatationClass:
        return classify_dilatation(self.M, LINF)


def build_config(p: PPoint) -> TriangleConfig:
    return TriangleConfig(p)


def segment_ratio(t: AffMap) -> Scalar:
    """Ratio ``|t(A)t(B)| / |AB|`` with sign, read off the images of two vertices."""
    u = direction(A, B, LINF)
    w = direction(t(A), t(B), LINF)
    if not la.is_zero(la.cross(u, w)):
        raise InternalInconsistency("map does not preserve the direction of AB")
    k = next(i for i, x in enumerate(u) if x)
    return w[k] / u[k]


def classify_M(cfg: TriangleConfig) -> DilatationClass:
    """Classify ``M`` and cross-check it against the reversed composite and a segment ratio."""
    cls = cfg.M_class
    swapped = cfg.T_P_prime @ K_INV @ cfg.T_P
    if not _same_map(swapped, cfg.M):
        raise InternalInconsistency("M is not symmetric in P and P'")
    if isinstance(cls, NotDilatation):
        raise InternalInconsistency("M is not a dilatation")
    ratio = segment_ratio(cfg.M)
    expected = ONE if isinstance(cls, Translation) or not hasattr(cls, "ratio") else cls.ratio
    if ratio != expected:
        raise InternalInconsistency(f"dilatation ratio {expected} but segment ratio {ratio}")
    return cls


# --- half-turn equivalences -------------------------------------------------
CONDITION_LABELS = {
    "1": "M is a half-turn",
    "2": "P lies on the circumconic centered at O'",
    "3": "P' lies on the circumconic centered at O",
    "4": "T_P(P) = O'",
    "5": "T_P'(P') = O",
    "6": "O' lies on the nine-point conic of ABCP",
    "7": "O lies on the nine-point conic of ABCP'",
    "C": "K^-1(S) = Z",
    "C'": "QZP'O is a parallelogram",
}


@dataclass
class HalfTurnReport:
    classification: DilatationClass
    conditions: dict[str, bool]
    extras: dict[str, bool] = field(default_factory=dict)
    ratios: dict[str, Scalar] = field(default_factory=dict)
    caveats: list[str] = field(default_factory=list)

    @property
    def is_half_turn(self) -> bool:
        return self.conditions["1"]

    @property
    def equivalence_holds(self) -> bool:
        vals = [self.conditions[k] for k in "1234567"]
        return all(vals) or not any(vals)


def check_hypotheses(cfg: TriangleConfig) -> None:
    for flag in ("on_median", "on_steiner", "h_at_vertex"):
        if cfg.flags[flag]:
            raise HypothesisViolated(flag)


def halfturn_report(cfg: TriangleConfig) -> HalfTurnReport:
    """Evaluate each equivalent condition for ``M`` to be a half-turn, independently."""
    check_hypotheses(cfg)
    cls = classify_M(cfg)
    conds = {
        "1": isinstance(cls, HalfTurn),
        "2": cfg.circumconic_O_prime.contains(cfg.P),
        "3": cfg.circumconic_O.contains(cfg.P_prime),
        "4": cfg.T_P(cfg.P) == cfg.O_prime,
        "5": cfg.T_P_prime(cfg.P_prime) == cfg.O,
        "6": cfg.nine_point_P.contains(cfg.O_prime),
        "7": cfg.nine_point_P_prime.contains(cfg.O),
        "C": anticomplement(cfg.S) == cfg.Z,
        "C'": midpoint(cfg.Q, cfg.P_prime, LINF) == midpoint(cfg.Z, cfg.O, LINF),
    }
    report = HalfTurnReport(cls, conds, caveats=[f for f in ("h_prime_at_vertex",) if cfg.flags[f]])
    if conds["1"]:
        cp = cfg.cevian_conic
        report.extras = {
            "center is S": cls.center == cfg.S,
            "O'P tangent at P": join(cfg.O_prime, cfg.P) == tangent_at(cfg.P, cp),
            "OP' tangent at P'": join(cfg.O, cfg.P_prime) == tangent_at(cfg.P_prime, cp),
            "polar of O is P'Q": polar(cfg.O, cp) == join(cfg.P_prime, cfg.Q),
            "V = midpoint(O, O')": cfg.V == midpoint(cfg.O, cfg.O_prime, LINF),
            "OO' = K^-1(PP')": join(cfg.O, cfg.O_prime)
            == K_INV.apply_line(join(cfg.P, cfg.P_prime)),
        }
        report.ratios = {
            "GS/SV": signed_ratio(G, cfg.S, cfg.V, LINF),
            "ZG/GV": signed_ratio(cfg.Z, G, cfg.V, LINF),
        }
        report.extras["GS/SV = 5/3"] = report.ratios["GS/SV"] == Scalar.of(5) / 3
        report.extras["ZG/GV = 5/4"] = report.ratios["ZG/GV"] == Scalar.of(5) / 4
    return report


def eta_checks(cfg: TriangleConfig) -> dict[str, bool]:
    eta = cfg.eta
    return {
        "eta^2 = 1": _same_map(eta @ eta, AffMap.identity(LINF)),
        "eta(P) = P'": eta(cfg.P) == cfg.P_prime,
        "eta(O) = O'": eta(cfg.O) == cfg.O_prime,
        "eta T_P = T_P' eta": _same_map(eta @ cfg.T_P, cfg.T_P_prime @ eta),
        "eta K = K eta": _same_map(eta @ K, K @ eta),
        "eta M eta = M": _same_map(eta @ cfg.M @ eta, cfg.M),
    }


def invariant_checks(cfg: TriangleConfig) -> dict[str, bool]:
    """Identities that hold for every admissible ``P`` (not on a median or the Steiner ellipse)."""
    check_hypotheses(cfg)
    cp = cfg.cevian_conic
    d, e, f = cfg.DEF
    out = {
        "S matches coordinate formula": cfg.S == s_formula(cfg.P),
        "Z matches coordinate formula": cfg.Z == z_formula(cfg.P),
        "S on OQ and GV": incident(cfg.S, join(cfg.O, cfg.Q)) and incident(cfg.S, join(G, cfg.V)),
        "center(inconic) = Q": center(cfg.inconic, LINF) == cfg.Q,
        "center(circumconic_O) = O": center(cfg.circumconic_O, LINF) == cfg.O,
        "center(circumconic_O') = O'": center(cfg.circumconic_O_prime, LINF) == cfg.O_prime,
        "center(nine_point_P') = K(Q)": center(cfg.nine_point_P_prime, LINF) == complement(cfg.Q),
        "center(nine_point_P) = K(Q')": center(cfg.nine_point_P, LINF)
        == complement(cfg.Q_prime),
        "center(cevian_conic) = Z": center(cp, LINF) == cfg.Z,
        "M is a dilatation": not isinstance(cfg.M_class, NotDilatation),
        "M(circumconic_O) = inconic": cfg.M.apply_conic(cfg.circumconic_O) == cfg.inconic,
        "M = T_P' K^-1 T_P": _same_map(cfg.T_P_prime @ K_INV @ cfg.T_P, cfg.M),
        "H on parallels to QD, QE, QF": all(
            incident(cfg.H, parallel_through(v, join(cfg.Q, t), LINF))
            for v, t in zip(VERTICES, (d, e, f))
        ),
        "Q, Q', H, H', P' on cevian conic": all(
            cp.contains(x) for x in (cfg.Q, cfg.Q_prime, cfg.H, cfg.H_prime, cfg.P_prime)
        ),
        "Z~ on cevian conic and circumconic_O": cp.contains(cfg.Z_tilde)
        and cfg.circumconic_O.contains(cfg.Z_tilde),
        "OQ tangent to cevian conic": is_tangent(join(cfg.O, cfg.Q), cp),
    }
    out.update(eta_checks(cfg))
    swapped = build_config(cfg.P_prime)
    out["swap P <-> P' keeps M"] = _same_map(swapped.M, cfg.M)
    out["swap P <-> P' exchanges O, Q, H"] = (
        swapped.O == cfg.O_prime
        and swapped.O_prime == cfg.O
        and swapped.Q == cfg.Q_prime
        and swapped.Q_prime == cfg.Q
        and swapped.H == cfg.H_prime
        and swapped.H_prime == cfg.H
    )
    return out


def is_parallelogram(a: PPoint, b: PPoint, c: PPoint, d: PPoint) -> bool:
    """``abcd`` is a parallelogram when its diagonals bisect each other."""
    return midpoint(a, c, LINF) == midpoint(b, d, LINF)


def is_admissible(p: PPoint) -> bool:
    """``P`` satisfies every hypothesis of the half-turn report, for ``P`` and for ``P'``."""
    try:
        cfg = build_config(p)
    except GeometryError:
        return False
    return not any(cfg.flags.values())
