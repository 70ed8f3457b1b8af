from fractions import Fraction

import pytest
from hypothesis import given, settings

from cevian_locus.errors import (
    DegenerateAxis,
    HypothesisViolated,
    PointAtInfinity,
    PointOnAnticomplementarySide,
    PointOnSideline,
)
from cevian_locus.field import Scalar
from cevian_locus.projective import HalfTurn, Homothety, NotDilatation, PPoint
from cevian_locus.triangle import (
    A,
    B,
    G,
    anticomplement,
    build_config,
    cevian_traces,
    classify_M,
    complement,
    eta_checks,
    halfturn_report,
    invariant_checks,
    isotomic,
    is_parallelogram,
    s_formula,
    segment_ratio,
    z_formula,
)

from conftest import admissible_points, rational_points

P123 = PPoint(1, 2, 3)


# --- basic maps ---------------------------------------------------------------
def test_complement_examples():
    assert complement(A) == PPoint(0, 1, 1)
    assert complement(G) == G
    assert complement(P123) == PPoint(5, 4, 3)


@given(rational_points())
def test_complement_inverse(p):
    if sum(p.coords):
        assert anticomplement(complement(p)) == p
        assert complement(anticomplement(p)) == p


def test_isotomic_examples():
    assert isotomic(G) == G
    assert isotomic(P123) == PPoint(6, 3, 2)
    assert isotomic(isotomic(P123)) == P123
    with pytest.raises(PointOnSideline):
        isotomic(PPoint(0, 1, 2))


def test_isotomic_reflects_traces_in_midpoints():
    from cevian_locus.projective import BARY_LINF, join, meet, reflect_in_point

    d, e, f = cevian_traces(P123)
    mids = cevian_traces(G)
    d2, e2 = (reflect_in_point(t, m, BARY_LINF) for t, m in ((d, mids[0]), (e, mids[1])))
    assert meet(join(A, d2), join(B, e2)) == isotomic(P123)


def test_cevian_traces():
    assert cevian_traces(P123) == (PPoint(0, 2, 3), PPoint(1, 0, 3), PPoint(1, 2, 0))
    assert cevian_traces(PPoint(5, 8, 9)) == (PPoint(0, 8, 9), PPoint(5, 0, 9), PPoint(5, 8, 0))


# --- configuration --------------------------------------------------------------
def test_config_for_123():
    cfg = build_config(P123)
    assert cfg.Q == PPoint(5, 8, 9)
    assert cfg.S == PPoint(25, 32, 27) == s_formula(P123)
    assert cfg.Z == PPoint(1, 8, 3) == z_formula(P123)


@pytest.mark.parametrize(
    "p, err",
    [
        (PPoint(1, -1, 0), PointAtInfinity),
        (PPoint(0, 1, 2), PointOnSideline),
        (PPoint(1, -1, 3), PointOnAnticomplementarySide),
    ],
)
def test_config_rejects(p, err):
    with pytest.raises(err):
        build_config(p)


def test_centroid_is_flagged_not_rejected():
    cfg = build_config(G)
    assert cfg.flags["on_median"]
    assert classify_M(cfg) == Homothety(Scalar.of(Fraction(-1, 2)), G)
    with pytest.raises(HypothesisViolated) as info:
        halfturn_report(cfg)
    assert info.value.flag == "on_median"


def test_steiner_point_gives_ratio_four():
    p = PPoint(2, 2, -1)
    cfg = build_config(p)
    assert cfg.flags["on_steiner"]
    cls = classify_M(cfg)
    assert isinstance(cls, Homothety) and cls.ratio == 4
    with pytest.raises(HypothesisViolated):
        halfturn_report(cfg)


def test_non_half_turn_classification_by_two_routes():
    cfg = build_config(PPoint(1, 2, 4))
    cls = classify_M(cfg)
    assert isinstance(cls, Homothety) and cls.ratio not in (1, -1)
    assert segment_ratio(cfg.M) == cls.ratio


def test_half_turn_witness(sqrt19_point):
    cfg = build_config(sqrt19_point)
    assert cfg.field == 19
    cls = classify_M(cfg)
    assert isinstance(cls, HalfTurn) and cls.center == cfg.S
    assert anticomplement(cfg.S) == cfg.Z
    rep = halfturn_report(cfg)
    assert all(rep.conditions.values())
    assert all(rep.extras.values())
    assert rep.ratios == {"GS/SV": Fraction(5, 3), "ZG/GV": Fraction(5, 4)}
    assert is_parallelogram(cfg.Q, cfg.Z, cfg.P_prime, cfg.O)


@pytest.mark.parametrize("coords", [(1, 2, 4), (1, 3, 5), (2, 3, 5), (1, 2, 5), (3, 5, 7)])
def test_conditions_fail_together(coords):
    rep = halfturn_report(build_config(PPoint(*coords)))
    assert not rep.caveats
    assert not any(rep.conditions.values())


def test_point_123_has_vertex_H_prime():
    """For P = (1,2,3) the point H' = K^-1(O') is the vertex A.

    Here O' is the midpoint of BC, which lies on the nine-point conic of ABCP,
    so one condition holds while M is not a half-turn.  The report records
    the caveat instead of claiming the equivalence.
    """
    cfg = build_config(P123)
    assert cfg.H_prime == A
    assert cfg.O_prime == PPoint(0, 1, 1)
    rep = halfturn_report(cfg)
    assert rep.caveats == ["h_prime_at_vertex"]
    assert rep.conditions["6"] and not rep.conditions["1"]
    assert [k for k, v in rep.conditions.items() if v] == ["6"]
    assert all(invariant_checks(cfg).values())


# --- the involution --------------------------------------------------------------
def test_eta_for_123():
    cfg = build_config(P123)
    assert cfg.eta(P123) == PPoint(6, 3, 2)
    assert all(eta_checks(cfg).values())


def test_eta_needs_point_off_medians():
    with pytest.raises(DegenerateAxis):
        build_config(PPoint(1, 1, 2)).eta


# --- properties ----------------------------------------------------------------
@settings(max_examples=25)
@given(admissible_points())
def test_invariants_hold(p):
    cfg = build_config(p)
    checks = invariant_checks(cfg)
    assert all(checks.values()), [k for k, v in checks.items() if not v]
    assert not isinstance(cfg.M_class, NotDilatation)


@settings(max_examples=25)
@given(admissible_points())
def test_conditions_all_or_nothing(p):
    rep = halfturn_report(build_config(p))
    assert rep.equivalence_holds
