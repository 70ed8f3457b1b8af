import random
from fractions import Fraction

import pytest

from cevian_locus import construct as K
from cevian_locus import locus
from cevian_locus.errors import CollinearTriple, OutsideArc, PointNotOnConic
from cevian_locus.projective import PPoint, join, meet
from cevian_locus.triangle import A_INF, LINF

S = K.SCENE


def test_scene_coordinates():
    expected = {
        "Z1": (0, 0), "Q1": (1, 0), "P1'": (0, 1), "O1": (1, 1), "S1": (1, Fraction(1, 2)),
        "G1": (Fraction(2, 3), Fraction(1, 3)), "P1": (Fraction(4, 5), Fraction(-3, 5)),
        "Q1'": (Fraction(3, 5), Fraction(4, 5)), "V1": (Fraction(6, 5), Fraction(3, 5)),
    }
    for name, p in S.marked_points().items():
        assert p == K.pt(*expected[name]), name


def test_scene_checks():
    checks = K.scene_checks()
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_reflection_matches_matrix():
    # reflection in y = x/2 has rows (3/5, 4/5) and (4/5, -3/5)
    g, z = S.G1, S.Z1
    for x, y in ((0, 1), (1, 0), (2, 7)):
        img = K.reflect_across_line(K.pt(x, y), g, z)
        assert img == K.pt(Fraction(3 * x + 4 * y, 5), Fraction(4 * x - 3 * y, 5))


# --- arc -------------------------------------------------------------------------
def test_arc_param_examples():
    assert K.arc_param(0) == S.Q1 and not K.arc_contains(0)
    assert K.arc_param(Fraction(1, 5)) == K.pt(Fraction(12, 13), Fraction(5, 13))
    assert K.arc_contains(Fraction(1, 5))
    assert K.arc_param(-1) == K.pt(0, -1) and not K.arc_contains(-1)
    for t, name in K.MARKED_PARAMS.items():
        assert K.arc_param(t) == S.marked_points()[name]


def test_arc_agrees_with_interiority_on_a_grid():
    for i in range(-60, 61):
        t = Fraction(i, 24)
        K.arc_contains(t)  # raises on disagreement


# --- inscribing -------------------------------------------------------------------
def test_inscribe_at_one_fifth():
    a = K.arc_param(Fraction(1, 5))
    b, c = K.inscribe_with_centroid(a)
    assert S.circle.contains(b) and S.circle.contains(c)
    assert K.centroid(a, b, c) == S.G1
    assert b.field == c.field and b.field > 1
    bx, by = K.xy(b)
    cx, cy = K.xy(c)
    assert bx < cx or (bx == cx and by < cy)


def test_inscribe_rejects():
    with pytest.raises(OutsideArc):
        K.inscribe_with_centroid(K.arc_param(-1))
    with pytest.raises(OutsideArc):
        K.inscribe_with_centroid(S.Q1)
    with pytest.raises(PointNotOnConic):
        K.inscribe_with_centroid(K.pt(2, 0))


# --- transport -----------------------------------------------------------------------
def test_transport_trivial_cases():
    a = K.arc_param(Fraction(1, 5))
    tri = (a, *K.inscribe_with_centroid(a))
    assert K.transport(tri, a) == PPoint(1, 0, 0)
    assert K.transport(tri, S.G1) == PPoint(1, 1, 1)
    with pytest.raises(CollinearTriple):
        K.transport((K.pt(0, 0), K.pt(1, 1), K.pt(2, 2)), S.G1)


def test_sample_at_one_fifth():
    s = K.sample_at(Fraction(1, 5))
    assert locus.on_curve(s.P) and locus.on_curve(s.P_prime)
    assert s.P_swapped == locus.neg(s.P)
    assert meet(join(s.P, s.P_swapped), LINF) == A_INF
    checks = K.verify_sample(s)
    assert all(checks.values()), checks


def test_primary_orientation_only():
    s = K.sample_at(Fraction(1, 5), orientation="primary")
    assert not s.both_orientations and s.P_swapped is None
    with pytest.raises(ValueError):
        K.sample_at(Fraction(1, 5), orientation="sideways")


def test_parameters_avoid_marked_points():
    for n in (1, 2, 3, 4, 6, 12, 100):
        ts = K.parameters(n)
        assert len(ts) == n == len(set(ts))
        assert all(K.arc_contains(t) for t in ts)
    with pytest.raises(ValueError):
        K.parameters(0)


def test_sampled_points_are_distinct_and_on_curve():
    samples = K.sample_locus(40, orientation="both")
    assert len({s.P for s in samples}) == 40
    for s in samples:
        assert all(locus.on_curve(p) for p in s.points())
        assert K.centroid(*s.triangle) == S.G1


# --- conic determined by G, V, Z, P ---------------------------------------------------
def test_gvz_on_the_scene():
    data = K.gvz_data((0, 0), (Fraction(6, 5), Fraction(3, 5)), (0, 1))
    assert data.G == S.G1
    assert K.gvz_conic(data) == S.circle
    assert all(K.gvz_checks(data).values())


def test_gvz_random_data_sets():
    rng = random.Random(3)
    done = 0
    while done < 20:
        z = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        v = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        p = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        if z == v:
            continue
        try:
            data = K.gvz_data(z, v, p)
        except CollinearTriple:
            continue
        checks = K.gvz_checks(data)
        assert all(checks.values()), (z, v, p, checks)
        done += 1
