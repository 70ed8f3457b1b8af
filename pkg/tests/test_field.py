import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cevian_locus.errors import (
    DivisionByZero,
    MixedDiscriminants,
    NonSquarefreeDiscriminant,
    NotASquare,
)
from cevian_locus.field import (
    ONE,
    ZERO,
    Scalar,
    adjoin,
    common_field,
    format_scalar,
    parse_scalar,
    sign,
    sqrt_rational,
    squarefree_split,
)

from conftest import FIELDS, fractions, scalars

mpmath.mp.dps = 200


def oracle(s: Scalar):
    a = mpmath.mpf(s.a.numerator) / s.a.denominator
    b = mpmath.mpf(s.b.numerator) / s.b.denominator
    return a + b * mpmath.sqrt(s.d) if s.d else a


# --- construction and canonical form ---------------------------------------
def test_adjoin_examples():
    r19 = adjoin(1, 19)
    assert (r19.a, r19.b, r19.d) == (0, 1, 19)
    zero = adjoin(0, 6)
    assert zero == ZERO and zero.d == 0
    assert adjoin(2, 6) + 0 == Scalar(0, 2, 6)


@pytest.mark.parametrize("d", [4, 12, 18, 1, 0, -3])
def test_adjoin_rejects_non_squarefree(d):
    with pytest.raises(NonSquarefreeDiscriminant):
        adjoin(1, d)


def test_constructor_rejects_square_factor():
    with pytest.raises(NonSquarefreeDiscriminant):
        Scalar(0, 1, 8)


def test_d_one_collapses_to_rational():
    s = Scalar(2, 3, 1)
    assert s == 5 and s.d == 0 and s.b == 0


def test_sqrt_rational_reduces_radicand():
    assert sqrt_rational(12) == Scalar(0, 2, 3)
    assert sqrt_rational(Fraction(1, 2)) == Scalar(0, Fraction(1, 2), 2)
    assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(NotASquare):
        sqrt_rational(-1)


def test_squarefree_split():
    assert squarefree_split(72) == (2, 6)
    assert squarefree_split(19) == (19, 1)
    assert squarefree_split(1) == (1, 1)


# --- arithmetic examples ---------------------------------------------------
def test_conjugate_product():
    x = Scalar(-4, 1, 19)
    assert x * x.conjugate() == -3
    assert x * ONE == x


def test_two_root_six_squared_matches_curve_value():
    v = Scalar(0, 2, 6)
    u = 2
    assert v * v == 24 == (u + 1) * (u * u + 4)


def test_inverse_formula():
    x = Scalar(3, -2, 5)
    inv = x.inverse()
    assert inv == Scalar(Fraction(3, -11), Fraction(2, -11), 5)
    assert x * inv == 1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(1, 1, 2) / 0
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_mixed_discriminants_refused():
    with pytest.raises(MixedDiscriminants):
        Scalar(0, 1, 2) + Scalar(0, 1, 3)
    with pytest.raises(MixedDiscriminants):
        Scalar(0, 1, 2) * Scalar(1, 1, 3)
    with pytest.raises(MixedDiscriminants):
        common_field([Scalar(0, 1, 2), 5, Scalar(1, 1, 3)])
    assert common_field([1, Scalar(1, 1, 7), Fraction(1, 2)]) == 7


def test_hash_agrees_with_fraction_for_rationals():
    assert hash(Scalar.of(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert {Scalar.of(2): 1}[Scalar(2, 0, 5)] == 1


# --- sign -----------------------------------------------------------------
@pytest.mark.parametrize(
    "s, expected",
    [
        (Scalar(1, -1, 2), -1),
        (ZERO, 0),
        (Scalar(-4, 1, 19), 1),
        # Pell solutions make |a - b sqrt(d)| tiny
        (Scalar(1351, -780, 3), 1),
        (Scalar(-1351, 780, 3), -1),
        (Scalar(19601, -13860, 2), 1),
    ],
)
def test_sign_examples(s, expected):
    assert sign(s) == expected
    assert mpmath.sign(oracle(s)) == expected


def test_sign_agrees_with_decimal_oracle_on_many_values():
    rng = random.Random(7)
    for _ in range(10_000):
        d = rng.choice(FIELDS)
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 1000))
        b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 1000))
        s = Scalar(a, b, d)
        assert sign(s) == mpmath.sign(oracle(s))


@given(scalars())
def test_sign_of_negation(s):
    assert sign(s) * sign(-s) == -sign(s) ** 2


# --- field axioms -----------------------------------------------------------
@given(st.sampled_from(FIELDS).flatmap(lambda d: st.tuples(scalars(d), scalars(d), scalars(d))))
def test_field_axioms(triple):
    x, y, z = triple
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO
    if x:
        assert x * x.inverse() == ONE
        assert (y / x) * x == y


@given(scalars())
def test_arithmetic_matches_oracle(s):
    t = s * s - 3 * s + Scalar.of(Fraction(1, 7))
    assert mpmath.almosteq(oracle(t), oracle(s) ** 2 - 3 * oracle(s) + mpmath.mpf(1) / 7, 1e-150)


@given(scalars())
def test_sqrt_of_square(s):
    sq = s * s
    r = sq.sqrt(s.d)
    assert r * r == sq and sign(r) >= 0
    assert r == abs(s)


def test_sqrt_outside_field():
    with pytest.raises(MixedDiscriminants):
        Scalar.of(3).sqrt(field=2)
    assert Scalar(3, 2, 2).sqrt() == Scalar(1, 1, 2)
    assert not Scalar(0, 1, 2).is_square()


# --- literal grammar ---------------------------------------------------------
@pytest.mark.parametrize(
    "text, value",
    [
        ("7", Scalar.of(7)),
        ("-3/4", Scalar.of(Fraction(-3, 4))),
        ("-4+1*sqrt(19)", Scalar(-4, 1, 19)),
        ("9/2+1/2*sqrt(89)", Scalar(Fraction(9, 2), Fraction(1, 2), 89)),
        ("2*sqrt(6)", Scalar(0, 2, 6)),
        ("-sqrt(19)", Scalar(0, -1, 19)),
        ("1-2/3*sqrt(5)", Scalar(1, Fraction(-2, 3), 5)),
        ("sqrt(12)", Scalar(0, 2, 3)),
    ],
)
def test_parse_examples(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+", "sqrt(x)", "1/0/2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(scalars())
def test_format_round_trip(s):
    assert parse_scalar(format_scalar(s)) == s


@given(fractions)
def test_rational_round_trip(q):
    assert parse_scalar(format_scalar(Scalar.of(q))) == q


def test_canonical_encoding_is_unique():
    a = Scalar(Fraction(2, 4), Fraction(-3, 6), 2)
    b = Scalar(Fraction(1, 2), Fraction(-1, 2), 2)
    assert a == b and format_scalar(a) == format_scalar(b) == "1/2-1/2*sqrt(2)"
