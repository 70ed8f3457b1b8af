import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cevian_locus.field import Scalar
from cevian_locus.projective import PPoint
from cevian_locus.triangle import is_admissible

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIELDS = (2, 3, 5, 6, 19)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonzero_fractions = fractions.filter(bool)


@st.composite
def scalars(draw, d=None):
    d = draw(st.sampled_from(FIELDS)) if d is None else d
    return Scalar(draw(fractions), draw(fractions), d)


small_ints = st.integers(-9, 9)


@st.composite
def rational_points(draw):
    coords = draw(st.tuples(small_ints, small_ints, small_ints).filter(any))
    return PPoint(*coords)


@st.composite
def admissible_points(draw):
    coords = draw(st.tuples(nonzero_fractions, nonzero_fractions, nonzero_fractions))
    p = PPoint(*coords)
    from hypothesis import assume

    assume(is_admissible(p))
    return p


def random_admissible(n: int, seed: int = 1) -> list[PPoint]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = PPoint(*[Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(3)])
        if is_admissible(p):
            out.append(p)
    return out


@pytest.fixture(scope="session")
def sqrt19_point():
    return PPoint(Scalar(-4, 1, 19), -1, 3)


# --- one line per acceptance criterion ----------------------------------------
_criteria: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.nodeid.startswith("tests/test_acceptance.py") and name.startswith("test_criterion_"):
        _criteria[int(name.split("_")[2])] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import TITLES

    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        verdict = "PASS" if _criteria[n] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {TITLES[n]}")
