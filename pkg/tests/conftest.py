from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from extransit.algebra import CohElem, RatFuncZ, x_ambient_ring, y_ambient_ring

settings.register_profile(
    "exact", max_examples=120, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("exact")

MODEL_IDS = ("local", "t24", "t33")


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def polys(draw, max_deg=3):
    return tuple(draw(st.lists(small_ints, min_size=1, max_size=max_deg + 1)))


@st.composite
def ratfuncs(draw, max_deg=2):
    num = draw(polys(max_deg))
    den = draw(polys(max_deg).filter(lambda p: any(p)))
    return RatFuncZ(num, den)


@st.composite
def coh_elems(draw, ring, density=0.5):
    coords = {}
    for b in range(ring.dim):
        if draw(st.booleans()):
            v = draw(ratfuncs(1))
            if v:
                coords[b] = v
    return CohElem(ring, coords)


@st.composite
def units(draw, ring):
    a = draw(coh_elems(ring))
    c = draw(ratfuncs(1).filter(bool))
    return a - a.ring.scalar(a.degree0()) + ring.scalar(c)


@pytest.fixture(scope="session")
def xring():
    return x_ambient_ring()


@pytest.fixture(scope="session")
def yring():
    return y_ambient_ring()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
