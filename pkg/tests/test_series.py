from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extransit.algebra import RatFuncZ, scalar_ring, y_ambient_ring
from extransit.series import (FRAME_Q, FRAME_XY, DualCoeff, FrameMismatchError,
                              HalfInt, LogSeries, WindowError, exp_prefactor,
                              series_mul)

S = scalar_ring()
Y = y_ambient_ring()


@st.composite
def scalar_series(draw, order=3, logs=True):
    terms = {}
    n = draw(st.integers(0, 5))
    for _ in range(n):
        a = draw(st.integers(0, order))
        b = draw(st.integers(0, order - a))
        l1 = draw(st.integers(0, 1)) if logs else 0
        c = draw(st.integers(-4, 4))
        if c:
            terms[(2 * a, 2 * b, l1, 0)] = DualCoeff(S.scalar(RatFuncZ.const(c)))
    return LogSeries(FRAME_Q, S, order, terms, log_cap=2)


def test_halfint():
    assert HalfInt.of(Fraction(1, 2)).twice_value == 1
    assert HalfInt.of(3).is_integral()
    with pytest.raises(ValueError):
        HalfInt.of(Fraction(1, 3))


def test_dual_u_squared_vanishes():
    u = DualCoeff.u(S)
    assert not (u * u)


def test_window_enforced():
    with pytest.raises(WindowError):
        LogSeries(FRAME_Q, S, 2, {(6, 0, 0, 0): DualCoeff(S.one())})
    with pytest.raises(WindowError):
        LogSeries(FRAME_Q, S, 2, {(-10, 0, 0, 0): DualCoeff(S.one())})
    f = LogSeries.constant(FRAME_Q, S, 1, order=2)
    with pytest.raises(WindowError):
        f.coefficient((3, 0, 0, 0))


def test_frame_mismatch():
    f = LogSeries.constant(FRAME_Q, S, 1)
    g = LogSeries.constant(FRAME_XY, S, 1)
    with pytest.raises(FrameMismatchError):
        f + g


def test_truncation_cannot_extend():
    f = LogSeries.constant(FRAME_Q, S, 1, order=2)
    with pytest.raises(WindowError):
        f.truncate(3)


def test_exp_prefactor_terminates_by_nilpotency():
    p = Y.gen("p")
    f = exp_prefactor(p, "q2", order=1)
    logs = {k[3] for k in f.terms}
    assert logs == set(range(6))
    # coefficient of log^2 is p^2 / (2 z^2)
    c = f.coefficient((0, 0, 0, 2)).real
    assert c == (p * p).scale(RatFuncZ.zpow(-2, Fraction(1, 2)))


def test_exp_prefactor_rejects_units():
    with pytest.raises(ValueError):
        exp_prefactor(Y.one(), "q1")


@given(scalar_series(), scalar_series(), scalar_series())
def test_product_ring_axioms(f, g, h):
    assert series_mul(f, g) == series_mul(g, f)
    assert series_mul(series_mul(f, g), h) == series_mul(f, series_mul(g, h))
    assert series_mul(f, g + h) == series_mul(f, g) + series_mul(f, h)


@given(scalar_series(), st.integers(0, 3))
def test_truncate_commutes_with_product(f, n):
    one = LogSeries.constant(FRAME_Q, S, 1, order=f.order, log_cap=2)
    assert series_mul(f, one).truncate(n) == f.truncate(n)
