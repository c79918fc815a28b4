from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from extransit.algebra import RatFuncZ, scalar_ring
from extransit.operators import (DiffOp, at_z1, change_frame, homogenize,
                                 op_apply, op_compose)
from extransit.series import FRAME_Q, DualCoeff, LogSeries, series_mul

from test_series import scalar_series

S = scalar_ring()
x1, x2, d1, d2, z = DiffOp.generators(FRAME_Q)


@st.composite
def diffops(draw, shifts=(0, 1), max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        key = (2 * draw(st.sampled_from(shifts)), 2 * draw(st.sampled_from(shifts)),
               draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 1)))
        terms[key] = Fraction(draw(st.integers(-3, 3)))
    return DiffOp(FRAME_Q, terms)


def test_commutation_relation():
    assert d1 * x1 - x1 * d1 == x1
    assert d2 * x1 == x1 * d2
    assert d1 * z == z * d1


def test_homogenize_puts_top_degree_on_group():
    A = d1 * d1 - x1 * (d1 + 1)
    H = homogenize(A)
    assert H == z * z * d1 * d1 - z * x1 * (d1 + 1)
    assert at_z1(H) == A


def test_change_frame_generators():
    X1, Y1, DX, DY, Z = DiffOp.generators(("x", "y"))
    assert change_frame(d1) == DY - DX
    assert change_frame(d2) == DY
    assert change_frame(x1 * x2) == Y1


@given(diffops(), diffops(), diffops())
def test_composition_associative(a, b, c):
    assert op_compose(op_compose(a, b), c) == op_compose(a, op_compose(b, c))


@given(diffops(), diffops())
def test_change_frame_is_homomorphism(a, b):
    assert change_frame(a * b) == change_frame(a) * change_frame(b)
    assert change_frame(a + b) == change_frame(a) + change_frame(b)


@given(diffops(), diffops(), scalar_series(order=4))
def test_apply_respects_composition(a, b, f):
    lhs = op_apply(a * b, f)
    rhs = op_apply(a, op_apply(b, f))
    n = min(lhs.order, rhs.order)
    assert lhs.truncate(n) == rhs.truncate(n)


@given(scalar_series(), scalar_series(), st.sampled_from([d1, d2]))
def test_leibniz(f, g, d):
    lhs = op_apply(d, series_mul(f, g))
    rhs = series_mul(op_apply(d, f), g) + series_mul(f, op_apply(d, g))
    assert lhs == rhs


def test_delta_of_log_monomial():
    f = LogSeries(FRAME_Q, S, 2, {(2, 0, 1, 0): DualCoeff(S.one())}, log_cap=2)
    g = op_apply(d1, f)
    assert g.coefficient((1, 0, 1, 0)).real == S.one()
    assert g.coefficient((1, 0, 0, 0)).real == S.one()
