import pytest

from extransit.algebra import RatFuncZ, ring_invert
from extransit.frobenius import verify_annihilation
from extransit.models import (MODELS, UnknownModelError, bar_coefficient, build_I_X,
                              build_I_Y, build_Ibar_Y_structural, derive_gkz,
                              get_model, x_coefficient, y_coefficient)
from extransit.operators import DiffOp, homogenize
from extransit.series import FRAME_Q, FRAME_XY

from conftest import MODEL_IDS

Z = RatFuncZ.zpow(1)


def test_unknown_model():
    with pytest.raises(UnknownModelError):
        get_model("t42")


def test_local_x_coefficients():
    spec = get_model("local")
    X = spec.x_ring
    h, xi = X.gen("h"), X.gen("xi")
    assert x_coefficient(spec, (0, 0)) == 4 * h * h
    zc = X.scalar(Z)
    expected = 4 * h * h * ring_invert(xi + zc) * ring_invert(xi - h + zc)
    assert x_coefficient(spec, (0, 1)) == expected


def test_t33_x_constant_term():
    spec = get_model("t33")
    X = spec.x_ring
    h, xi = X.gen("h"), X.gen("xi")
    assert x_coefficient(spec, (0, 0)) == (2 * h + xi) * (2 * h + xi)


def _fac(p, a):
    Y = p.ring
    out = Y.one()
    for m in range(1, a + 1):
        out = out * (a * p + Y.scalar(RatFuncZ.const(m) * Z))
    return out


def test_y_coefficients():
    t24, t33, loc = get_model("t24"), get_model("t33"), get_model("local")
    Y = t24.y_ring
    p = Y.gen("p")
    zc = Y.scalar(Z)
    inv6 = ring_invert((p + zc) ** 6)
    assert y_coefficient(t24, 0) == 8 * p * p
    assert y_coefficient(t33, 1) == 9 * p * p * _fac(p, 3) ** 2 * inv6
    assert y_coefficient(loc, 1) == 4 * p * p * _fac(p, 2) ** 2 * inv6


def test_bar_constant_is_euler_class():
    for mid in MODEL_IDS:
        spec = get_model(mid)
        assert bar_coefficient(spec, 0, 0) == spec.euler_y()


def test_local_box2():
    ops = derive_gkz("local").operators
    q1, q2, d1, d2, z = DiffOp.generators(FRAME_Q)
    assert ops["Box2"] == z * d2 * (z * d2 - z * d1) - q2


def test_local_box1_order_five():
    ops = derive_gkz("local").operators
    q1, q2, d1, d2, z = DiffOp.generators(FRAME_Q)
    want = (z * d1) ** 5 - q1 * (2 * z * d1 + z) ** 2 * (2 * z * d1 + 2 * z) ** 2 * (z * d2 - z * d1)
    assert ops["Box1"] == want


def test_t24_y_side_operator():
    op = derive_gkz("t24", "y").operators["Box_y"]
    _, y, _, dy, z = DiffOp.generators(FRAME_XY)
    rhs = (2 * z * dy + z) * (2 * z * dy + 2 * z)
    for m in range(1, 5):
        rhs = rhs * (4 * z * dy + m * z)
    assert op == (z * dy) ** 6 - y * rhs


def test_local_transformed_box2():
    ops = derive_gkz("local", "xy").operators
    x, y, dx, dy, z = DiffOp.generators(FRAME_XY)
    assert ops["Box2'"] == (z * dy) * (z * dx) - x * y


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_derived_operators_are_homogeneous(mid):
    for op in derive_gkz(mid).operators.values():
        assert homogenize(op) == op


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_annihilation_x(mid):
    spec = get_model(mid)
    res = verify_annihilation(derive_gkz(spec), build_I_X(spec, 4))
    assert all(r.is_zero() for r in res.values())


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_annihilation_y_and_bar(mid):
    spec = get_model(mid)
    res = verify_annihilation(derive_gkz(spec, "y"), build_I_Y(spec, 4))
    assert all(r.is_zero() for r in res.values())
    res = verify_annihilation(derive_gkz(spec, "xy"), build_Ibar_Y_structural(spec, 4))
    assert all(r.is_zero() for r in res.values())


def test_model_table():
    assert set(MODELS) == set(MODEL_IDS)
    assert not get_model("local").is_calabi_yau
    assert get_model("t24").is_calabi_yau and get_model("t33").is_calabi_yau
