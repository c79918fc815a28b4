from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extransit.frobenius import frobenius_solve, scan_exponents
from extransit.models import (bar_coefficient, build_Ibar_Y_structural, derive_gkz,
                              get_model)
from extransit.series import DualCoeff, FrameMismatchError, HalfInt

from conftest import MODEL_IDS, coh_elems
from extransit.algebra import y_ambient_ring

HALF = HalfInt(1)


def _cohomology_solve(spec, order, r):
    R = spec.y_ring
    return frobenius_solve(
        derive_gkz(spec, "xy"), 0, order, ring=R,
        seed=r * bar_coefficient(spec, 0, 0),
        seed_fn=lambda ij: DualCoeff(r * bar_coefficient(spec, *ij)),
        prefactor=R.gen("p"), dual=False)


def test_requires_xy_frame():
    with pytest.raises(FrameMismatchError):
        frobenius_solve(derive_gkz("local"), HALF, 2)


def test_seed_and_quadrant():
    res = frobenius_solve(derive_gkz("local", "xy"), HALF, 3)
    assert res.admissible
    assert res.coefficients[(0, 0)].real == res.coefficients[(0, 0)].ring.one()
    assert all(i >= 0 and j >= 0 for i, j in res.coefficients)


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_half_exponent_has_log_part(mid):
    res = frobenius_solve(derive_gkz(mid, "xy"), HALF, 4)
    assert res.admissible
    assert res.series.has_infinitesimal()
    assert all(k[0] % 2 == 1 for k in res.series.terms)


def test_rho0_dual_is_obstructed():
    res = frobenius_solve(derive_gkz("local", "xy"), 0, 3)
    assert not res.admissible
    assert res.obstruction == (0, 0)


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_exponent_scan(mid):
    scan = scan_exponents(derive_gkz(mid, "xy"), 6)
    assert [s.rho.value for s in scan if s.admissible] == [0, Fraction(1, 2)]
    by = {s.rho.twice_value: s for s in scan}
    assert by[2].solvable and by[2].subsumed_by is not None


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_rho0_reproduces_closed_form(mid):
    spec = get_model(mid)
    res = _cohomology_solve(spec, 5, spec.y_ring.one())
    assert res.admissible
    assert res.series == build_Ibar_Y_structural(spec, 5)


@given(st.sampled_from(MODEL_IDS), coh_elems(y_ambient_ring()))
def test_rho0_agreement_randomized(mid, r):
    # linearity over the coefficient ring: seed r e(V) must give r Ibar
    spec = get_model(mid)
    res = _cohomology_solve(spec, 3, r)
    assert res.admissible
    assert res.series == build_Ibar_Y_structural(spec, 3).scale(r)
