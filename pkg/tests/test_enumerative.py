from fractions import Fraction

import pytest

from extransit.instantons import NotCalabiYauError, instanton_numbers
from extransit.models import get_model
from extransit.schubert import (integrate, lines_oracle, mul_sigma11, pieri_sigma1,
                                point_class_integral, sigma1_power_integral)

# published counts for the (2,4) and (3,3) complete intersections in P^5
KNOWN = {"t24": (1280, 92288, 15655168), "t33": (1053, 52812, 6424326)}


def test_schubert_self_checks():
    assert point_class_integral() == 1
    assert sigma1_power_integral(8) == 14


def test_pieri_on_identity():
    one = {(0, 0): Fraction(1)}
    assert pieri_sigma1(one) == {(1, 0): 1}
    assert mul_sigma11(one) == {(1, 1): 1}
    assert integrate(pieri_sigma1(one)) == 0


@pytest.mark.parametrize("mid,n1", [("t24", 1280), ("t33", 1053)])
def test_lines_oracle(mid, n1):
    assert lines_oracle(get_model(mid)) == n1


def test_oracle_rejects_fano():
    with pytest.raises(ValueError):
        lines_oracle(get_model("local"))
    with pytest.raises(NotCalabiYauError):
        instanton_numbers(get_model("local"))


@pytest.mark.parametrize("mid,n0", [("t24", 8), ("t33", 9)])
def test_instantons(mid, n0):
    spec = get_model(mid)
    tab = instanton_numbers(spec, 3)
    assert tab.n0 == n0
    assert tab.numbers[1] == lines_oracle(spec)
    assert all(Fraction(v).denominator == 1 for v in tab.numbers.values())
    assert tuple(tab.numbers[d] for d in (1, 2, 3)) == KNOWN[mid]
    assert all(tab.checks.values())


def test_discriminant():
    assert instanton_numbers(get_model("t24"), 1).discriminant == 1024
    assert instanton_numbers(get_model("t33"), 1).discriminant == 729
