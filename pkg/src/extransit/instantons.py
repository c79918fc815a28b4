"""Genus-zero instanton numbers of the Calabi-Yau Y sides via the mirror map."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from .models import FactorProduct, derive_gkz, gamma_ratio, get_model
from .operators import at_z1
from .schubert import lines_oracle

__all__ = ["InstantonTable", "instanton_numbers", "periods", "mirror_map",
           "discriminant", "yukawa_y", "NotCalabiYauError"]

Series = List[Fraction]


class NotCalabiYauError(ValueError):
    pass


# truncated power series in one variable, lists of Fractions ---------------

def _mul(a: Series, b: Series, n: int) -> Series:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[:n - i]):
                out[i + j] += x * y
    return out


def _inv(a: Series, n: int) -> Series:
    if not a[0]:
        raise ZeroDivisionError("series with zero constant term")
    out = [Fraction(0)] * n
    out[0] = 1 / a[0]
    for k in range(1, n):
        s = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s / a[0]
    return out


def _exp(a: Series, n: int) -> Series:
    """exp of a series with zero constant term (via f' = a' f)."""
    if a[0]:
        raise ValueError("exp needs a zero constant term")
    da = [k * a[k] for k in range(len(a))]
    out = [Fraction(0)] * n
    out[0] = Fraction(1)
    for k in range(1, n):
        out[k] = sum(da[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)) / k
    return out


def _compose(a: Series, b: Series, n: int) -> Series:
    """a(b(q)) with b[0] = 0."""
    out = [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(n):
        if k < len(a) and a[k]:
            for i in range(n):
                out[i] += a[k] * power[i]
        power = _mul(power, b, n)
    return out


def _theta(a: Series) -> Series:
    return [k * c for k, c in enumerate(a)]


def _revert(q_of_y: Series, n: int) -> Series:
    """y(q) from q(y) = y + O(y^2)."""
    if q_of_y[0] or q_of_y[1] != 1:
        raise ValueError("mirror map must be y + O(y^2)")
    y = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2)
    for _ in range(n):
        # y <- q - (q(y) - y) evaluated at the current y
        corr = _compose([Fraction(0), Fraction(0)] + list(q_of_y[2:n]), y, n)
        nxt = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2)
        y = [nxt[i] - corr[i] for i in range(n)]
    return y


# model data ---------------------------------------------------------------

def _hyper(spec, j: int):
    """A_j(p) at z = 1 as (coefficient of p^0, coefficient of p^1)."""
    fp = FactorProduct(1)
    for a in spec.y_twists:
        gamma_ratio(fp, (a,), a * j)
    for b in spec.y_divisors:
        gamma_ratio(fp, (b,), b * j, -1)
    c = fp.evaluate(spec.y_ring)
    ring = spec.y_ring
    c0 = c.coeff(ring.index[(0,)]).evaluate(1)
    c1 = c.coeff(ring.index[(1,)]).evaluate(1)
    return c0, c1


def periods(spec, n: int):
    """F0 and F1 through y^(n-1): I/e(V) at z = 1 is F0 + p (F0 log y + F1) + O(p^2)."""
    spec = get_model(spec)
    F0, F1 = [], []
    for j in range(n):
        c0, c1 = _hyper(spec, j)
        F0.append(c0)
        F1.append(c1)
    return F0, F1


def mirror_map(spec, n: int) -> Series:
    """q(y) = y exp(F1/F0)."""
    F0, F1 = periods(spec, n)
    ratio = _mul(F1, _inv(F0, n), n)
    e = _exp(ratio, n)
    return [Fraction(0)] + e[:n - 1]


def discriminant(spec) -> Fraction:
    """lambda with symbol of the Y-side operator = theta^top (1 - lambda y)."""
    spec = get_model(spec)
    op = at_z1(derive_gkz(spec, "y").operators["Box_y"])
    top = max(d1 + d2 for (_, _, d1, d2, _) in op.terms)
    lead: Dict[int, Fraction] = {}
    for (a, b, d1, d2, _), c in op.terms.items():
        if d1 + d2 == top:
            lead[b] = lead.get(b, 0) + c
    c0 = lead.get(0)
    if not c0 or set(lead) - {0, 2}:
        raise ArithmeticError("leading symbol is not of the form theta^n (1 - lambda y)")
    return -lead.get(2, Fraction(0)) / c0


def yukawa_y(spec, n: int, n0: int, lam: Fraction) -> Series:
    """n0 / ((1 - lam y) F0^2) * (dlog y / dt)^3 as a series in y."""
    F0, F1 = periods(spec, n)
    ratio = _mul(F1, _inv(F0, n), n)
    dt = _theta(ratio)
    dt[0] += 1
    inv_dt = _inv(dt, n)
    cube = _mul(_mul(inv_dt, inv_dt, n), inv_dt, n)
    geo = [lam ** k for k in range(n)]
    k = _mul(_mul(geo, _inv(_mul(F0, F0, n), n), n), cube, n)
    return [n0 * c for c in k]


@dataclass
class InstantonTable:
    model_id: str
    n0: int
    numbers: Dict[int, Fraction]
    discriminant: Fraction
    mirror_map: List[Fraction]
    oracle_n1: int = 0
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def instanton_numbers(spec, d_max: int = 3) -> InstantonTable:
    spec = get_model(spec)
    if not spec.is_calabi_yau:
        raise NotCalabiYauError("instanton numbers need a Calabi-Yau model, got %s" % spec.model_id)
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    n = d_max + 1
    n0 = 1
    for a in spec.y_twists:
        n0 *= a
    lam = discriminant(spec)
    q = mirror_map(spec, n)
    y_of_q = _revert(q, n)
    K = _compose(yukawa_y(spec, n, n0, lam), y_of_q, n)
    nums: Dict[int, Fraction] = {}
    for m in range(1, n):
        rest = sum(nums[d] * d ** 3 for d in range(1, m) if m % d == 0)
        nums[m] = (K[m] - rest) / Fraction(m ** 3)
    table = InstantonTable(spec.model_id, n0, nums, lam, q)
    table.oracle_n1 = lines_oracle(spec)
    table.checks["n0_bezout"] = K[0] == n0
    table.checks["integral"] = all(v.denominator == 1 for v in nums.values())
    table.checks["oracle_n1"] = nums.get(1) == table.oracle_n1
    table.checks["mirror_map_unit"] = len(q) > 1 and q[1] == 1
    return table
