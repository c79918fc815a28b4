"""Schubert calculus on Gr(2, 6), the Grassmannian of lines in P^5."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

__all__ = ["SchubertClass", "pieri_sigma1", "mul_sigma11", "integrate",
           "sym_top_chern", "lines_oracle", "point_class_integral", "sigma1_power_integral"]

K = 4  # partitions fit in a 2 x 4 box
DIM = 8

SchubertClass = Dict[Tuple[int, int], Fraction]


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def pieri_sigma1(x: SchubertClass) -> SchubertClass:
    """sigma_1 * x: add one box."""
    out: SchubertClass = {}
    for (a, b), c in x.items():
        if a + 1 <= K:
            _add(out, (a + 1, b), c)
        if b + 1 <= a:
            _add(out, (a, b + 1), c)
    return out


def mul_sigma11(x: SchubertClass) -> SchubertClass:
    out: SchubertClass = {}
    for (a, b), c in x.items():
        if a + 1 <= K:
            _add(out, (a + 1, b + 1), c)
    return out


def integrate(x: SchubertClass) -> Fraction:
    return x.get((K, K), Fraction(0))


def _poly_mul(f, g):
    out = {}
    for (i, j), a in f.items():
        for (k, l), b in g.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v}


def sym_top_chern(n: int):
    """c_top(Sym^n S*) as a polynomial in e1 = sigma_1, e2 = sigma_11.

    Chern roots of Sym^n S* are k*alpha + (n-k)*beta; the symmetric product
    is rewritten in e1 = alpha + beta, e2 = alpha*beta by peeling off leading
    monomials.  Returns {(i, j): coeff} meaning sum coeff e1^i e2^j.
    """
    poly = {(0, 0): Fraction(1)}  # in alpha, beta
    for k in range(n + 1):
        poly = _poly_mul(poly, {(1, 0): Fraction(k), (0, 1): Fraction(n - k)})
        poly = {k2: v for k2, v in poly.items() if v}
    out = {}
    while poly:
        (a, b) = max(poly)
        c = poly[(a, b)]
        # e1^(a-b) e2^b has leading monomial alpha^a beta^b
        i, j = a - b, b
        out[(i, j)] = out.get((i, j), 0) + c
        term = {(0, 0): Fraction(1)}
        for _ in range(i):
            term = _poly_mul(term, {(1, 0): Fraction(1), (0, 1): Fraction(1)})
        for _ in range(j):
            term = _poly_mul(term, {(1, 1): Fraction(1)})
        for key, v in term.items():
            poly[key] = poly.get(key, 0) - c * v
        poly = {k2: v for k2, v in poly.items() if v}
    return out


def _evaluate(poly) -> SchubertClass:
    total: SchubertClass = {}
    for (i, j), c in poly.items():
        x: SchubertClass = {(0, 0): Fraction(1)}
        for _ in range(i):
            x = pieri_sigma1(x)
        for _ in range(j):
            x = mul_sigma11(x)
        for key, v in x.items():
            _add(total, key, c * v)
    return total


def point_class_integral() -> Fraction:
    return integrate({(K, K): Fraction(1)})


def sigma1_power_integral(n: int = DIM) -> Fraction:
    return integrate(_evaluate({(n, 0): Fraction(1)}))


@lru_cache(maxsize=None)
def _lines(degrees: Tuple[int, ...]) -> int:
    poly = {(0, 0): Fraction(1)}
    for n in degrees:
        poly = _poly_mul(poly, sym_top_chern(n))
    val = integrate(_evaluate(poly))
    if val.denominator != 1:
        raise ArithmeticError("non-integral line count %s" % val)
    return int(val)


def lines_oracle(spec) -> int:
    """Number of lines on the Y-side complete intersection in P^5."""
    from .models import get_model
    spec = get_model(spec)
    if not spec.is_calabi_yau:
        raise ValueError("lines_oracle needs a Calabi-Yau model, got %s" % spec.model_id)
    return _lines(tuple(spec.y_twists))
