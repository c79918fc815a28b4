"""Transcriptions of the printed operators, series data and recursions.

Everything here is data as typeset, including its slips; reconcile.py
compares it against the derived objects.  The X-side operators of the
two Calabi-Yau models are printed with z = 1 and with q_k to the right.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Tuple

from .algebra import RatFuncZ
from .operators import DiffOp
from .series import FRAME_Q, FRAME_XY

__all__ = [
    "Dual", "PrintedOperator", "PrintedFactorization", "PrintedIbar",
    "PrintedRecursion", "printed_operators", "printed_transformed",
    "printed_factorization", "printed_ibar", "printed_recursions",
]


@dataclass(frozen=True)
class PrintedOperator:
    name: str
    text: str
    op: DiffOp
    z_free: bool  # typeset without z (to be compared after homogenizing)


@dataclass(frozen=True)
class PrintedFactorization:
    text: str
    lhs: Tuple[Tuple[DiffOp, str], ...]  # (left multiplier, operator name)
    rhs: Tuple[Tuple[DiffOp, str], ...]


@dataclass(frozen=True)
class PrintedIbar:
    """Ibar^Y data: prefactor classes, numerator slots, normalizing factors.

    A slot (c, (a_i, a_j), e) stands for prod_{m<=a_i*i+a_j*j}(c p + m z)^e;
    a normalizer (d, e) for prod_{m<=0}(d p + m z)^e in the denominator.
    Normalizers are listed one factor at a time so each can be toggled alone.
    """
    text: str
    euler: Tuple[int, ...]
    slots: Tuple[Tuple[int, Tuple[int, int], int], ...]
    normalizers: Tuple[Tuple[int, int], ...]


class Dual:
    """a + b u over Q(z) with u^2 = 0; just enough arithmetic for recursions."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = RatFuncZ.coerce(a)
        self.b = RatFuncZ.coerce(b)

    @staticmethod
    def lift(v) -> "Dual":
        return v if isinstance(v, Dual) else Dual(v)

    def __add__(self, o):
        o = Dual.lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-Dual.lift(o))

    def __rsub__(self, o):
        return Dual.lift(o) - self

    def __mul__(self, o):
        o = Dual.lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Dual(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, o):
        o = Dual.lift(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return "Dual(%s, %s)" % (self.a, self.b)


U = Dual(0, 1)
Z = RatFuncZ.zpow(1)
HALF = Fraction(1, 2)

# residual(i, j, C, u, z): lhs - rhs of the relation at (i, j); C(i, j) -> Dual
Residual = Callable[[int, int, Callable[[int, int], Dual], Dual, object], Dual]


@dataclass(frozen=True)
class PrintedRecursion:
    name: str
    text: str
    residual: Residual
    adopted_text: str
    adopted: Residual
    z_free: bool


def _q_ops():
    return DiffOp.generators(FRAME_Q)


def _xy_ops():
    return DiffOp.generators(FRAME_XY)


def printed_operators(model_id: str) -> Dict[str, PrintedOperator]:
    q1, q2, d1, d2, z = _q_ops()
    if model_id == "local":
        return {
            "Delta1": PrintedOperator(
                "Delta1", "(z dq1)^3 - 4 q1 (2 z dq1 + z)^2",
                (z * d1) ** 3 - 4 * q1 * (2 * z * d1 + z) ** 2, False),
            "Delta2": PrintedOperator(
                "Delta2", "z dq2 (z dq2 - z dq1) - q2",
                z * d2 * (z * d2 - z * d1) - q2, False),
        }
    if model_id == "t24":
        return {
            "Delta1": PrintedOperator(
                "Delta1", "dq1^5 - 4 dq1 (dq1+dq2)(2dq1-1)(dq2-dq1+1)(2dq1+2dq2-1) q1",
                d1 ** 5 - 4 * d1 * (d1 + d2) * (2 * d1 - 1) * (d2 - d1 + 1) * (2 * d1 + 2 * d2 - 1) * q1,
                True),
            "Delta2": PrintedOperator(
                "Delta2", "dq2 (dq2 - dq1) - 2 (dq1+dq2)(2dq1+2dq2-1) q2",
                d2 * (d2 - d1) - 2 * (d1 + d2) * (2 * d1 + 2 * d2 - 1) * q2, True),
            "L": PrintedOperator(
                "L", "(2dq1^3 - 2dq1^2 dq2 + dq1 dq2^2) - 8(2dq1-1)(dq2-dq1+1)(2dq2+2dq1-1) q1"
                     " - 2 dq1 dq2 (2dq1+2dq2-1) q2",
                (2 * d1 ** 3 - 2 * d1 ** 2 * d2 + d1 * d2 ** 2)
                - 8 * (2 * d1 - 1) * (d2 - d1 + 1) * (2 * d2 + 2 * d1 - 1) * q1
                - 2 * d1 * d2 * (2 * d1 + 2 * d2 - 1) * q2, True),
        }
    if model_id == "t33":
        cubic = 36 * d1 ** 3 + 45 * d1 ** 2 * d2 + 25 * d1 * d2 ** 2 + 5 * d2 ** 3
        return {
            "Delta1": PrintedOperator(
                "Delta1", "dq1^5 - q1 (dq2-dq1)(2dq1+dq2+1)^2 (2dq1+dq2+2)^2",
                d1 ** 5 - q1 * (d2 - d1) * (2 * d1 + d2 + 1) ** 2 * (2 * d1 + d2 + 2) ** 2, True),
            "Delta2": PrintedOperator(
                "Delta2", "dq2 (dq2 - dq1) - q2 (2dq2+dq1+1)^2",
                d2 * (d2 - d1) - q2 * (2 * d2 + d1 + 1) ** 2, True),
            "L": PrintedOperator(
                "L", "9dq1^3 - 5dq2^3 - 36(dq2-dq1+1)(2dq1+dq2-1)^2 q1"
                     " + (36dq1^3 + 45dq1^2 dq2 + 25dq1 dq2^2 + 5dq2^3) q2",
                9 * d1 ** 3 - 5 * d2 ** 3 - 36 * (d2 - d1 + 1) * (2 * d1 + d2 - 1) ** 2 * q1
                + cubic * q2, True),
        }
    raise KeyError(model_id)


def printed_transformed(model_id: str) -> Dict[str, PrintedOperator]:
    """Operators after q1 -> 1/x, q2 -> x y; a stray q1 is read as 1/x."""
    x, y, dx, dy, z = _xy_ops()
    xinv = DiffOp.var(FRAME_XY, 0, -1)
    D1 = dy - dx
    if model_id == "local":
        return {
            "Delta1'": PrintedOperator(
                "Delta1'", "x (z dy - z dx)^3 - 4 (2 (z dy - z dx) + z)^2",
                x * (z * D1) ** 3 - 4 * (2 * z * D1 + z) ** 2, False),
            "Delta2'": PrintedOperator(
                "Delta2'", "(z dy)(z dx) - x y", (z * dy) * (z * dx) - x * y, False),
        }
    if model_id == "t24":
        return {
            "Delta1'": PrintedOperator(
                "Delta1'", "(dy-dx)^5 - 4 (dy-dx)(2dy-dx)(2dy-2dx-1)(dx+1)(4dy-2dx-1) x^-1",
                D1 ** 5 - 4 * D1 * (2 * dy - dx) * (2 * dy - 2 * dx - 1) * (dx + 1)
                * (4 * dy - 2 * dx - 1) * xinv, True),
            "Delta2'": PrintedOperator(
                "Delta2'", "dy dx - 2 (2dy-dx)(4dy-2dx-1) x y",
                dy * dx - 2 * (2 * dy - dx) * (4 * dy - 2 * dx - 1) * x * y, True),
            "L'": PrintedOperator(
                "L'", "(2(dy-dx)^3 - 2(dy-dx)^2 dy + (dy-dx) dy^2) - 8(2dy-2dx-1)(dx+1)(4dy-2dx-1) q1"
                      " - 2 (dy-dx) dy (4dy-2dx-1) x y",
                (2 * D1 ** 3 - 2 * D1 ** 2 * dy + D1 * dy ** 2)
                - 8 * (2 * dy - 2 * dx - 1) * (dx + 1) * (4 * dy - 2 * dx - 1) * xinv
                - 2 * D1 * dy * (4 * dy - 2 * dx - 1) * x * y, True),
        }
    if model_id == "t33":
        cubic = 36 * D1 ** 3 + 45 * D1 ** 2 * dy + 25 * D1 * dy ** 2 + 5 * dy ** 3
        return {
            "Delta1'": PrintedOperator(
                "Delta1'", "x (dy-dx)^5 - dx (3dy-2dx+1)^2 (3dy-2dx+2)^2",
                x * D1 ** 5 - dx * (3 * dy - 2 * dx + 1) ** 2 * (3 * dy - 2 * dx + 2) ** 2, True),
            "Delta2'": PrintedOperator(
                "Delta2'", "dy dx - x y (3dy-2dx+1)^2",
                dy * dx - x * y * (3 * dy - 2 * dx + 1) ** 2, True),
            "L'": PrintedOperator(
                "L'", "9(dy-dx)^3 - 5dy^3 - 36(dx+1)(3dy-2dx-1)^2 x^-1"
                      " + (36(dy-dx)^3 + 45(dy-dx)^2 dy + 25(dy-dx) dy^2 + 5dy^3) x y",
                9 * D1 ** 3 - 5 * dy ** 3 - 36 * (dx + 1) * (3 * dy - 2 * dx - 1) ** 2 * xinv
                + cubic * x * y, True),
        }
    raise KeyError(model_id)


def printed_factorization(model_id: str):
    """The printed identity relating Delta1, Delta2 and L, or None."""
    q1, q2, d1, d2, z = _q_ops()
    one = DiffOp.const(FRAME_Q, 1)
    if model_id == "t24":
        return PrintedFactorization(
            "2 Delta1 + dq1^2 dq2 Delta2 = (dq1 + dq2) dq1 L",
            ((2 * one, "Delta1"), (d1 ** 2 * d2, "Delta2")),
            (((d1 + d2) * d1, "L"),))
    if model_id == "t33":
        cubic = 36 * d1 ** 3 + 45 * d1 ** 2 * d2 + 25 * d1 * d2 ** 2 + 5 * d2 ** 3
        return PrintedFactorization(
            "36 Delta1 - (36dq1^3 + 45dq1^2 dq2 + 25dq1 dq2^2 + 5dq2^3) Delta2 = (2dq1 + dq2)^2 L",
            ((36 * one, "Delta1"), (-cubic, "Delta2")),
            (((2 * d1 + d2) ** 2, "L"),))
    return None


_IBAR = {
    "local": PrintedIbar(
        "(2p)(2p) y^{p/z} sum x^i y^j prod_{m<=0}(p+mz)^5 prod_{m<=2j-2i}(2p+mz)^2"
        " / [prod_{m<=j-i}(p+mz)^5 prod_{m=1}^{j}(p+mz) prod_{m=1}^{i}(mz) prod_{m<=0}(2p+mz)^2]",
        (2, 2), ((2, (-2, 2), 2),), ((2, 1), (2, 1))),
    "t24": PrintedIbar(
        "(2p)(4p) y^{p/z} sum x^i y^j prod_{m<=0}(p+mz)^5 prod_{m<=2j-2i}(2p+mz) prod_{m<=4j-2i}(2p+mz)"
        " / [prod_{m<=j-i}(p+mz)^5 prod_{m=1}^{j}(p+mz) prod_{m=1}^{i}(mz) prod_{m<=0}(2p+mz)^2]",
        (2, 4), ((2, (-2, 2), 1), (2, (-2, 4), 1)), ((2, 1), (2, 1))),
    "t33": PrintedIbar(
        "(3p)^2 y^{p/z} sum x^i y^j prod_{m<=0}(p+mz)^5 prod_{m<=3j-2i}(3p+mz)^2"
        " / [prod_{m<=j-i}(p+mz)^5 prod_{m=1}^{j}(p+mz) prod_{m=1}^{i}(mz) prod_{m<=0}(2p+mz)^2]",
        (3, 3), ((3, (-2, 3), 2),), ((2, 1), (2, 1))),
}


def printed_ibar(model_id: str) -> PrintedIbar:
    return _IBAR[model_id]


def _rec_local():
    def x_printed(i, j, C, u, z):
        return C(i - 1, j) * (j - i + HALF - u) ** 3 * z - 16 * C(i, j) * (j - i - u) ** 2

    def x_adopted(i, j, C, u, z):
        return C(i - 1, j) * (j - i + HALF - u) ** 3 - 16 * C(i, j) * (j - i - u) ** 2 * (i + HALF + u)

    def xy_printed(i, j, C, u, z):
        return C(i - 1, j - 1) - C(i, j) * (z * j) * (z * i + HALF + u)

    def xy_adopted(i, j, C, u, z):
        return C(i - 1, j - 1) - C(i, j) * (z * z * j) * (i + HALF + u)

    return (
        PrintedRecursion("x-shift", "C[i-1,j] (j-i+1/2-u)^3 z = 16 C[i,j] (j-i-u)^2", x_printed,
                         "C[i-1,j] (j-i+1/2-u)^3 = 16 C[i,j] (j-i-u)^2 (i+1/2+u)", x_adopted, False),
        PrintedRecursion("xy-shift", "C[i-1,j-1] = C[i,j] (z j)(z i+1/2+u)", xy_printed,
                         "C[i-1,j-1] = C[i,j] z^2 j (i+1/2+u)", xy_adopted, False),
    )


def _rec_t24():
    def x_printed(i, j, C, u, z):
        return (C(i, j) * (j - i - HALF - u) ** 4
                - C(i + 1, j) * (2 * j - u - i - HALF) * (2 * j - 2 * u - 2 * i - 2)
                * (u + i + Fraction(3, 2)) * (4 * j - 2 * u - 2 * i - 2))

    def x_adopted(i, j, C, u, z):
        return (C(i, j) * (j - i - HALF - u) ** 4
                - 4 * C(i + 1, j) * (2 * j - u - i - HALF) * (2 * j - 2 * u - 2 * i - 2)
                * (u + i + Fraction(3, 2)) * (4 * j - 2 * u - 2 * i - 2))

    def xy_printed(i, j, C, u, z):
        return ((4 * j - 2 * u - 2 * i - 1) * (4 * j - 2 * i - 2 * u - 2) * C(i - 1, j - 1)
                - C(i, j) * j * (i + HALF + u))

    return (
        PrintedRecursion(
            "x-shift", "C[i,j] (j-i-1/2-u)^4 = C[i+1,j] (2j-u-i-1/2)(2j-2u-2i-2)(u+i+3/2)(4j-2u-2i-2)",
            x_printed,
            "C[i,j] (j-i-1/2-u)^4 = 4 C[i+1,j] (2j-u-i-1/2)(2j-2u-2i-2)(u+i+3/2)(4j-2u-2i-2)",
            x_adopted, True),
        PrintedRecursion(
            "xy-shift", "(4j-2u-2i-1)(4j-2i-2u-2) C[i-1,j-1] = C[i,j] j (i+1/2+u)",
            xy_printed, "(4j-2u-2i-1)(4j-2i-2u-2) C[i-1,j-1] = C[i,j] j (i+1/2+u)",
            xy_printed, True),
    )


def _rec_t33():
    def x_printed(i, j, C, u, z):
        return (C(i - 1, j) * (j - u + HALF) ** 5
                - C(i, j) * (i + u + HALF) * (3 * j - 2 * i - 2 * u) * (3 * j - 2 * i - 2 * u + 1) ** 2)

    def x_adopted(i, j, C, u, z):
        return (C(i - 1, j) * (j - i - u + HALF) ** 5
                - C(i, j) * (i + u + HALF) * (3 * j - 2 * i - 2 * u) ** 2 * (3 * j - 2 * i - 2 * u + 1) ** 2)

    def xy_printed(i, j, C, u, z):
        return (3 * j - 2 * i - 2 * u - 1) ** 2 * C(i - 1, j - 1) - C(i, j) * j * (i + HALF + u)

    return (
        PrintedRecursion(
            "x-shift", "C[i-1,j] (j-u+1/2)^5 = C[i,j] (i+u+1/2)(3j-2i-2u)(3j-2i-2u+1)^2",
            x_printed, "C[i-1,j] (j-i-u+1/2)^5 = C[i,j] (i+u+1/2)(3j-2i-2u)^2 (3j-2i-2u+1)^2",
            x_adopted, True),
        PrintedRecursion(
            "xy-shift", "(3j-2i-2u-1)^2 C[i-1,j-1] = C[i,j] j (i+1/2+u)",
            xy_printed, "(3j-2i-2u-1)^2 C[i-1,j-1] = C[i,j] j (i+1/2+u)", xy_printed, True),
    )


def printed_recursions(model_id: str):
    return {"local": _rec_local, "t24": _rec_t24, "t33": _rec_t33}[model_id]()
