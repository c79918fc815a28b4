"""Transition models and the series / GKZ-operator factory.

Every hypergeometric coefficient is assembled as a multiset of linear
factors ``(class + m z)^e``.  Bare classes (``m = 0``) are collected before
evaluation so quotients such as ``p^5 / (2p)^2`` cancel exactly instead of
attempting to invert a nilpotent element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (CohElem, RatFuncZ, RingPresentation, x_ambient_ring,
                      y_ambient_ring)
from .operators import DiffOp, OperatorSystem, change_frame
from .series import (DEFAULT_ORDER, FRAME_Q, FRAME_XY, DualCoeff, LogSeries,
                     exp_prefactor, series_mul)

__all__ = [
    "ModelSpec", "MODELS", "get_model", "FactorProduct", "gamma_ratio",
    "build_I_X", "build_I_Y", "build_Ibar_Y_structural", "derive_gkz",
    "UnknownModelError",
]


class UnknownModelError(KeyError):
    pass


Form = Tuple[Tuple[Fraction, ...], int]  # (generator coefficients, m) for class + m z


class FactorProduct:
    """Multiset of linear factors with integer multiplicities."""

    def __init__(self, ngens: int):
        self.ngens = ngens
        self.scalar = Fraction(1)
        self.factors: Dict[Form, int] = {}
        self.vanishes = False

    def mul(self, coeffs: Sequence, m: int, e: int = 1) -> "FactorProduct":
        if e == 0:
            return self
        coeffs = tuple(Fraction(c) for c in coeffs)
        if m == 0:
            lead = next((c for c in coeffs if c), None)
            if lead is None:
                if e > 0:
                    self.vanishes = True
                    return self
                raise ZeroDivisionError("division by the zero factor")
            self.scalar *= lead ** e
            coeffs = tuple(c / lead for c in coeffs)
        key = (coeffs, m)
        n = self.factors.get(key, 0) + e
        if n:
            self.factors[key] = n
        else:
            self.factors.pop(key, None)
        return self

    def evaluate(self, ring: RingPresentation) -> CohElem:
        if self.vanishes:
            return ring.zero()
        out = ring.scalar(RatFuncZ.const(self.scalar))
        # bare (nilpotent) factors first: a zero product short-circuits
        for (coeffs, m), e in sorted(self.factors.items(), key=lambda kv: kv[0][1] != 0):
            lin = ring.zero()
            for g, c in zip(ring.gen_names, coeffs):
                if c:
                    lin = lin + ring.gen(g).scale(RatFuncZ.const(c))
            if m:
                lin = lin + ring.scalar(RatFuncZ.zpow(1, m))
            if e < 0:
                if m == 0:
                    raise ZeroDivisionError("uncancelled nilpotent factor in a denominator")
                lin = lin.inverse()
                e = -e
            for _ in range(e):
                out = out * lin
                if not out:
                    return out
        return out


def gamma_ratio(fp: FactorProduct, coeffs, k: int, power: int = 1) -> FactorProduct:
    """Multiply by ratio(A, k)^power where ratio(A, k) = prod_{m<=k}(A+mz) / prod_{m<=0}(A+mz)."""
    if k >= 0:
        for m in range(1, k + 1):
            fp.mul(coeffs, m, power)
    else:
        for m in range(k + 1, 1):
            fp.mul(coeffs, m, -power)
    return fp


@dataclass(frozen=True)
class ModelSpec:
    """Weight data of one degree-4 transition model.

    X-side classes are coefficient vectors over (h, xi); the pairing of
    a h + b xi with a curve degree (d1, d2) is a*d1 + b*d2.
    """

    model_id: str
    x_twists: Tuple[Tuple[int, int], ...]
    y_twists: Tuple[int, ...]
    x_divisors: Tuple[Tuple[int, int], ...] = ((1, 0),) * 5 + ((0, 1), (-1, 1))
    doubly_infinite: Tuple[bool, ...] = (False,) * 6 + (True,)
    y_divisors: Tuple[int, ...] = (1,) * 6
    description: str = ""

    @property
    def x_ring(self) -> RingPresentation:
        return x_ambient_ring()

    @property
    def y_ring(self) -> RingPresentation:
        return y_ambient_ring()

    @property
    def is_calabi_yau(self) -> bool:
        return sum(self.y_twists) == sum(self.y_divisors)

    def anticanonical_defect(self) -> Tuple[int, int]:
        """(sum of divisor classes) - (sum of twist classes) on the X side."""
        da = sum(a for a, _ in self.x_divisors) - sum(a for a, _ in self.x_twists)
        db = sum(b for _, b in self.x_divisors) - sum(b for _, b in self.x_twists)
        return da, db

    def y_defect(self) -> int:
        return sum(self.y_divisors) - sum(self.y_twists)

    def euler_x(self, ring=None) -> CohElem:
        ring = ring or self.x_ring
        fp = FactorProduct(2)
        for t in self.x_twists:
            fp.mul(t, 0)
        return fp.evaluate(ring)

    def euler_y(self) -> CohElem:
        fp = FactorProduct(1)
        for a in self.y_twists:
            fp.mul((a,), 0)
        return fp.evaluate(self.y_ring)

    def bar_class(self, cls: Tuple[int, int]) -> int:
        """Image of a h + b xi under h, xi -> p (so xi - h -> 0)."""
        return cls[0] + cls[1]


MODELS: Dict[str, ModelSpec] = {
    "local": ModelSpec("local", ((2, 0), (2, 0)), (2, 2),
                       description="P(K_E + O) vs (2,2) complete intersection in P^5"),
    "t24": ModelSpec("t24", ((2, 0), (2, 2)), (2, 4),
                     description="blow-up X_1 vs (2,4) complete intersection in P^5"),
    "t33": ModelSpec("t33", ((2, 1), (2, 1)), (3, 3),
                     description="blow-up X_2 vs (3,3) complete intersection in P^5"),
}


def get_model(model_id) -> ModelSpec:
    if isinstance(model_id, ModelSpec):
        return model_id
    try:
        return MODELS[model_id]
    except KeyError:
        raise UnknownModelError("unknown model %r (choose from %s)"
                                % (model_id, ", ".join(MODELS))) from None


def _pair(cls, d) -> int:
    return cls[0] * d[0] + cls[1] * d[1]


def x_coefficient(spec: ModelSpec, d: Tuple[int, int]) -> CohElem:
    """e(V) * A_d for the X-side I-function."""
    fp = FactorProduct(2)
    for t in spec.x_twists:
        fp.mul(t, 0)
        gamma_ratio(fp, t, _pair(t, d))
    for D in spec.x_divisors:
        gamma_ratio(fp, D, _pair(D, d), -1)
    return fp.evaluate(spec.x_ring)


def y_coefficient(spec: ModelSpec, j: int) -> CohElem:
    """e(V) * A_j for the Y-side I-function."""
    fp = FactorProduct(1)
    for a in spec.y_twists:
        fp.mul((a,), 0)
        gamma_ratio(fp, (a,), a * j)
    for b in spec.y_divisors:
        gamma_ratio(fp, (b,), b * j, -1)
    return fp.evaluate(spec.y_ring)


def bar_coefficient(spec: ModelSpec, i: int, j: int) -> CohElem:
    """Ibar coefficient from the X data under d1 = j - i, d2 = j, h, xi -> p."""
    d = (j - i, j)
    fp = FactorProduct(1)
    for t in spec.x_twists:
        fp.mul((spec.bar_class(t),), 0)
        gamma_ratio(fp, (spec.bar_class(t),), _pair(t, d))
    for D in spec.x_divisors:
        gamma_ratio(fp, (spec.bar_class(D),), _pair(D, d), -1)
    return fp.evaluate(spec.y_ring)


def _prefactor_q(ring, order):
    return series_mul(exp_prefactor(ring.gen("h"), "q1", FRAME_Q, order),
                      exp_prefactor(ring.gen("xi"), "q2", FRAME_Q, order))


def build_I_X(spec, order: int = DEFAULT_ORDER) -> LogSeries:
    spec = get_model(spec)
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = spec.x_ring
    terms = {}
    for n in range(order + 1):
        for d1 in range(n + 1):
            c = x_coefficient(spec, (d1, n - d1))
            if c:
                terms[(2 * d1, 2 * (n - d1), 0, 0)] = DualCoeff(c)
    body = LogSeries(FRAME_Q, ring, order, terms)
    return series_mul(_prefactor_q(ring, order), body)


def build_I_Y(spec, order: int = DEFAULT_ORDER) -> LogSeries:
    """I^Y placed in the (x, y) frame with no x dependence."""
    spec = get_model(spec)
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = spec.y_ring
    terms = {(0, 2 * j, 0, 0): DualCoeff(y_coefficient(spec, j)) for j in range(order + 1)}
    body = LogSeries(FRAME_XY, ring, order, terms)
    return series_mul(exp_prefactor(ring.gen("p"), "y", FRAME_XY, order), body)


def build_Ibar_Y_structural(spec, order: int = DEFAULT_ORDER) -> LogSeries:
    """Ibar^Y obtained from the X weight data under the change of variables."""
    spec = get_model(spec)
    ring = spec.y_ring
    terms = {}
    for n in range(order + 1):
        for i in range(n + 1):
            c = bar_coefficient(spec, i, n - i)
            if c:
                terms[(2 * i, 2 * (n - i), 0, 0)] = DualCoeff(c)
    body = LogSeries(FRAME_XY, ring, order, terms)
    return series_mul(exp_prefactor(ring.gen("p"), "y", FRAME_XY, order), body)


def _hat(frame, cls) -> DiffOp:
    """The operator sum_k cls_k * z * delta_k."""
    _, _, d1, d2, z = DiffOp.generators(frame)
    out = DiffOp(frame)
    if len(cls) == 1:
        return z * d2 * cls[0]
    if cls[0]:
        out = out + z * d1 * cls[0]
    if cls[1]:
        out = out + z * d2 * cls[1]
    return out


def _box(frame, shift_var: DiffOp, lhs_classes, rhs_classes, pairings_lhs, pairings_rhs):
    z = DiffOp.zed(frame)
    one = DiffOp.const(frame, 1)
    left = one
    right = one
    for cls, l in pairings_lhs:
        H = _hat(frame, cls)
        if l > 0:  # divisor with positive pairing
            for r in range(l):
                left = left * (H - z * r)
        elif l < 0:  # twist with negative pairing
            for s in range(1, -l + 1):
                left = left * (H + z * s)
    for cls, l in pairings_rhs:
        H = _hat(frame, cls)
        if l > 0:  # twist with positive pairing
            for r in range(1, l + 1):
                right = right * (H + z * r)
        elif l < 0:  # divisor with negative pairing
            for r in range(l + 1, 1):
                right = right * (H + z * r)
    return left - shift_var * right


def derive_gkz(spec, frame: str = "q") -> OperatorSystem:
    """Box operators built from the termwise ratios A_{d+e}/A_d.

    frame: "q" (X side, variables q1, q2), "xy" (X side after the change
    of variables) or "y" (Y side, acting on the y variable of the (x, y) frame).
    """
    spec = get_model(spec)
    if frame == "xy":
        return derive_gkz(spec, "q").transformed()
    if frame == "y":
        _, y, _, _, _ = DiffOp.generators(FRAME_XY)
        divs = [((b,), b) for b in spec.y_divisors]
        twists = [((a,), a) for a in spec.y_twists]
        lhs = [c for c in divs if c[1] > 0] + [c for c in twists if c[1] < 0]
        rhs = [c for c in twists if c[1] > 0] + [c for c in divs if c[1] < 0]
        op = _box(FRAME_XY, y, None, None, lhs, rhs)
        return OperatorSystem(spec.model_id, FRAME_XY, {"Box_y": op}, "derived")
    if frame != "q":
        raise ValueError("frame must be 'q', 'xy' or 'y'")
    q1, q2, _, _, _ = DiffOp.generators(FRAME_Q)
    ops = {}
    for k, (e, qv) in enumerate((((1, 0), q1), ((0, 1), q2)), start=1):
        divs = [(D, _pair(D, e)) for D in spec.x_divisors]
        twists = [(T, _pair(T, e)) for T in spec.x_twists]
        lhs = [c for c in divs if c[1] > 0] + [c for c in twists if c[1] < 0]
        rhs = [c for c in twists if c[1] > 0] + [c for c in divs if c[1] < 0]
        ops["Box%d" % k] = _box(FRAME_Q, qv, None, None, lhs, rhs)
    return OperatorSystem(spec.model_id, FRAME_Q, ops, "derived")
