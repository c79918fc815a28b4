"""Normal-ordered log-differential operators and their action on LogSeries.

A term ``(a, b, d1, d2, k) -> c`` stands for
``c * v1^(a/2) v2^(b/2) z^k delta1^d1 delta2^d2``: variables sit to the
left of the derivations, exponents are doubled as in ``series``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .algebra import RatFuncZ
from .series import (FRAME_Q, FRAME_XY, DualCoeff, FrameMismatchError,
                     HalfInt, LogSeries, WindowError)

__all__ = [
    "DiffOp", "OperatorSystem", "op_compose", "op_apply", "change_frame",
    "check_identity", "homogenize", "at_z1", "normalize_left",
]

OpKey = Tuple[int, int, int, int, int]


class DiffOp:
    __slots__ = ("frame", "terms")

    def __init__(self, frame, terms: Mapping[OpKey, Fraction] = None):
        self.frame = tuple(frame)
        self.terms: Dict[OpKey, Fraction] = {}
        for k, v in (terms or {}).items():
            if v:
                self.terms[tuple(k)] = Fraction(v)

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, frame, c=1) -> "DiffOp":
        return cls(frame, {(0, 0, 0, 0, 0): c})

    @classmethod
    def delta(cls, frame, i: int) -> "DiffOp":
        return cls(frame, {(0, 0, 1, 0, 0) if i == 0 else (0, 0, 0, 1, 0): 1})

    @classmethod
    def var(cls, frame, i: int, power=1) -> "DiffOp":
        t = HalfInt.of(power).twice_value
        return cls(frame, {(t, 0, 0, 0, 0) if i == 0 else (0, t, 0, 0, 0): 1})

    @classmethod
    def zed(cls, frame) -> "DiffOp":
        return cls(frame, {(0, 0, 0, 0, 1): 1})

    @classmethod
    def generators(cls, frame):
        """(v1, v2, delta1, delta2, z) as operators."""
        return (cls.var(frame, 0), cls.var(frame, 1), cls.delta(frame, 0),
                cls.delta(frame, 1), cls.zed(frame))

    # arithmetic ------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, DiffOp):
            if other.frame != self.frame:
                raise FrameMismatchError("%s vs %s" % (self.frame, other.frame))
            return other
        if isinstance(other, (int, Fraction)):
            return DiffOp.const(self.frame, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return DiffOp(self.frame, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.frame, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DiffOp(self.frame, {k: v * other for k, v in self.terms.items()})
        return op_compose(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DiffOp(self.frame, {k: v * other for k, v in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        out = DiffOp.const(self.frame, 1)
        for _ in range(n):
            out = op_compose(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffOp.const(self.frame, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.frame == other.frame and self.terms == other.terms

    def __hash__(self):
        return hash((self.frame, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # structure ---------------------------------------------------------------
    def shifts(self):
        return sorted({(a, b) for a, b, _, _, _ in self.terms})

    def order(self) -> int:
        return max((d1 + d2 for _, _, d1, d2, _ in self.terms), default=0)

    def groups(self) -> Dict[Tuple[int, int], Dict[Tuple[int, int, int], Fraction]]:
        """Terms grouped by variable shift: shift -> {(d1, d2, k): c}."""
        out: Dict[Tuple[int, int], Dict[Tuple[int, int, int], Fraction]] = {}
        for (a, b, d1, d2, k), c in self.terms.items():
            out.setdefault((a, b), {})[(d1, d2, k)] = c
        return out

    def __repr__(self):
        return "DiffOp(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        v1, v2 = self.frame
        d1n, d2n = "d" + v1, "d" + v2
        parts = []
        for (a, b, d1, d2, k), c in sorted(self.terms.items(), reverse=True):
            fs = []
            for name, t in ((v1, a), (v2, b)):
                if t:
                    e = Fraction(t, 2)
                    fs.append(name if e == 1 else "%s^(%s)" % (name, e))
            if k:
                fs.append("z" if k == 1 else "z^%d" % k)
            for name, e in ((d1n, d1), (d2n, d2)):
                if e:
                    fs.append(name if e == 1 else "%s^%d" % (name, e))
            mono = "*".join(fs)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")


def op_compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Normal-ordered product a*b using delta v^s = v^s (delta + s)."""
    if a.frame != b.frame:
        raise FrameMismatchError("%s vs %s" % (a.frame, b.frame))
    out: Dict[OpKey, Fraction] = {}
    expand_cache: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}

    def shifted(power, twice_shift):
        # (delta + s)^power = sum_j C(power, j) s^(power-j) delta^j
        key = (power, twice_shift)
        hit = expand_cache.get(key)
        if hit is None:
            s = Fraction(twice_shift, 2)
            hit = [(j, comb(power, j) * s ** (power - j)) for j in range(power + 1)
                   if s != 0 or j == power]
            expand_cache[key] = hit
        return hit

    for (a1, b1, p1, q1, k1), c1 in a.terms.items():
        for (a2, b2, p2, q2, k2), c2 in b.terms.items():
            c = c1 * c2
            for j1, e1 in shifted(p1, a2):
                for j2, e2 in shifted(q1, b2):
                    key = (a1 + a2, b1 + b2, j1 + p2, j2 + q2, k1 + k2)
                    out[key] = out.get(key, 0) + c * e1 * e2
    return DiffOp(a.frame, out)


def _delta_once(f: LogSeries, i: int) -> LogSeries:
    out: Dict = {}
    for (a, b, l1, l2), v in f.terms.items():
        e = a if i == 0 else b
        if e:
            t = v.scale(Fraction(e, 2))
            w = out.get((a, b, l1, l2))
            out[(a, b, l1, l2)] = t if w is None else w + t
        lp = l1 if i == 0 else l2
        if lp:
            k = (a, b, l1 - 1, l2) if i == 0 else (a, b, l1, l2 - 1)
            t = v.scale(lp)
            w = out.get(k)
            out[k] = t if w is None else w + t
    return f.like(out)


def op_apply(A: DiffOp, f: LogSeries) -> LogSeries:
    """Apply A to f; the result is trusted (and truncated) to the shrunken window."""
    if A.frame != f.frame:
        raise FrameMismatchError("%s vs %s" % (A.frame, f.frame))
    if not A.terms:
        return f.like({})
    smin = min(min(a + b for a, b, _, _, _ in A.terms), 0)
    new_order = (2 * f.order + smin) // 2
    if new_order < 0:
        raise WindowError("operator shift %s exceeds series order %d" % (Fraction(smin, 2), f.order))
    lim = 2 * new_order
    cache = {(0, 0): f}

    def powers(d1, d2):
        hit = cache.get((d1, d2))
        if hit is None:
            if d2:
                hit = _delta_once(powers(d1, d2 - 1), 1)
            else:
                hit = _delta_once(powers(d1 - 1, 0), 0)
            cache[(d1, d2)] = hit
        return hit

    zcache: Dict[Tuple[int, Fraction], RatFuncZ] = {}
    out: Dict = {}
    for (sa, sb, d1, d2, k), c in A.terms.items():
        g = powers(d1, d2)
        s = zcache.get((k, c))
        if s is None:
            s = zcache[(k, c)] = RatFuncZ.zpow(k, c)
        for (a, b, l1, l2), v in g.terms.items():
            na, nb = a + sa, b + sb
            if na + nb > lim:
                continue
            if na < f.floor or nb < f.floor:
                raise WindowError("window underflow: exponent (%s, %s) needs floor <= %s"
                                  % (Fraction(na, 2), Fraction(nb, 2),
                                     Fraction(min(na, nb), 2)))
            t = v.scale(s)
            key = (na, nb, l1, l2)
            w = out.get(key)
            out[key] = t if w is None else w + t
    return f.like(out, order=new_order)


def change_frame(A: DiffOp) -> DiffOp:
    """q1 -> 1/x, q2 -> x*y, delta_q1 -> delta_y - delta_x, delta_q2 -> delta_y."""
    if A.frame != FRAME_Q:
        raise FrameMismatchError("change_frame expects the (q1, q2) frame, got %s" % (A.frame,))
    out: Dict[OpKey, Fraction] = {}
    for (a, b, d1, d2, k), c in A.terms.items():
        # (delta_y - delta_x)^d1 * delta_y^d2
        for j in range(d1 + 1):
            coef = c * comb(d1, j) * (-1) ** j
            key = (b - a, b, j, d1 - j + d2, k)
            out[key] = out.get(key, 0) + coef
    return DiffOp(FRAME_XY, out)


def homogenize(A: DiffOp) -> DiffOp:
    """Homogeneous lift of the z = 1 specialization: delta -> z*delta, 1 -> z.

    Each variable-shift group of degree n (its top delta-degree) is read as
    a polynomial in z*delta and z of that degree, so every term gets z^n.
    """
    out: Dict[OpKey, Fraction] = {}
    for shift, grp in at_z1(A).groups().items():
        top = max(d1 + d2 for d1, d2, _ in grp)
        for (d1, d2, _), c in grp.items():
            key = shift + (d1, d2, top)
            out[key] = out.get(key, 0) + c
    return DiffOp(A.frame, out)


def at_z1(A: DiffOp) -> DiffOp:
    """Specialize z = 1."""
    out: Dict[OpKey, Fraction] = {}
    for (a, b, d1, d2, k), c in A.terms.items():
        key = (a, b, d1, d2, 0)
        out[key] = out.get(key, 0) + c
    return DiffOp(A.frame, out)


def normalize_left(A: DiffOp) -> DiffOp:
    """Left-multiply by a monomial and a scalar: min exponents 0, leading coeff 1."""
    if not A.terms:
        return A
    ma = min(a for a, _, _, _, _ in A.terms)
    mb = min(b for _, b, _, _, _ in A.terms)
    mono = DiffOp(A.frame, {(-ma, -mb, 0, 0, 0): 1})
    B = op_compose(mono, A)
    lead = B.terms[max(B.terms)]
    return B * (1 / lead)


def check_identity(lhs: Sequence[Tuple[DiffOp, DiffOp]],
                   rhs: Sequence[Tuple[DiffOp, DiffOp]]) -> DiffOp:
    """Residual sum(m*P for lhs) - sum(m*P for rhs); zero means the identity holds."""
    frame = (lhs or rhs)[0][1].frame
    res = DiffOp(frame)
    for m, P in lhs:
        res = res + op_compose(m, P)
    for m, P in rhs:
        res = res - op_compose(m, P)
    return res


@dataclass
class OperatorSystem:
    model_id: str
    frame: Tuple[str, str]
    operators: Dict[str, DiffOp] = field(default_factory=dict)
    provenance: str = "derived"

    def __post_init__(self):
        for name, op in self.operators.items():
            if op.frame != tuple(self.frame):
                raise FrameMismatchError("operator %s in frame %s" % (name, op.frame))

    def transformed(self) -> "OperatorSystem":
        return OperatorSystem(self.model_id, FRAME_XY,
                              {n + "'": change_frame(op) for n, op in self.operators.items()},
                              provenance="transformed")
