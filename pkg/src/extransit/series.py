"""Truncated log-series in two variables with dual-number coefficients.

A term is keyed by ``(a, b, l1, l2)`` meaning ``v1^(a/2) v2^(b/2)
log(v1)^l1 log(v2)^l2``: exponents are stored doubled so half-integers
stay exact integers.  Coefficients are ``DualCoeff`` values
``real + inf*u`` with ``u^2 = 0``.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .algebra import CohElem, RatFuncZ, RingMismatchError, RingPresentation

__all__ = [
    "HalfInt", "DualCoeff", "LogSeries", "FrameMismatchError", "WindowError",
    "series_mul", "exp_prefactor", "FRAME_Q", "FRAME_XY", "DEFAULT_ORDER",
    "DEFAULT_FLOOR",
]

FRAME_Q = ("q1", "q2")
FRAME_XY = ("x", "y")
DEFAULT_ORDER = 6
DEFAULT_FLOOR = -8  # twice the exponent floor -4

Key = Tuple[int, int, int, int]


class FrameMismatchError(ValueError):
    pass


class WindowError(KeyError):
    """A key or an operation falls outside the series' truncation window."""


class HalfInt:
    __slots__ = ("twice_value",)

    def __init__(self, twice_value: int):
        self.twice_value = int(twice_value)

    @classmethod
    def of(cls, v) -> "HalfInt":
        if isinstance(v, HalfInt):
            return v
        f = Fraction(v) * 2
        if f.denominator != 1:
            raise ValueError("%s is not a half-integer" % v)
        return cls(int(f))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def is_integral(self) -> bool:
        return self.twice_value % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice_value + HalfInt.of(other).twice_value)

    def __sub__(self, other):
        return HalfInt(self.twice_value - HalfInt.of(other).twice_value)

    def __eq__(self, other):
        try:
            return self.twice_value == HalfInt.of(other).twice_value
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice_value < HalfInt.of(other).twice_value

    def __hash__(self):
        return hash(("HalfInt", self.twice_value))

    def __repr__(self):
        return "HalfInt(%s)" % self.value


class DualCoeff:
    """``real + inf*u`` over one RingPresentation, with ``u^2 = 0``."""

    __slots__ = ("real", "inf")

    def __init__(self, real: CohElem, inf: Optional[CohElem] = None):
        if inf is not None and inf.ring is not real.ring:
            raise RingMismatchError("dual parts live in different rings")
        self.real = real
        self.inf = inf if inf is not None and inf else None

    @property
    def infinitesimal(self) -> CohElem:
        return self.inf if self.inf is not None else self.real.ring.zero()

    @property
    def ring(self):
        return self.real.ring

    @classmethod
    def zero(cls, ring) -> "DualCoeff":
        return cls(ring.zero())

    @classmethod
    def u(cls, ring) -> "DualCoeff":
        return cls(ring.zero(), ring.one())

    def __bool__(self):
        return bool(self.real) or self.inf is not None

    def __add__(self, other):
        if self.inf is None:
            inf = other.inf
        elif other.inf is None:
            inf = self.inf
        else:
            inf = self.inf + other.inf
        return DualCoeff(self.real + other.real, inf)

    def __neg__(self):
        return DualCoeff(-self.real, None if self.inf is None else -self.inf)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, DualCoeff):
            return self.scale(other)
        real = self.real * other.real
        inf = None
        if self.inf is not None:
            inf = self.inf * other.real
        if other.inf is not None:
            t = self.real * other.inf
            inf = t if inf is None else inf + t
        return DualCoeff(real, inf)

    def scale(self, s) -> "DualCoeff":
        if isinstance(s, CohElem):
            return DualCoeff(self.real * s, None if self.inf is None else self.inf * s)
        return DualCoeff(self.real.scale(s), None if self.inf is None else self.inf.scale(s))

    def __eq__(self, other):
        if not isinstance(other, DualCoeff):
            return NotImplemented
        return self.real == other.real and self.infinitesimal == other.infinitesimal

    def __hash__(self):
        return hash((self.real, self.infinitesimal))

    def __repr__(self):
        if self.inf is None:
            return "DualCoeff(%s)" % self.real
        return "DualCoeff(%s + (%s)u)" % (self.real, self.inf)


def _key_of(key) -> Key:
    a, b, l1, l2 = key
    return (HalfInt.of(a).twice_value, HalfInt.of(b).twice_value, int(l1), int(l2))


class LogSeries:
    """Truncated series; absent keys are zero inside the window."""

    __slots__ = ("frame", "ring", "order", "floor", "log_cap", "terms")

    def __init__(self, frame, ring: RingPresentation, order: int,
                 terms: Optional[Mapping[Key, DualCoeff]] = None,
                 floor: int = DEFAULT_FLOOR, log_cap: Optional[int] = None,
                 check: bool = True):
        self.frame = tuple(frame)
        self.ring = ring
        self.order = int(order)
        self.floor = int(floor)
        self.log_cap = ring.nilpotency_cap if log_cap is None else int(log_cap)
        self.terms: Dict[Key, DualCoeff] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v
        if check:
            self.check_invariants()

    # structure ------------------------------------------------------------
    def in_window(self, key: Key) -> bool:
        a, b, l1, l2 = key
        return (a >= self.floor and b >= self.floor and a + b <= 2 * self.order
                and 0 <= l1 and 0 <= l2 and l1 + l2 <= self.log_cap)

    def check_invariants(self):
        for k, v in self.terms.items():
            if not self.in_window(k):
                raise WindowError("key %r outside window (order %d, floor %d/2, log cap %d)"
                                  % (k, self.order, self.floor, self.log_cap))
            if v.ring is not self.ring:
                raise RingMismatchError("coefficient ring mismatch")

    def like(self, terms, order=None, ring=None, log_cap=None) -> "LogSeries":
        return LogSeries(self.frame, ring or self.ring,
                         self.order if order is None else order, terms,
                         floor=self.floor,
                         log_cap=self.log_cap if log_cap is None else log_cap,
                         check=False)

    @classmethod
    def constant(cls, frame, ring, c, order=DEFAULT_ORDER, **kw) -> "LogSeries":
        if not isinstance(c, DualCoeff):
            c = DualCoeff(c if isinstance(c, CohElem) else ring.scalar(c))
        return cls(frame, ring, order, {(0, 0, 0, 0): c}, **kw)

    @classmethod
    def monomial(cls, frame, ring, key, coeff, order=DEFAULT_ORDER, **kw) -> "LogSeries":
        if not isinstance(coeff, DualCoeff):
            coeff = DualCoeff(coeff if isinstance(coeff, CohElem) else ring.scalar(coeff))
        return cls(frame, ring, order, {_key_of(key): coeff}, **kw)

    def coefficient(self, key) -> DualCoeff:
        k = _key_of(key)
        if not self.in_window(k):
            raise WindowError("key %r outside window (order %d)" % (key, self.order))
        return self.terms.get(k) or DualCoeff.zero(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def truncate(self, order: int) -> "LogSeries":
        if order > self.order:
            raise WindowError("cannot extend order %d to %d" % (self.order, order))
        lim = 2 * order
        return self.like({k: v for k, v in self.terms.items() if k[0] + k[1] <= lim},
                         order=order)

    def restrict_total_degree(self, order: int) -> "LogSeries":
        return self.truncate(min(order, self.order))

    # arithmetic -------------------------------------------------------------
    def _compat(self, other):
        if self.frame != other.frame:
            raise FrameMismatchError("%s vs %s" % (self.frame, other.frame))
        if self.ring is not other.ring:
            raise RingMismatchError("%s vs %s" % (self.ring.name, other.ring.name))

    def __add__(self, other):
        self._compat(other)
        order = min(self.order, other.order)
        lim = 2 * order
        out = {k: v for k, v in self.terms.items() if k[0] + k[1] <= lim}
        for k, v in other.terms.items():
            if k[0] + k[1] > lim:
                continue
            w = out.get(k)
            out[k] = v if w is None else w + v
        return self.like(out, order=order, log_cap=max(self.log_cap, other.log_cap))

    def __neg__(self):
        return self.like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "LogSeries":
        return self.like({k: v.scale(s) if not isinstance(s, DualCoeff) else v * s
                          for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LogSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        return (self.frame == other.frame and self.ring is other.ring
                and self.order == other.order and self.terms == other.terms)

    __hash__ = None

    # projections ------------------------------------------------------------
    def real_part(self) -> "LogSeries":
        return self.like({k: DualCoeff(v.real) for k, v in self.terms.items()})

    def inf_part(self) -> "LogSeries":
        return self.like({k: DualCoeff(v.inf) for k, v in self.terms.items()
                          if v.inf is not None})

    def has_infinitesimal(self) -> bool:
        return any(v.inf is not None for v in self.terms.values())

    def map_coeffs(self, f) -> "LogSeries":
        return self.like({k: f(v) for k, v in self.terms.items()})

    def eval_z(self, z) -> Dict[Key, Tuple[Dict, Dict]]:
        """Specialize z to a rational value; returns plain dicts of Fractions."""
        out = {}
        for k, v in self.terms.items():
            re = {m: c.evaluate(z) for m, c in v.real.coords.items()}
            im = {m: c.evaluate(z) for m, c in v.infinitesimal.coords.items()}
            out[k] = (re, im)
        return out

    def keys_by_degree(self):
        return sorted(self.terms, key=lambda k: (k[0] + k[1], k[0], k[2], k[3]))

    def __repr__(self):
        return "LogSeries(frame=%s, ring=%s, order=%d, %d terms)" % (
            self.frame, self.ring.name, self.order, len(self.terms))


def series_mul(f: LogSeries, g: LogSeries) -> LogSeries:
    f._compat(g)
    order = min(f.order, g.order)
    lim = 2 * order
    cap = max(f.log_cap, g.log_cap)
    out: Dict[Key, DualCoeff] = {}
    for (a1, b1, l1, m1), v in f.terms.items():
        for (a2, b2, l2, m2), w in g.terms.items():
            a, b = a1 + a2, b1 + b2
            if a + b > lim or l1 + l2 + m1 + m2 > cap:
                continue
            if a < f.floor or b < f.floor:
                raise WindowError("product exponent (%d/2, %d/2) below floor" % (a, b))
            t = v * w
            if not t:
                continue
            k = (a, b, l1 + l2, m1 + m2)
            prev = out.get(k)
            out[k] = t if prev is None else prev + t
    return f.like(out, order=order, log_cap=cap)


def exp_prefactor(D: CohElem, var: str, frame=FRAME_Q, order: int = DEFAULT_ORDER,
                  **kw) -> LogSeries:
    """exp((D/z) log var) = sum_k (D/z)^k log(var)^k / k!, D nilpotent."""
    if not D.is_nilpotent():
        raise ValueError("prefactor class must be nilpotent (zero degree-0 part)")
    ring = D.ring
    idx = list(frame).index(var)
    terms: Dict[Key, DualCoeff] = {}
    power = ring.one()
    k = 0
    while power:
        key = (0, 0, k, 0) if idx == 0 else (0, 0, 0, k)
        terms[key] = DualCoeff(power.scale(RatFuncZ.zpow(-k, Fraction(1, factorial(k)))))
        power = power * D
        k += 1
    return LogSeries(frame, ring, order, terms, **kw)
