"""Exact scalars in Q(z) and truncated graded cohomology rings.

``RatFuncZ`` stores a rational function as ``c * N(z) / D(z)`` with ``c`` a
``Fraction`` and ``N``, ``D`` coprime primitive integer polynomials with
positive leading coefficients.  That form is canonical, so equality and
hashing are structural.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from . import kernels as K

__all__ = [
    "RatFuncZ", "scalar_normalize", "RingPresentation", "CohElem",
    "RingMismatchError", "NonUnitError", "ring_mul", "ring_invert",
    "x_ambient_ring", "y_ambient_ring", "scalar_ring", "ZERO", "ONE", "Z",
]


class RingMismatchError(ValueError):
    pass


class NonUnitError(ZeroDivisionError):
    pass


def _ints_from_fractions(coeffs):
    """Return (scale, int poly) with coeffs == scale * poly."""
    fr = [Fraction(v) for v in coeffs]
    den = reduce(lcm, (f.denominator for f in fr), 1)
    ints = [int(f * den) for f in fr]
    while ints and ints[-1] == 0:
        ints.pop()
    return Fraction(1, den), tuple(ints)


class RatFuncZ:
    __slots__ = ("c", "n", "d", "_h")

    def __init__(self, num: Sequence = (0,), den: Sequence = (1,)):
        other = scalar_normalize(num, den)
        self.c, self.n, self.d, self._h = other.c, other.n, other.d, None

    @classmethod
    def _raw(cls, c, n, d):
        obj = object.__new__(cls)
        obj.c = c
        obj.n = n
        obj.d = d
        obj._h = None
        return obj

    @classmethod
    def _build(cls, c, n, d):
        """Normalize c * n / d where n, d are integer polynomials."""
        if not d:
            raise ZeroDivisionError("zero denominator")
        if c == 0 or not n:
            return ZERO
        cn = K.pcontent(n)
        if n[-1] < 0:
            cn = -cn
        cd = K.pcontent(d)
        if d[-1] < 0:
            cd = -cd
        c = c * Fraction(cn, cd)
        if cn != 1:
            n = tuple(v // cn for v in n)
        if cd != 1:
            d = tuple(v // cd for v in d)
        if len(d) > 1:
            g = K.pgcd(n, d)
            if len(g) > 1:
                n = K.pdivexact(n, g)
                d = K.pdivexact(d, g)
        return cls._raw(c, n, d)

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, q) -> "RatFuncZ":
        q = Fraction(q)
        if q == 0:
            return ZERO
        return cls._raw(q, (1,), (1,))

    @classmethod
    def zpow(cls, k: int, coeff=1) -> "RatFuncZ":
        coeff = Fraction(coeff)
        if coeff == 0:
            return ZERO
        mono = (0,) * abs(k) + (1,)
        if k >= 0:
            return cls._raw(coeff, mono, (1,))
        return cls._raw(coeff, (1,), mono)

    @classmethod
    def coerce(cls, v) -> "RatFuncZ":
        if isinstance(v, RatFuncZ):
            return v
        return cls.const(v)

    # views ---------------------------------------------------------------
    @property
    def num(self) -> Tuple[Fraction, ...]:
        """Numerator over Q, paired with the monic ``den``."""
        if not self.c:
            return (Fraction(0),)
        s = self.c / self.d[-1]
        return tuple(s * v for v in self.n)

    @property
    def den(self) -> Tuple[Fraction, ...]:
        lc = self.d[-1]
        return tuple(Fraction(v, lc) for v in self.d)

    def is_zero(self) -> bool:
        return self.c == 0

    def __bool__(self):
        return self.c != 0

    def is_constant(self) -> bool:
        return len(self.n) == 1 and len(self.d) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.c

    def laurent_monomial(self):
        """Return (coeff, k) if self == coeff * z**k, else None."""
        if self.c == 0:
            return (Fraction(0), 0)
        if len(self.n) - K.pval(self.n) == 1 and len(self.d) - K.pval(self.d) == 1:
            return self.c, (len(self.n) - 1) - (len(self.d) - 1)
        return None

    def evaluate(self, z) -> Fraction:
        z = Fraction(z)
        dv = sum(Fraction(v) * z ** i for i, v in enumerate(self.d))
        if dv == 0:
            raise ZeroDivisionError("pole at z = %s" % z)
        nv = sum(Fraction(v) * z ** i for i, v in enumerate(self.n))
        return self.c * nv / dv

    # arithmetic ------------------------------------------------------------
    def __neg__(self):
        if not self.c:
            return self
        return RatFuncZ._raw(-self.c, self.n, self.d)

    def __add__(self, other):
        if not isinstance(other, RatFuncZ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncZ.const(other)
            else:
                return NotImplemented
        if not self.c:
            return other
        if not other.c:
            return self
        d1, d2 = self.d, other.d
        if d1 == d2:
            if self.n == other.n:
                s = self.c + other.c
                return RatFuncZ._raw(s, self.n, d1) if s else ZERO
            g = d1
            m1 = m2 = (1,)
        elif len(d1) == 1:
            g, m1, m2 = d1, d2, (1,)
        elif len(d2) == 1:
            g, m1, m2 = d2, (1,), d1
        else:
            g = K.pgcd(d1, d2)
            m1 = K.pdivexact(d2, g)
            m2 = K.pdivexact(d1, g)
        a1, b1 = self.c.numerator, self.c.denominator
        a2, b2 = other.c.numerator, other.c.denominator
        num = K.padd(K.pscale(K.pmul(self.n, m1), a1 * b2),
                     K.pscale(K.pmul(other.n, m2), a2 * b1))
        if not num:
            return ZERO
        den = K.pmul(d1, m1)
        return RatFuncZ._build(Fraction(1, b1 * b2), num, den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFuncZ):
            if isinstance(other, (int, Fraction)):
                other = RatFuncZ.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFuncZ):
            if isinstance(other, (int, Fraction)):
                if other == 0 or not self.c:
                    return ZERO
                return RatFuncZ._raw(self.c * other, self.n, self.d)
            return NotImplemented
        if not self.c or not other.c:
            return ZERO
        n1, d1, n2, d2 = self.n, self.d, other.n, other.d
        c = self.c * other.c
        if len(d2) > 1 and len(n1) > 1:
            g = K.pgcd(n1, d2)
            if len(g) > 1:
                n1 = K.pdivexact(n1, g)
                d2 = K.pdivexact(d2, g)
        if len(d1) > 1 and len(n2) > 1:
            g = K.pgcd(n2, d1)
            if len(g) > 1:
                n2 = K.pdivexact(n2, g)
                d1 = K.pdivexact(d1, g)
        return RatFuncZ._raw(c, K.pmul(n1, n2), K.pmul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncZ":
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        return RatFuncZ._raw(1 / self.c, self.d, self.n)

    def __truediv__(self, other):
        if not isinstance(other, RatFuncZ):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    raise ZeroDivisionError("division by zero")
                return self * (1 / Fraction(other))
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFuncZ.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatFuncZ):
            return self.c == other.c and self.n == other.n and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self == RatFuncZ.const(other)
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.c, self.n, self.d))
        return self._h

    def __repr__(self):
        return "RatFuncZ(%s)" % self

    def __str__(self):
        if not self.c:
            return "0"

        def poly(p):
            parts = []
            for i, v in enumerate(p):
                if not v:
                    continue
                mono = "" if i == 0 else ("z" if i == 1 else "z^%d" % i)
                if mono and v == 1:
                    parts.append(mono)
                elif mono and v == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(str(v) + ("*" + mono if mono else ""))
            return " + ".join(parts) or "0"

        num = self.num
        s = poly([v for v in num])
        if len(self.d) == 1:
            return s
        return "(%s)/(%s)" % (s, poly(self.den))


def scalar_normalize(num: Sequence, den: Sequence = (1,)) -> RatFuncZ:
    """Reduce num/den (coefficient lists, lowest degree first)."""
    s1, n = _ints_from_fractions(num)
    s2, d = _ints_from_fractions(den)
    if not d:
        raise ZeroDivisionError("zero denominator")
    if not n:
        return ZERO
    return RatFuncZ._build(s1 / s2, n, d)


ZERO = RatFuncZ._raw(Fraction(0), (1,), (1,))
ONE = RatFuncZ._raw(Fraction(1), (1,), (1,))
Z = RatFuncZ._raw(Fraction(1), (0, 1), (1,))


Monomial = Tuple[int, ...]


class RingPresentation:
    """Commutative graded ring Q(z)[gens] / (rewrite rules) with a finite basis.

    ``rules`` maps a leading monomial (exponent tuple) to its replacement,
    a mapping monomial -> rational coefficient (empty mapping means zero).
    """

    def __init__(self, name: str, generators: Sequence[Tuple[str, int]],
                 rules: Mapping[Monomial, Mapping[Monomial, Fraction]],
                 basis: Sequence[Monomial]):
        self.name = name
        self.generators = tuple(generators)
        self.gen_names = tuple(g for g, _ in generators)
        self.gen_degrees = tuple(d for _, d in generators)
        self.rules = {tuple(k): {tuple(m): Fraction(c) for m, c in v.items()}
                      for k, v in rules.items()}
        self.basis = tuple(tuple(b) for b in basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("repeated basis monomial")
        self._nf_cache: Dict[Monomial, Dict[int, Fraction]] = {}
        for b in self.basis:
            nf = self.normal_form(b)
            if nf != {self.index[b]: Fraction(1)}:
                raise ValueError("basis monomial %r is reducible" % (b,))
        n = len(self.basis)
        self.table = [[tuple(self.normal_form(
            tuple(x + y for x, y in zip(self.basis[i], self.basis[j]))).items())
            for j in range(n)] for i in range(n)]
        self.degrees = tuple(self.mono_degree(b) for b in self.basis)
        self.unit_index = self.index.get((0,) * len(self.generators))
        self.nilpotency_cap = self._nilpotency_cap()

    def __repr__(self):
        return "RingPresentation(%r, dim=%d)" % (self.name, len(self.basis))

    def __reduce__(self):
        return (_ring_by_name, (self.name,))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.gen_degrees))

    def normal_form(self, m: Monomial) -> Dict[int, Fraction]:
        """Reduce a monomial to basis coordinates {basis index: coefficient}."""
        m = tuple(m)
        hit = self._nf_cache.get(m)
        if hit is not None:
            return hit
        if m in self.index:
            out = {self.index[m]: Fraction(1)}
        else:
            out = None
            for lead, repl in self.rules.items():
                if all(a >= b for a, b in zip(m, lead)):
                    rest = tuple(a - b for a, b in zip(m, lead))
                    acc: Dict[int, Fraction] = {}
                    for rm, c in repl.items():
                        sub = self.normal_form(tuple(a + b for a, b in zip(rm, rest)))
                        for k, v in sub.items():
                            acc[k] = acc.get(k, Fraction(0)) + c * v
                    out = {k: v for k, v in acc.items() if v}
                    break
            if out is None:
                raise ValueError("monomial %r irreducible but not in basis" % (m,))
        self._nf_cache[m] = out
        return out

    def _nilpotency_cap(self) -> int:
        if not self.generators:
            return 1
        k = 1
        while k < 256:
            if all(not self.normal_form(tuple(k if i == g else 0
                                              for i in range(len(self.generators))))
                   for g in range(len(self.generators))):
                return k
            k += 1
        raise ValueError("generators are not nilpotent")

    # element constructors ---------------------------------------------
    def zero(self) -> "CohElem":
        return CohElem(self, {})

    def one(self) -> "CohElem":
        return self.scalar(ONE)

    def scalar(self, s) -> "CohElem":
        s = RatFuncZ.coerce(s)
        if not s:
            return CohElem(self, {})
        return CohElem(self, {self.unit_index: s})

    def monomial(self, m: Monomial, coeff=1) -> "CohElem":
        coeff = RatFuncZ.coerce(coeff)
        return CohElem(self, {k: coeff * v for k, v in self.normal_form(m).items()})

    def gen(self, name: str) -> "CohElem":
        i = self.gen_names.index(name)
        return self.monomial(tuple(1 if j == i else 0 for j in range(len(self.generators))))

    def linear(self, coeffs: Mapping[str, Fraction], zcoef=0) -> "CohElem":
        """The element sum(c * gen) + zcoef * z."""
        out = self.scalar(RatFuncZ.zpow(1, zcoef)) if zcoef else self.zero()
        for g, c in coeffs.items():
            if c:
                out = out + self.gen(g) * Fraction(c)
        return out

    def check_axioms(self) -> bool:
        """Exhaustive associativity and commutativity on basis triples."""
        basis = [self.monomial(b) for b in self.basis]
        for a in basis:
            for b in basis:
                if a * b != b * a:
                    return False
                for c in basis:
                    if (a * b) * c != a * (b * c):
                        return False
        return True


def _x_ring():
    gens = [("h", 2), ("xi", 2)]
    rules = {(5, 0): {}, (0, 2): {(1, 1): 1}}
    basis = [(a, 0) for a in range(5)] + [(a, 1) for a in range(5)]
    return RingPresentation("x_ambient", gens, rules, basis)


def _y_ring():
    return RingPresentation("y_ambient", [("p", 2)], {(6,): {}}, [(a,) for a in range(6)])


def _scalar_ring():
    return RingPresentation("scalar", [], {}, [()])


_RINGS = {}


def _ring_by_name(name):
    if name not in _RINGS:
        _RINGS[name] = {"x_ambient": _x_ring, "y_ambient": _y_ring,
                        "scalar": _scalar_ring}[name]()
    return _RINGS[name]


def x_ambient_ring() -> RingPresentation:
    """Q(z)[h, xi] / (h^5, xi^2 - xi*h), basis {h^a, xi*h^a : a < 5}."""
    return _ring_by_name("x_ambient")


def y_ambient_ring() -> RingPresentation:
    """Q(z)[p] / (p^6)."""
    return _ring_by_name("y_ambient")


def scalar_ring() -> RingPresentation:
    return _ring_by_name("scalar")


class CohElem:
    """Element of a RingPresentation; ``coords`` maps basis index -> RatFuncZ."""

    __slots__ = ("ring", "_c")

    def __init__(self, ring: RingPresentation, coords: Mapping[int, RatFuncZ]):
        self.ring = ring
        self._c = {k: v for k, v in coords.items() if v}

    @classmethod
    def from_monomials(cls, ring, coords: Mapping[Monomial, object]) -> "CohElem":
        out = ring.zero()
        for m, v in coords.items():
            out = out + ring.monomial(m, v)
        return out

    @property
    def coords(self) -> Dict[Monomial, RatFuncZ]:
        return {self.ring.basis[k]: v for k, v in sorted(self._c.items())}

    def coeff(self, m) -> RatFuncZ:
        k = m if isinstance(m, int) else self.ring.index[tuple(m)]
        return self._c.get(k, ZERO)

    def degree0(self) -> RatFuncZ:
        return self._c.get(self.ring.unit_index, ZERO)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_nilpotent(self) -> bool:
        return not self.degree0()

    def _check(self, other):
        if other.ring is not self.ring:
            raise RingMismatchError("%s vs %s" % (self.ring.name, other.ring.name))

    def __add__(self, other):
        if not isinstance(other, CohElem):
            return self + self.ring.scalar(other)
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return CohElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CohElem(self.ring, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, CohElem):
            other = self.ring.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "CohElem":
        if not s:
            return CohElem(self.ring, {})
        return CohElem(self.ring, {k: v * s for k, v in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, CohElem):
            if isinstance(other, (int, Fraction, RatFuncZ)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        table = self.ring.table
        acc: Dict[int, RatFuncZ] = {}
        for i, a in self._c.items():
            row = table[i]
            for j, b in other._c.items():
                entries = row[j]
                if not entries:
                    continue
                ab = a * b
                for k, c in entries:
                    t = ab if c == 1 else ab * c
                    w = acc.get(k)
                    acc[k] = t if w is None else w + t
        return CohElem(self.ring, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFuncZ)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "CohElem":
        s = self.degree0()
        if not s:
            raise NonUnitError("degree-0 coordinate is zero")
        sinv = s.inverse()
        n = (self - self.ring.scalar(s)).scale(-sinv)
        out = self.ring.one()
        term = self.ring.one()
        while True:
            term = term * n
            if not term:
                break
            out = out + term
        return out.scale(sinv)

    def __truediv__(self, other):
        if isinstance(other, CohElem):
            return self * other.inverse()
        return self.scale(RatFuncZ.coerce(other).inverse())

    def map_coeffs(self, f) -> "CohElem":
        return CohElem(self.ring, {k: f(v) for k, v in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, CohElem):
            return self.ring is other.ring and self._c == other._c
        if isinstance(other, (int, Fraction, RatFuncZ)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.name, frozenset(self._c.items())))

    def __repr__(self):
        return "CohElem(%s)" % self

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            mono = "*".join(
                n if e == 1 else "%s^%d" % (n, e)
                for n, e in zip(self.ring.gen_names, self.ring.basis[k]) if e)
            parts.append("(%s)%s" % (v, "*" + mono if mono else ""))
        return " + ".join(parts)


def ring_mul(a: CohElem, b: CohElem) -> CohElem:
    return a * b


def ring_invert(a: CohElem) -> CohElem:
    return a.inverse()
