"""Annihilation checks and Frobenius solutions x^(rho+u) * sum C_ij x^i y^j."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import CohElem, RatFuncZ, RingPresentation, scalar_ring
from .operators import DiffOp, OperatorSystem, op_apply
from .series import (DEFAULT_ORDER, FRAME_XY, DualCoeff, FrameMismatchError,
                     HalfInt, LogSeries, exp_prefactor, series_mul)

__all__ = [
    "verify_annihilation", "FrobeniusResult", "frobenius_solve",
    "scan_exponents", "ExponentScan",
]

Index = Tuple[int, int]


def verify_annihilation(sys: OperatorSystem, f: LogSeries) -> Dict[str, LogSeries]:
    """Residual of every operator on f inside its trust window (empty = annihilated)."""
    if tuple(sys.frame) != f.frame:
        raise FrameMismatchError("%s vs %s" % (sys.frame, f.frame))
    return {name: op_apply(op, f) for name, op in sys.operators.items()}


@dataclass
class FrobeniusResult:
    rho: HalfInt
    order: int
    dual: bool
    coefficients: Dict[Index, DualCoeff]
    series: Optional[LogSeries] = None
    obstruction: Optional[Index] = None
    obstruction_detail: str = ""
    free: Dict[Index, int] = field(default_factory=dict)
    seeded: List[Index] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return self.obstruction is None


class _Eigen:
    """Evaluates delta-polynomials of one operator group on x^(rho+u+i) y^(D/z+j)."""

    def __init__(self, ring, rho: Fraction, dual: bool, D: Optional[CohElem]):
        self.ring = ring
        self.rho = rho
        self.dual = dual
        self.Dz = D.scale(RatFuncZ.zpow(-1)) if D is not None else ring.zero()
        self._pow: Dict = {}

    def _powers(self, i, j, n1, n2):
        key = (i, j)
        hit = self._pow.get(key)
        if hit is None or len(hit[0]) <= n1 or len(hit[1]) <= n2:
            R = self.ring
            a = DualCoeff(R.scalar(RatFuncZ.const(self.rho + i)),
                          R.one() if self.dual else None)
            b = DualCoeff(self.Dz + R.scalar(RatFuncZ.const(j)))
            pa = [DualCoeff(R.one())]
            for _ in range(n1):
                pa.append(pa[-1] * a)
            pb = [DualCoeff(R.one())]
            for _ in range(n2):
                pb.append(pb[-1] * b)
            hit = (pa, pb)
            self._pow[key] = hit
        return hit

    def value(self, group, i, j) -> DualCoeff:
        n1 = max(d1 for d1, _, _ in group)
        n2 = max(d2 for _, d2, _ in group)
        pa, pb = self._powers(i, j, n1, n2)
        out = DualCoeff.zero(self.ring)
        for (d1, d2, k), c in group.items():
            out = out + (pa[d1] * pb[d2]).scale(RatFuncZ.zpow(k, c))
        return out


def _unknown_basis(ring, dual):
    basis = []
    for b in range(ring.dim):
        e = CohElem(ring, {b: RatFuncZ.const(1)})
        basis.append(DualCoeff(e))
        if dual:
            basis.append(DualCoeff(ring.zero(), e))
    return basis


def _coords(v: DualCoeff, ring, dual):
    out = []
    for b in range(ring.dim):
        out.append(v.real.coeff(b))
        if dual:
            out.append(v.infinitesimal.coeff(b))
    return out


def frobenius_solve(sys: OperatorSystem, rho, order: int = DEFAULT_ORDER, *,
                    ring: Optional[RingPresentation] = None,
                    seed: Optional[object] = None,
                    seed_fn: Optional[Callable[[Index], DualCoeff]] = None,
                    prefactor: Optional[CohElem] = None, dual: bool = True,
                    log_cap: int = 6) -> FrobeniusResult:
    """Solve sys for x^(rho+u) y^(D/z) sum C_ij x^i y^j with C_00 = seed.

    Indices are processed by total degree, then by i.  At each index the
    equations whose last unknown is C_ij form a linear system over Q(z)
    (in the coordinates of ring, doubled when dual).  Underdetermined
    indices take seed_fn(index) when given, else the particular solution
    with free coordinates set to zero; inconsistent ones are obstructions.
    """
    if tuple(sys.frame) != FRAME_XY:
        raise FrameMismatchError("frobenius_solve expects an (x, y) frame system")
    rho = HalfInt.of(rho)
    ring = ring or scalar_ring()
    if seed is None:
        seed = DualCoeff(ring.one())
    elif not isinstance(seed, DualCoeff):
        seed = DualCoeff(seed if isinstance(seed, CohElem) else ring.scalar(seed))
    ev = _Eigen(ring, rho.value, dual, prefactor)

    # equations: (op name, group table, target)
    groups = []
    for name, op in sys.operators.items():
        g = op.groups()
        for (sa, sb) in g:
            if sa % 2 or sb % 2:
                raise ValueError("operator %s has a half-integral variable shift" % name)
        groups.append((name, {(sa // 2, sb // 2): grp for (sa, sb), grp in g.items()}))

    indices = [(i, n - i) for n in range(order + 1) for i in range(n + 1)]
    rank_of = {idx: r for r, idx in enumerate(indices)}
    buckets: Dict[Index, List] = {idx: [] for idx in indices}
    seen = set()
    for name, g in groups:
        shifts = list(g)
        targets = {(i + s[0], j + s[1]) for (i, j) in indices for s in shifts}
        for t in targets:
            if (name, t) in seen:
                continue
            seen.add((name, t))
            srcs = [(t[0] - s[0], t[1] - s[1], s) for s in shifts]
            inq = [(a, b, s) for a, b, s in srcs if a >= 0 and b >= 0]
            if not inq:
                continue
            if any(a + b > order for a, b, _ in inq):
                continue
            last = max(inq, key=lambda x: rank_of[(x[0], x[1])])
            buckets[(last[0], last[1])].append((name, g, t, inq))

    basis = _unknown_basis(ring, dual)
    ncols = len(basis)
    zero = RatFuncZ.const(0)

    def col(idx, k):
        return rank_of[idx] * ncols + k

    # incremental sparse echelon form; each pivot is the latest column of its row
    pivots: Dict[int, Tuple[Dict[int, RatFuncZ], RatFuncZ]] = {}
    result = FrobeniusResult(rho, order, dual, {})

    def add_row(row, b):
        row = {c: v for c, v in row.items() if v}
        while row:
            c = max(row)
            if c not in pivots:
                inv = row[c].inverse()
                pivots[c] = ({k: v * inv for k, v in row.items()}, b * inv)
                return True
            prow, pb = pivots[c]
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, zero) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = b - f * pb
        return not b

    def fix(idx, value):
        vec = _coords(value, ring, dual)
        ok = True
        for k in range(ncols):
            ok = add_row({col(idx, k): RatFuncZ.const(1)}, vec[k]) and ok
        return ok

    for idx in indices:
        if idx == (0, 0) and not fix(idx, seed):
            result.obstruction = idx
            result.obstruction_detail = "seed violates the indicial equations"
            return result
        for name, g, t, inq in buckets[idx]:
            lin: Dict[int, DualCoeff] = {}
            for a, b, s in inq:
                lin[(a, b)] = ev.value(g[s], a, b)
            per_row: Dict[int, Dict[int, RatFuncZ]] = {}
            for src, P in lin.items():
                for k, e in enumerate(basis):
                    for r, v in enumerate(_coords(P * e, ring, dual)):
                        if v:
                            per_row.setdefault(r, {})[col(src, k)] = v
            for r, row in per_row.items():
                if not add_row(row, zero):
                    result.obstruction = idx
                    result.obstruction_detail = "%s is inconsistent at target %s" % (name, t)
                    return result
        if seed_fn is not None and idx != (0, 0):
            if any(col(idx, k) not in pivots for k in range(ncols)):
                if not fix(idx, seed_fn(idx)):
                    result.obstruction = idx
                    result.obstruction_detail = "seeded value at %s violates the equations" % (idx,)
                    return result
                result.seeded.append(idx)

    values: Dict[int, RatFuncZ] = {}
    for c in range(len(indices) * ncols):
        if c in pivots:
            prow, pb = pivots[c]
            acc = pb
            for k, v in prow.items():
                if k != c and k in values:
                    acc = acc - v * values[k]
            values[c] = acc
        else:
            values[c] = zero
            idx = indices[c // ncols]
            result.free[idx] = result.free.get(idx, 0) + 1
    C = result.coefficients
    for idx in indices:
        value = DualCoeff.zero(ring)
        for k, e in enumerate(basis):
            v = values[col(idx, k)]
            if v:
                value = value + e.scale(v)
        C[idx] = value
    result.series = _assemble(C, rho, order, ring, prefactor, log_cap, dual)
    return result


def _assemble(C, rho, order, ring, prefactor, log_cap, dual) -> LogSeries:
    terms = {}
    for (i, j), c in C.items():
        if not c:
            continue
        a = rho.twice_value + 2 * i
        terms[(a, 2 * j, 0, 0)] = c
        if dual:
            # x^u = 1 + u log x
            terms[(a, 2 * j, 1, 0)] = DualCoeff(ring.zero(), c.real)
    body = LogSeries(FRAME_XY, ring, order + (rho.twice_value + 1) // 2, terms,
                     log_cap=log_cap, check=False)
    body = LogSeries(FRAME_XY, ring, body.order, body.terms, log_cap=log_cap)
    if prefactor is not None:
        pre = exp_prefactor(prefactor, "y", FRAME_XY, body.order, log_cap=log_cap)
        body = series_mul(pre, body)
    return body


@dataclass
class ExponentScan:
    rho: HalfInt
    solvable: bool
    subsumed_by: Optional[HalfInt]
    free: Dict[Index, int]

    @property
    def admissible(self) -> bool:
        return self.solvable and self.subsumed_by is None


def scan_exponents(sys: OperatorSystem, max_twice: int = 6, order: int = 4) -> List[ExponentScan]:
    """Try rho = k/2 for 0 <= k <= max_twice with a plain (u = 0) scalar ansatz.

    rho counts as admissible when the recursion is unobstructed and the
    solution is not already a free direction of a smaller exponent rho - m
    at index (m, 0).
    """
    out: List[ExponentScan] = []
    for k in range(max_twice + 1):
        res = frobenius_solve(sys, HalfInt(k), order, dual=False)
        sub = None
        if res.admissible:
            for prev in out:
                m2 = k - prev.rho.twice_value
                if prev.solvable and m2 > 0 and m2 % 2 == 0 and prev.free.get((m2 // 2, 0)):
                    sub = prev.rho
                    break
        out.append(ExponentScan(HalfInt(k), res.admissible, sub, dict(res.free)))
    return out
