"""Solution spaces, monodromy around x = 0, and the full transition check."""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import RatFuncZ, scalar_ring
from .frobenius import frobenius_solve, scan_exponents, verify_annihilation
from .linalg import rank_fraction_free
from .models import (bar_coefficient, build_I_X, build_I_Y,
                     build_Ibar_Y_structural, derive_gkz, get_model)
from .reconcile import DiscrepancyLedger, build_Ibar_Y, reconcile_printed
from .series import (DEFAULT_ORDER, FRAME_XY, DualCoeff, FrameMismatchError,
                     HalfInt, LogSeries, WindowError)

__all__ = [
    "MonodromyClass", "NoLimitError", "SolutionBasis", "ConjectureReport",
    "extract_components", "solution_rank", "classify_monodromy",
    "restrict_to_divisor", "extended_solutions", "run_conjecture_pipeline",
]


class MonodromyClass(str, enum.Enum):
    TRIVIAL = "trivial"
    HALF_TURN = "half_turn"
    LOGARITHMIC = "logarithmic"
    MIXED = "mixed"


class NoLimitError(ValueError):
    """x -> 0 does not exist for the series."""


def extract_components(f: LogSeries) -> List[LogSeries]:
    """One scalar series per basis monomial of f's ring, zero components dropped.

    The components keep f's log cap: the y^{p/z} prefactor puts up to
    cap - 1 powers of log y on them.
    """
    ring = f.ring
    S = scalar_ring()
    out = []
    for b in range(ring.dim):
        terms = {}
        for k, v in f.terms.items():
            re = v.real.coeff(b)
            im = v.infinitesimal.coeff(b) if v.inf is not None else None
            if re or im:
                terms[k] = DualCoeff(S.scalar(re), S.scalar(im) if im else None)
        if terms:
            out.append(LogSeries(f.frame, S, f.order, terms, floor=f.floor,
                                 log_cap=f.log_cap, check=False))
    return out


def solution_rank(entries: Sequence[LogSeries], probe_degree: int) -> int:
    """Rank over Q(z) of the coefficient matrix on keys of total degree <= probe_degree."""
    entries = list(entries)
    if not entries:
        return 0
    frame, order = entries[0].frame, entries[0].order
    for e in entries:
        if e.frame != frame:
            raise FrameMismatchError("entries live in different frames")
        if probe_degree > e.order:
            raise WindowError("probe degree %d exceeds truncation %d" % (probe_degree, e.order))
    lim = 2 * probe_degree
    cols = sorted({(k, part) for e in entries for k, v in e.terms.items()
                   if k[0] + k[1] <= lim
                   for part in ((0, 1) if v.inf is not None else (0,))})
    rows = []
    for e in entries:
        row = []
        for k, part in cols:
            v = e.terms.get(k)
            if v is None:
                row.append(RatFuncZ.const(0))
                continue
            c = v.real if part == 0 else v.infinitesimal
            if c.ring.dim != 1:
                raise ValueError("solution_rank expects scalar-coefficient series")
            row.append(c.coeff(0))
        rows.append(row)
    return rank_fraction_free(rows)


def classify_monodromy(f: LogSeries) -> MonodromyClass:
    if f.frame != FRAME_XY:
        raise FrameMismatchError("monodromy around x = 0 needs the (x, y) frame")
    half = any(k[0] % 2 for k in f.terms)
    logx = any(k[2] for k in f.terms)
    if not half and not logx:
        return MonodromyClass.TRIVIAL
    if half and not logx:
        return MonodromyClass.HALF_TURN
    if logx and not half:
        return MonodromyClass.LOGARITHMIC
    return MonodromyClass.MIXED


def restrict_to_divisor(f: LogSeries) -> LogSeries:
    """x -> 0 limit: keep the x^0 terms."""
    if classify_monodromy(f) is not MonodromyClass.TRIVIAL:
        raise NoLimitError("non-trivial monodromy around x = 0")
    if any(k[0] < 0 for k in f.terms):
        raise NoLimitError("negative powers of x")
    return f.like({k: v for k, v in f.terms.items() if k[0] == 0})


def extended_solutions(model_id, order: int = DEFAULT_ORDER):
    """(I5, I6, result) from the rho = 1/2 dual Frobenius solve."""
    sysxy = derive_gkz(model_id, "xy")
    res = frobenius_solve(sysxy, HalfInt(1), order)
    if not res.admissible:
        return None, None, res
    s = res.series
    return s.real_part(), s.inf_part(), res


@dataclass
class SolutionBasis:
    model_id: str
    frame: Tuple[str, str]
    entries: List[Tuple[str, LogSeries]]
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        labels = [lab for lab, _ in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in solution basis")

    @property
    def series(self) -> List[LogSeries]:
        return [s for _, s in self.entries]


@dataclass
class ConjectureReport:
    model_id: str
    rank_total: int = 0
    rank_trivial: int = 0
    monodromy: List[Tuple[str, str]] = field(default_factory=list)
    limit_verified: bool = False
    annihilation: Dict[str, int] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    admissible_exponents: List[str] = field(default_factory=list)
    ledger: DiscrepancyLedger = field(default_factory=DiscrepancyLedger)
    stage_times: Dict[str, float] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def failing_stages(self) -> List[str]:
        return sorted(k for k, ok in self.checks.items() if not ok)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and not self.failing_stages


class _Stages:
    def __init__(self, report: ConjectureReport):
        self.report = report

    def run(self, name, fn):
        t = time.perf_counter()
        try:
            return fn()
        except Exception as exc:  # a failing stage is recorded, not raised
            self.report.checks[name] = False
            self.report.errors[name] = "%s: %s" % (type(exc).__name__, exc)
            return None
        finally:
            self.report.stage_times[name] = time.perf_counter() - t


def _count(residuals: Dict[str, LogSeries], prefix: str) -> Dict[str, int]:
    return {"%s:%s" % (prefix, n): len(r.terms) for n, r in residuals.items()}


def run_conjecture_pipeline(spec, order: int = DEFAULT_ORDER, *,
                            with_ledger: bool = True,
                            probe_degrees: Sequence[int] = (2, 3, 4),
                            floor=-4) -> ConjectureReport:
    """Run every hard check for one model; failures are recorded, not raised.

    floor is the lowest exponent any constructed series may carry; it is
    checked as the stage "window_floor".
    """
    spec = get_model(spec)
    floor2 = HalfInt.of(floor).twice_value
    built: List[LogSeries] = []
    mid = spec.model_id
    rep = ConjectureReport(mid)
    st = _Stages(rep)
    ck = rep.checks

    def stage_x():
        IX = build_I_X(spec, order)
        built.append(IX)
        res = verify_annihilation(derive_gkz(spec, "q"), IX)
        rep.annihilation.update(_count(res, "I_X"))
        ck["annihilation_x"] = not any(r.terms for r in res.values())
    st.run("annihilation_x", stage_x)

    def stage_y():
        IY = build_I_Y(spec, order)
        built.append(IY)
        res = verify_annihilation(derive_gkz(spec, "y"), IY)
        rep.annihilation.update(_count(res, "I_Y"))
        ck["annihilation_y"] = not any(r.terms for r in res.values())
        return IY
    IY = st.run("annihilation_y", stage_y)

    sysxy = derive_gkz(spec, "xy")

    def stage_ibar():
        ibar = build_Ibar_Y(spec, order)
        built.append(ibar)
        res = verify_annihilation(sysxy, ibar)
        rep.annihilation.update(_count(res, "Ibar_Y"))
        ck["annihilation_ibar"] = not any(r.terms for r in res.values())
        ck["ibar_structural"] = ibar == build_Ibar_Y_structural(spec, order)
        return ibar
    ibar = st.run("annihilation_ibar", stage_ibar)

    def stage_frob0():
        R = spec.y_ring
        res = frobenius_solve(
            sysxy, 0, order, ring=R, seed=bar_coefficient(spec, 0, 0),
            seed_fn=lambda ij: DualCoeff(bar_coefficient(spec, *ij)),
            prefactor=R.gen("p"), dual=False)
        ck["frobenius_rho0"] = res.admissible and res.series == ibar
    st.run("frobenius_rho0", stage_frob0)

    def stage_scan():
        scan = scan_exponents(sysxy, 6)
        adm = [s.rho for s in scan if s.admissible]
        rep.admissible_exponents = [str(r.value) for r in adm]
        ck["exponent_scan"] = [r.twice_value for r in adm] == [0, 1]
    st.run("exponent_scan", stage_scan)

    def stage_ext():
        I5, I6, res = extended_solutions(spec, order)
        if res.series is not None:
            built.append(res.series)
        if I5 is None:
            ck["extended"] = False
            return None
        resid = verify_annihilation(sysxy, res.series)
        rep.annihilation.update(_count(resid, "I_ext"))
        ck["extended"] = not any(r.terms for r in resid.values()) and bool(I6)
        return I5, I6
    ext = st.run("extended", stage_ext)

    def stage_basis():
        comps = extract_components(ibar)
        entries = [("component(%d)" % k, c) for k, c in enumerate(comps)]
        entries += [("extended(I5)", ext[0]), ("extended(I6)", ext[1])]
        basis = SolutionBasis(mid, FRAME_XY, entries)
        classes = [(lab, classify_monodromy(s)) for lab, s in basis.entries]
        rep.monodromy = [(lab, c.value) for lab, c in classes]
        trivial = [s for (lab, s), (_, c) in zip(basis.entries, classes)
                   if c is MonodromyClass.TRIVIAL]
        # probes past the truncation are clipped to it
        probes = sorted({min(d, order) for d in probe_degrees})
        ranks = [solution_rank(basis.series, d) for d in probes]
        rep.rank_total = ranks[-1]
        rep.rank_trivial = solution_rank(trivial, probes[-1])
        ck["rank_stable"] = len(set(ranks)) == 1
        ck["rank_total"] = rep.rank_total == 6
        ck["rank_trivial"] = rep.rank_trivial == 4 and len(comps) == 4
        cls = dict(rep.monodromy)
        ck["monodromy"] = (len(trivial) == 4
                           and cls.get("extended(I5)") == MonodromyClass.HALF_TURN.value
                           and cls.get("extended(I6)") == MonodromyClass.MIXED.value)
    if ibar is not None and ext is not None:
        st.run("basis", stage_basis)
    else:
        ck["rank_total"] = ck["rank_trivial"] = ck["monodromy"] = False

    def stage_limit():
        lim = restrict_to_divisor(ibar)
        rep.limit_verified = lim == IY
        ck["limit"] = rep.limit_verified
    if ibar is not None and IY is not None:
        st.run("limit", stage_limit)
    else:
        ck["limit"] = False

    ck["window_floor"] = all(min(k[0], k[1]) >= floor2 for f in built for k in f.terms)

    if with_ledger:
        led = st.run("ledger", lambda: reconcile_printed(spec, order))
        if led is not None:
            rep.ledger = led
    return rep
