import pytest

from extransit.analysis import (MonodromyClass, NoLimitError, classify_monodromy,
                                extended_solutions, extract_components,
                                restrict_to_divisor, run_conjecture_pipeline,
                                solution_rank)
from extransit.models import build_I_X, build_I_Y, get_model
from extransit.reconcile import build_Ibar_Y
from extransit.series import FRAME_Q, FRAME_XY, FrameMismatchError, LogSeries, WindowError
from extransit.algebra import scalar_ring

from conftest import MODEL_IDS

ORDER = 5


@pytest.fixture(scope="module", params=MODEL_IDS)
def solutions(request):
    spec = get_model(request.param)
    ibar = build_Ibar_Y(spec, ORDER)
    I5, I6, _ = extended_solutions(spec.model_id, ORDER)
    return spec, ibar, I5, I6


def _support(f):
    R = f.ring
    return {R.basis[b] for v in f.terms.values() for b in v.real.coords}


def test_component_counts():
    IY = build_I_Y(get_model("local"), ORDER)
    assert len(extract_components(IY)) == 4
    IX = build_I_X(get_model("local"), 3)
    assert len(extract_components(IX)) == 6
    assert extract_components(LogSeries(FRAME_XY, scalar_ring(), 2)) == []


def test_rank_duplicated_entry():
    comp = extract_components(build_I_Y(get_model("t24"), 3))[0]
    assert solution_rank([comp, comp], 3) == 1
    assert solution_rank([], 2) == 0


def test_rank_probe_beyond_window():
    comp = extract_components(build_I_Y(get_model("t24"), 3))[0]
    with pytest.raises(WindowError):
        solution_rank([comp], 4)


def test_solution_space(solutions):
    spec, ibar, I5, I6 = solutions
    comps = extract_components(ibar)
    assert solution_rank(comps, 4) == 4
    assert solution_rank(comps + [I5, I6], 4) == 6


def test_monodromy(solutions):
    spec, ibar, I5, I6 = solutions
    assert all(classify_monodromy(c) is MonodromyClass.TRIVIAL for c in extract_components(ibar))
    assert classify_monodromy(I5) is MonodromyClass.HALF_TURN
    assert classify_monodromy(I6) is MonodromyClass.MIXED


def test_limit(solutions):
    spec, ibar, I5, _ = solutions
    assert restrict_to_divisor(ibar) == build_I_Y(spec, ORDER)
    with pytest.raises(NoLimitError):
        restrict_to_divisor(I5)


def test_monodromy_needs_xy_frame():
    with pytest.raises(FrameMismatchError):
        classify_monodromy(LogSeries(FRAME_Q, scalar_ring(), 2))


def test_negative_exponent_has_no_limit():
    S = scalar_ring()
    f = LogSeries.monomial(FRAME_XY, S, (-1, 0, 0, 0), 1, order=2)
    with pytest.raises(NoLimitError):
        restrict_to_divisor(f)


def test_pipeline_report_shape():
    rep = run_conjecture_pipeline(get_model("local"), 4, with_ledger=False)
    assert rep.passed, rep.failing_stages
    assert (rep.rank_total, rep.rank_trivial) == (6, 4)
    assert rep.limit_verified
    assert [c for _, c in rep.monodromy].count(MonodromyClass.TRIVIAL) == 4
    assert rep.admissible_exponents == ["0", "1/2"]


def test_pipeline_flags_floor_violation():
    # constructed series start at exponent 0
    ok = run_conjecture_pipeline(get_model("local"), 3, with_ledger=False, floor=-0.5)
    assert ok.checks["window_floor"]
    bad = run_conjecture_pipeline(get_model("local"), 3, with_ledger=False, floor=0.5)
    assert "window_floor" in bad.failing_stages
