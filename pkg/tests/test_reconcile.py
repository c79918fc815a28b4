import pytest

from extransit.models import build_I_Y, get_model
from extransit.analysis import restrict_to_divisor
from extransit.reconcile import (DiscrepancyLedger, ReconciliationError, build_Ibar_Y,
                                 reconcile_printed, resolve_ibar_variant)

from conftest import MODEL_IDS


@pytest.fixture(scope="module", params=MODEL_IDS)
def ledger(request):
    return request.param, reconcile_printed(get_model(request.param), 4)


def test_ledger_covers_printed_formulas(ledger):
    mid, led = ledger
    locs = {e.location for e in led}
    want = {"series:I_X", "series:I_Y", "series:Ibar_Y", "operator:Delta1",
            "operator:Delta2", "transformed:Delta1'", "transformed:Delta2'",
            "recursion:x-shift", "recursion:xy-shift"}
    if mid != "local":
        want |= {"operator:L", "transformed:L'", "factorization"}
    assert {"%s:%s" % (mid, w) for w in want} == locs


def test_changed_entries_carry_evidence(ledger):
    _, led = ledger
    for e in led:
        if e.adopted != e.printed:
            assert not e.residual_zero
            assert "residual" in e.justification or "slice" in e.justification


def test_local_delta2_reconciles():
    led = reconcile_printed(get_model("local"), 4)
    assert led.find("local:operator:Delta2").residual_zero
    assert led.find("local:transformed:Delta2'").residual_zero


def test_factorizations_documented():
    t24 = reconcile_printed(get_model("t24"), 4).find("t24:factorization")
    t33 = reconcile_printed(get_model("t33"), 4).find("t33:factorization")
    assert t24.residual_zero
    assert not t33.residual_zero and "Delta2 :=" in t33.adopted


def test_ibar_variants():
    assert resolve_ibar_variant("local").changes == 0
    assert resolve_ibar_variant("t24").changes == 2
    assert resolve_ibar_variant("t33").changes == 2


def test_printed_policy_rejects_bad_ibar():
    with pytest.raises(ReconciliationError):
        build_Ibar_Y(get_model("t33"), 3, variant_policy="printed")
    assert build_Ibar_Y(get_model("local"), 3, variant_policy="printed") == \
        build_Ibar_Y(get_model("local"), 3)


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_adopted_slice_is_I_Y(mid):
    spec = get_model(mid)
    assert restrict_to_divisor(build_Ibar_Y(spec, 5)) == build_I_Y(spec, 5)


def test_ledger_serialization():
    led = DiscrepancyLedger()
    led.add("m:operator:A", "a", "a", True, "same")
    assert led.as_list() == [{"location": "m:operator:A", "printed": "a", "adopted": "a",
                              "residual_zero": True, "justification": "same"}]
    assert len(led) == 1 and led.find("nope") is None
