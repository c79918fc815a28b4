import json
import os
import subprocess
import sys

import pytest

from extransit import cli
from extransit.analysis import ConjectureReport
from extransit.report import ConfigError, RunConfig, body_of


def run(*args, env=None):
    e = dict(os.environ)
    e.pop(cli.OUTPUT_DIR_ENV, None)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "extransit", *args],
                          capture_output=True, text=True, env=e)


def test_verify_local_writes_report(tmp_path):
    out = tmp_path / "out.json"
    p = run("verify", "--model", "local", "--order", "6", "--json", str(out))
    assert p.returncode == 0, p.stderr
    doc = json.loads(out.read_text())
    assert doc["models"][0]["rank_total"] == 6
    assert set(doc["hard_checks"].values()) == {"pass"}


def test_body_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run("verify", "--model", "t33", "--order", "3", "--json", str(path)).returncode == 0
    ta, tb = a.read_text(), b.read_text()
    assert body_of(ta) == body_of(tb)
    assert json.loads(ta)["excluded"]["body_sha256"] == json.loads(tb)["excluded"]["body_sha256"]


def test_sorted_keys_and_rationals(tmp_path):
    p = run("instantons", "--model", "t24", "--max-degree", "1")
    assert p.returncode == 0
    doc = json.loads(p.stdout)
    assert list(doc) == sorted(doc)
    assert doc["config"]["floor"] == "-4/1"
    tab = doc["instantons"][0]
    assert tab["n"]["1"] == "1280/1" and tab["lines_oracle"] == 1280

    def floats(o):
        if isinstance(o, dict):
            return any(floats(v) for v in o.values())
        if isinstance(o, list):
            return any(floats(v) for v in o)
        return isinstance(o, float)
    assert not floats({k: v for k, v in doc.items() if k != "excluded"})


def test_order_one_rejected():
    p = run("verify", "--model", "local", "--order", "1")
    assert p.returncode == 2
    assert "order" in p.stderr


def test_local_instantons_unsupported():
    p = run("instantons", "--model", "local")
    assert p.returncode == 2


def test_unknown_model_rejected():
    assert run("verify", "--model", "quintic").returncode == 2


def test_unwritable_output(tmp_path):
    p = run("instantons", "--model", "t33", "--max-degree", "1",
            "--json", str(tmp_path / "missing" / "r.json"))
    assert p.returncode == 3


def test_output_dir_env(tmp_path):
    p = run("instantons", "--model", "t33", "--max-degree", "3",
            env={cli.OUTPUT_DIR_ENV: str(tmp_path)})
    assert p.returncode == 0 and p.stdout == ""
    doc = json.loads((tmp_path / "report-instantons-t33.json").read_text())
    n = doc["instantons"][0]["n"]
    assert all(v.endswith("/1") for v in n.values())


def test_failing_stage_exit_code(monkeypatch, capsys):
    def broken(mid, order, **kw):
        rep = ConjectureReport(mid)
        rep.checks.update({"limit": False, "rank_total": True})
        return rep
    monkeypatch.setattr(cli, "run_conjecture_pipeline", broken)
    assert cli.main(["verify", "--model", "local"]) == 1
    err = capsys.readouterr().err
    assert "FAIL local:limit" in err and "rank_total" not in err


@pytest.mark.parametrize("kw", [{"model": "x"}, {"order": 1}, {"d_max": 0},
                                {"floor": 0}, {"floor": -1.25}])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        RunConfig(**kw)
