"""Bit-stable JSON report documents."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .analysis import ConjectureReport
from .instantons import InstantonTable

MODEL_CHOICES = ("local", "t24", "t33", "all")
CY_MODELS = ("t24", "t33")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str = "all"
    order: int = 6
    floor: Fraction = Fraction(-4)
    d_max: int = 3
    output: Optional[str] = None
    emit_ledger: bool = True

    def __post_init__(self):
        if self.model not in MODEL_CHOICES:
            raise ConfigError("model must be one of %s" % ", ".join(MODEL_CHOICES))
        if self.order < 2:
            raise ConfigError("order must be >= 2")
        if self.d_max < 1:
            raise ConfigError("max degree must be >= 1")
        if self.floor > -1:
            raise ConfigError("exponent floor must be <= -1 (x^-1 shifts need room)")
        if (2 * Fraction(self.floor)).denominator != 1:
            raise ConfigError("exponent floor must be a half-integer")

    @property
    def models(self) -> List[str]:
        return ["local", "t24", "t33"] if self.model == "all" else [self.model]

    def echo(self) -> Dict[str, object]:
        return {"model": self.model, "order": self.order, "floor": self.floor,
                "max_degree": self.d_max, "emit_ledger": self.emit_ledger}


def rational(v: Fraction) -> str:
    v = Fraction(v)
    return "%d/%d" % (v.numerator, v.denominator)


def _plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in the report body")
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    raise TypeError("cannot serialize %r" % type(obj))


def model_entry(rep: ConjectureReport) -> Dict[str, object]:
    return {
        "id": rep.model_id,
        "rank_total": rep.rank_total,
        "rank_trivial": rep.rank_trivial,
        "monodromy": [{"label": lab, "class": cls} for lab, cls in rep.monodromy],
        "limit_verified": rep.limit_verified,
        "annihilation": dict(rep.annihilation),
        "admissible_exponents": list(rep.admissible_exponents),
        "checks": {k: "pass" if ok else "fail" for k, ok in rep.checks.items()},
        "errors": dict(rep.errors),
    }


def instanton_entry(t: InstantonTable) -> Dict[str, object]:
    return {
        "id": t.model_id,
        "n0": t.n0,
        "n": {str(d): v for d, v in sorted(t.numbers.items())},
        "discriminant": t.discriminant,
        "mirror_map": list(t.mirror_map),
        "lines_oracle": t.oracle_n1,
        "checks": {k: "pass" if ok else "fail" for k, ok in t.checks.items()},
    }


@dataclass
class ReportDocument:
    version: str
    config: RunConfig
    models: List[ConjectureReport] = field(default_factory=list)
    instantons: List[InstantonTable] = field(default_factory=list)
    stage_times: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def hard_checks(self) -> Dict[str, bool]:
        out = {}
        for rep in self.models:
            for k, ok in rep.checks.items():
                if k != "ledger":
                    out["%s:%s" % (rep.model_id, k)] = ok
        for t in self.instantons:
            for k, ok in t.checks.items():
                out["%s:instantons:%s" % (t.model_id, k)] = ok
        return out

    @property
    def failing(self) -> List[str]:
        return sorted(k for k, ok in self.hard_checks().items() if not ok)

    def body(self) -> Dict[str, object]:
        ledger = []
        if self.config.emit_ledger:
            for rep in self.models:
                ledger.extend(rep.ledger.as_list())
        body = {
            "version": self.version,
            "config": self.config.echo(),
            "models": [model_entry(r) for r in self.models],
            "instantons": [instanton_entry(t) for t in self.instantons],
            "ledger": ledger,
            "hard_checks": {k: "pass" if ok else "fail" for k, ok in self.hard_checks().items()},
        }
        return _plain(body)

    def body_text(self) -> str:
        return json.dumps(self.body(), sort_keys=True, indent=2, ensure_ascii=True)

    def to_json(self) -> str:
        """Body plus an excluded section holding the digest and wall times."""
        body = self.body()
        digest = hashlib.sha256(self.body_text().encode()).hexdigest()
        times = {m: {s: "%.6f" % t for s, t in sorted(st.items())}
                 for m, st in sorted(self.stage_times.items())}
        doc = dict(body)
        doc["excluded"] = {"body_sha256": digest, "stage_times": times}
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def body_of(text: str) -> str:
    """Canonical body text of a serialized report (drops the excluded section)."""
    doc = json.loads(text)
    doc.pop("excluded", None)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)
