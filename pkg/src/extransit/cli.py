"""extransit command line: ``verify`` and ``instantons``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .analysis import run_conjecture_pipeline
from .instantons import instanton_numbers
from .report import CY_MODELS, ConfigError, ReportDocument, RunConfig

log = logging.getLogger("extransit")

OUTPUT_DIR_ENV = "EXTRANSIT_OUTPUT_DIR"

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_CONFIG = 2
EXIT_OUTPUT = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extransit", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model_default):
        sp.add_argument("--model", default=model_default)
        sp.add_argument("--order", type=int, default=6)
        sp.add_argument("--floor", type=Fraction, default=Fraction(-4))
        sp.add_argument("--max-degree", type=int, default=3, dest="d_max")
        sp.add_argument("--json", dest="output", default=None,
                        help="report path (default: $%s/report-<command>-<model>.json, else stdout)"
                             % OUTPUT_DIR_ENV)
        sp.add_argument("--no-ledger", dest="emit_ledger", action="store_false")

    common(sub.add_parser("verify", help="run the transition checks"), "all")
    common(sub.add_parser("instantons", help="instanton numbers of the Calabi-Yau models"), "all")
    return p


def _config(args) -> RunConfig:
    return RunConfig(model=args.model, order=args.order, floor=args.floor,
                     d_max=args.d_max, output=args.output, emit_ledger=args.emit_ledger)


def _output_path(cfg: RunConfig, command: str) -> Optional[str]:
    if cfg.output:
        return cfg.output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base:
        return os.path.join(base, "report-%s-%s.json" % (command, cfg.model))
    return None


def cmd_verify(cfg: RunConfig) -> ReportDocument:
    doc = ReportDocument(__version__, cfg)
    for mid in cfg.models:
        log.info("verifying %s at order %d", mid, cfg.order)
        rep = run_conjecture_pipeline(mid, cfg.order, with_ledger=cfg.emit_ledger,
                                      floor=cfg.floor)
        doc.models.append(rep)
        doc.stage_times[mid] = dict(rep.stage_times)
    return doc


def cmd_instantons(cfg: RunConfig) -> ReportDocument:
    if cfg.model == "local":
        raise ConfigError("instantons: model 'local' is not Calabi-Yau (unsupported)")
    doc = ReportDocument(__version__, cfg)
    for mid in [m for m in cfg.models if m in CY_MODELS]:
        t = time.perf_counter()
        doc.instantons.append(instanton_numbers(mid, cfg.d_max))
        doc.stage_times[mid] = {"instantons": time.perf_counter() - t}
    return doc


def main(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = _config(args)
        doc = cmd_verify(cfg) if args.command == "verify" else cmd_instantons(cfg)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    text = doc.to_json()
    path = _output_path(cfg, args.command)
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print("error: cannot write report to %s: %s" % (path, exc), file=sys.stderr)
            return EXIT_OUTPUT
    else:
        sys.stdout.write(text)
    failing = doc.failing
    if failing:
        for name in failing:
            print("FAIL %s" % name, file=sys.stderr)
        return EXIT_CHECKS_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
