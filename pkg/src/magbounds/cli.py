"""Command-line interface.

Every command writes a JSON envelope ``{tool_version, config, results,
timing_ms}``.  Exit status: 0 on success, 2 when a ``verify`` run produced a
verdict other than the expected one, 1 on any error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import bounds
from .abflux import ab_constant
from .bschwinger import SUITES, run_suite
from .constants import constant_table
from .eig import eigenvalues
from .errors import MagboundsError
from .landau import landau_ratio_sup
from .lattice import GaugeField, assemble_magnetic, build_domain

__all__ = ["RunConfig", "main", "run"]

VERIFY_IDS = ("bly", "blyhom", "blymagnonsharp", "polya", "blyhommod", "homneu",
              "magdomain", "diamagdisc", "lifting", "abstract")
CONFIG_KEYS = frozenset({
    "shape", "n", "bc", "aspect", "gauge", "gamma", "alpha", "sigma", "kappa",
    "lambdas", "lambda_range", "slack", "expect", "window", "eig_window", "num",
    "check_window", "count",
})
GAUGE_KEYS = frozenset({"kind", "B", "alpha"})
SIG_DIGITS = 9


def _tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:  # pragma: no cover - running from a source tree
        return "0.1.0"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage errors to exit code 1
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    seed: int = 0

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "params": self.params,
                           "output_path": self.output_path, "seed": self.seed},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        unknown = set(data) - {"command", "params", "output_path", "seed"}
        if unknown:
            raise UsageError(f"unknown run-config keys: {sorted(unknown)}")
        return cls(data["command"], dict(data.get("params", {})),
                   data.get("output_path"), int(data.get("seed", 0)))


def _round(obj):
    """Round floats to 9 significant digits; non-finite values become strings."""
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    gauge = cfg.get("gauge", {"kind": "zero"})
    if not isinstance(gauge, dict) or set(gauge) - GAUGE_KEYS:
        raise UsageError(f"gauge must be an object with keys among {sorted(GAUGE_KEYS)}")
    return cfg


def _domain(cfg: dict, bc: str | None = None):
    return build_domain(cfg.get("shape", "square"), int(cfg.get("n", 32)),
                        bc or cfg.get("bc", "dirichlet"), float(cfg.get("aspect", 2.0)))


def _gauge(cfg: dict) -> GaugeField:
    g = cfg.get("gauge", {"kind": "zero"})
    return GaugeField(g.get("kind", "zero"), float(g.get("B", 0.0)), float(g.get("alpha", 0.0)))


def _field_strength(gauge: GaugeField) -> float:
    return gauge.B if gauge.kind.startswith("homogeneous") else 0.0


def _grid(cfg: dict, domain) -> np.ndarray:
    if "lambdas" in cfg:
        return np.asarray(cfg["lambdas"], dtype=float)
    limit = bounds.validity_limit(domain)
    lo, hi, num = cfg.get("lambda_range", [0.05 * limit, limit, 80])
    return np.linspace(float(lo), float(hi), int(num))


def _cmd_constants(args) -> list:
    return [row.as_dict() for row in constant_table(args.gamma, args.d, args.alpha,
                                                     args.sigma, args.kappa)]


def _cmd_landau_sup(args) -> list:
    res = landau_ratio_sup(args.B, args.gamma, args.tol)
    return [{"sup": res.sup, "argmax_lambda": res.argmax_lambda, "kind": res.kind}]


def _cmd_ab_constant(args) -> list:
    return [ab_constant(args.gamma, args.flux).as_dict()]


def _cmd_spectrum(cfg: dict) -> list:
    domain = _domain(cfg)
    spec = eigenvalues(assemble_magnetic(domain, _gauge(cfg)).matrix)
    count = int(cfg.get("count", 20))
    return [{"index": k + 1, "value": float(v)} for k, v in enumerate(spec.values[:count])]


def _verify_lattice(kind: str, cfg: dict) -> tuple[list, str]:
    gamma = float(cfg.get("gamma", 1.0))
    gauge = _gauge(cfg)
    B = _field_strength(gauge)
    bc = "neumann" if kind == "homneu" else None
    domain = _domain(cfg, bc)
    grid = _grid(cfg, domain)
    slack = cfg.get("slack")
    spec = eigenvalues(assemble_magnetic(domain, gauge).matrix)
    if kind in ("bly", "blyhom", "blymagnonsharp", "polya"):
        reports = bounds.verify_bly(spec, domain, B, gamma, grid, slack, inequality_id=kind)
    elif kind == "blyhommod":
        reports = bounds.verify_blyhommod(spec, domain, B, gamma, grid, slack)
    elif kind == "homneu":
        reports = bounds.verify_homneu(spec, domain, B, gamma, grid, slack)
    elif kind == "magdomain":
        reports = bounds.verify_magdomain(spec, gamma, grid, slack or 0.0)
    elif kind == "diamagdisc":
        free = eigenvalues(assemble_magnetic(domain).matrix)
        reports = bounds.verify_diamagdisc(free, spec, gamma, float(cfg.get("alpha", gamma + 1.0)),
                                           grid, slack or 0.0)
    else:  # lifting
        reports = bounds.verify_lifting(spec, gamma, float(cfg.get("sigma", 1.5)),
                                        float(cfg.get("kappa", 1.0)), grid, slack or 0.0)
    return [r.as_dict() for r in reports], cfg.get("expect", "holds")


def _cmd_verify(args) -> tuple[list, int, dict]:
    if args.inequality == "abstract":
        if args.suite is None:
            raise UsageError("verify abstract needs --suite")
        res = run_suite(args.suite, args.instances, args.seed)
        params = {"suite": args.suite, "instances": args.instances, "seed": args.seed}
        ok = res.passed
        print(f"{'PASS' if ok else 'FAIL'} abstract/{args.suite}: "
              f"{res.violations} violations in {res.checks} checks", file=sys.stderr)
        return [res.as_dict()], 0 if ok else 2, params
    if args.config is None:
        raise UsageError(f"verify {args.inequality} needs --config")
    cfg = _load_config(args.config)
    rows, expect = _verify_lattice(args.inequality, cfg)
    if expect not in ("holds", "violated", "any_violated"):
        raise UsageError(f"expect must be 'holds', 'violated' or 'any_violated', got {expect!r}")
    verdicts = [r["verdict"] for r in rows]
    if expect == "any_violated":
        ok = "violated" in verdicts
    else:
        ok = all(v == expect for v in verdicts)
    n_hold = verdicts.count("holds")
    print(f"{'PASS' if ok else 'FAIL'} {args.inequality}: {n_hold}/{len(rows)} hold "
          f"(expected {expect})", file=sys.stderr)
    return rows, 0 if ok else 2, cfg


def _cmd_weyl_scan(cfg: dict) -> list:
    domain = _domain(cfg)
    spec = eigenvalues(assemble_magnetic(domain, _gauge(cfg)).matrix)
    if "eig_window" in cfg:
        i, j = (int(k) for k in cfg["eig_window"])
        window = (spec.values[i - 1], spec.values[j - 1])
    else:
        window = tuple(cfg.get("window", (1.0, bounds.validity_limit(domain))))
    rows = bounds.weyl_scan(spec, domain, window, int(cfg.get("num", 200)),
                            bool(cfg.get("check_window", True)))
    return [{"lambda": lam, "ratio": r} for lam, r in rows]


def _write_csv(rows: list, path: str) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\r\n")
    writer.writeheader()
    for row in _round(rows):
        writer.writerow(row)
    Path(path).write_text(buf.getvalue())


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="magbounds", description="Magnetic eigenvalue bounds toolkit.")
    p.add_argument("--output", help="write the JSON envelope here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constants", help="closed-form constants")
    c.add_argument("--gamma", type=float, required=True)
    c.add_argument("--d", type=int, default=2)
    c.add_argument("--alpha", type=float)
    c.add_argument("--sigma", type=float, default=1.5)
    c.add_argument("--kappa", type=float)

    c = sub.add_parser("landau-sup", help="supremum of the Landau ratio")
    c.add_argument("--B", type=float, default=1.0)
    c.add_argument("--gamma", type=float, required=True)
    c.add_argument("--tol", type=float, default=1e-6)

    c = sub.add_parser("ab-constant", help="sharp Aharonov-Bohm constant")
    c.add_argument("--gamma", type=float, required=True)
    c.add_argument("--flux", type=float, required=True)

    c = sub.add_parser("spectrum", help="lowest lattice eigenvalues")
    c.add_argument("--config", required=True)

    c = sub.add_parser("verify", help="check an inequality on lattice spectra")
    c.add_argument("inequality", choices=VERIFY_IDS)
    c.add_argument("--config")
    c.add_argument("--suite", choices=SUITES)
    c.add_argument("--instances", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("weyl-scan", help="counting-function ratio across a window")
    c.add_argument("--config", required=True)
    c.add_argument("--csv", help="also write the scan rows as CSV")
    return p


def run(argv: list[str] | None = None) -> int:
    """Run one command; returns the exit status."""
    start = time.perf_counter()
    try:
        args = _parser().parse_args(argv)
        status = 0
        if args.command == "constants":
            results, config = _cmd_constants(args), vars(args)
        elif args.command == "landau-sup":
            results, config = _cmd_landau_sup(args), vars(args)
        elif args.command == "ab-constant":
            results, config = _cmd_ab_constant(args), vars(args)
        elif args.command == "spectrum":
            config = _load_config(args.config)
            results = _cmd_spectrum(config)
        elif args.command == "verify":
            results, status, config = _cmd_verify(args)
        else:
            config = _load_config(args.config)
            results = _cmd_weyl_scan(config)
            if args.csv:
                _write_csv(results, args.csv)
        config = {k: v for k, v in dict(config).items() if k != "output"}
        envelope = {
            "tool_version": _tool_version(),
            "config": config,
            "results": _round(results),
            "timing_ms": int(round(1000 * (time.perf_counter() - start))),
        }
        text = json.dumps(envelope, indent=2)
        if args.output:
            Path(args.output).write_text(text + "\n")
        else:
            print(text)
        return status
    except (UsageError, MagboundsError, ValueError, OSError) as exc:
        print(f"magbounds: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
