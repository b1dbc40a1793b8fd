"""Command-line front end: ``policy-game-lab {analyze,simulate,sweep,verify}``.

Every model flag has a JSON config counterpart: kebab-case flags map to
camelCase keys (``--b-bar`` -> ``bBar``, ``--beta-hat`` -> ``betaHat``).
Flags override config values.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from pathlib import Path

from .discounting import DiscountSpec
from .errors import NumericalError, PolicyGameError
from .policy_game import REPORT_FIELDS, GameParams, ShockSpec, equilibrium_report
from .repeated_game import PolicymakerProfile, simulate
from .sweep import SweepSpec, baseline_reports, narrowing_report, sweep_csv
from .verify import run_checks

log = logging.getLogger("policy_game_lab")

EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3

# flag dest -> config key
CONFIG_KEYS = {
    "a": "a",
    "b_bar": "bBar",
    "beta": "beta",
    "beta_hat": "betaHat",
    "delta": "delta",
    "q": "q",
    "target": "target",
    "horizon": "horizon",
    "punishment_periods": "punishmentPeriods",
    "committed": "committed",
    "sanction": "sanction",
    "seed": "seed",
    "format": "format",
    "output": "output",
    "shock": "shock",
    "shock_width": "shockWidth",
    "shock_scale": "shockScale",
    "beta_grid": "betaGrid",
    "delta_grid": "deltaGrid",
    "q_grid": "qGrid",
    "trials": "trials",
    "workers": "workers",
}

DEFAULTS = {
    "a": 1.0,
    "b_bar": 1.0,
    "beta": 1.0,
    "beta_hat": None,
    "delta": 0.9,
    "q": None,
    "target": 0.0,
    "horizon": 20,
    "punishment_periods": 1,
    "committed": False,
    "sanction": math.inf,
    "seed": 0,
    "format": "json",
    "output": None,
    "shock": "none",
    "shock_width": 0.5,
    "shock_scale": 0.05,
    "beta_grid": [0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
    "delta_grid": [0.5, 0.6, 0.7, 0.8, 0.9, 0.95],
    "q_grid": None,
    "trials": 1000,
    "workers": 1,
}


class ConfigError(PolicyGameError, ValueError):
    pass


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _add_common(p: argparse.ArgumentParser) -> None:
    # defaults are None so that unset flags fall through to config then DEFAULTS
    g = p.add_argument_group("global")
    g.add_argument("--config", type=Path, help="JSON config file")
    g.add_argument("--output", help="write data here instead of stdout")
    g.add_argument("--format", choices=("json", "csv", "text"))
    g.add_argument("--seed", type=int)
    m = p.add_argument_group("model")
    m.add_argument("--a", type=float)
    m.add_argument("--b-bar", dest="b_bar", type=float)
    m.add_argument("--beta", type=float)
    m.add_argument("--beta-hat", dest="beta_hat", type=float)
    m.add_argument("--delta", type=float)
    m.add_argument("--q", type=float, help="baseline exponential factor (defaults to delta)")
    m.add_argument("--target", type=float)
    m.add_argument("--horizon", type=int)
    m.add_argument("--punishment-periods", dest="punishment_periods", type=int)
    m.add_argument("--committed", action="store_const", const=True)
    m.add_argument("--sanction", type=float)
    m.add_argument("--shock", choices=("none", "uniform", "logistic"))
    m.add_argument("--shock-width", dest="shock_width", type=float, help="uniform half-width around b_bar")
    m.add_argument("--shock-scale", dest="shock_scale", type=float, help="logistic scale")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="policy-game-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "baseline and behavioral equilibrium reports"),
        ("simulate", "simulate one trajectory"),
        ("sweep", "enforceable-range sweep over beta and delta"),
        ("verify", "run the randomized oracle-equivalence checks"),
    ):
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp)
        if name == "sweep":
            sp.add_argument("--beta-grid", dest="beta_grid", type=_float_list)
            sp.add_argument("--delta-grid", dest="delta_grid", type=_float_list)
            sp.add_argument("--q-grid", dest="q_grid", type=_float_list)
            sp.add_argument("--workers", type=int)
        if name == "verify":
            sp.add_argument("--trials", type=int)
    return parser


def load_config(path: Path | None) -> dict:
    if path is None:
        return {}
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {v: k for k, v in CONFIG_KEYS.items()}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return {known[k]: v for k, v in data.items()}


def effective_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(load_config(args.config))
    for dest in CONFIG_KEYS:
        v = getattr(args, dest, None)
        if v is not None:
            cfg[dest] = v
    if cfg["beta_hat"] is None:
        cfg["beta_hat"] = cfg["beta"]
    if cfg["format"] not in ("json", "csv", "text"):
        raise ConfigError(f"format={cfg['format']!r} must be json, csv or text")
    return cfg


def _echo(cfg: dict) -> dict:
    out = {}
    for dest, key in CONFIG_KEYS.items():
        v = cfg[dest]
        if isinstance(v, float) and math.isinf(v):
            v = None
        out[key] = v
    return out


def _game(cfg: dict) -> GameParams:
    shock = None
    b = cfg["b_bar"]
    if cfg["shock"] == "uniform":
        w = cfg["shock_width"]
        shock = ShockSpec("uniform", lo=b - w, hi=b + w, seed=cfg["seed"])
    elif cfg["shock"] == "logistic":
        shock = ShockSpec("logistic", mean=b, scale=cfg["shock_scale"], seed=cfg["seed"])
    elif cfg["shock"] != "none":
        raise ConfigError(f"shock={cfg['shock']!r} must be none, uniform or logistic")
    return GameParams(cfg["a"], b, cfg["punishment_periods"], shock)


def _emit(text: str, cfg: dict) -> None:
    if cfg["output"]:
        Path(cfg["output"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_sidecar(cfg: dict) -> None:
    # csv output has a fixed header, so the config echo goes next to it
    if cfg["output"]:
        Path(str(cfg["output"]) + ".config.json").write_text(
            json.dumps(_echo(cfg), indent=2) + "\n", encoding="utf-8"
        )
    else:
        log.info("effective config: %s", json.dumps(_echo(cfg)))


def cmd_analyze(cfg: dict) -> int:
    params = _game(cfg)
    q = cfg["q"] if cfg["q"] is not None else cfg["delta"]
    base = equilibrium_report(params, DiscountSpec.from_factor(q))
    beh = equilibrium_report(params, DiscountSpec.quasi_hyperbolic(cfg["beta"], cfg["delta"]))
    fmt = cfg["format"]
    if fmt == "json":
        doc = {"config": _echo(cfg), "baseline": base.to_dict(), "behavioral": beh.to_dict()}
        _emit(json.dumps(doc, indent=2) + "\n", cfg)
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_FIELDS)
        for rep in (base, beh):
            d = rep.to_dict()
            w.writerow([d["mode"]] + [f"{d[k]:.12g}" for k in REPORT_FIELDS[1:]])
        _emit(buf.getvalue(), cfg)
        _write_sidecar(cfg)
    else:
        lines = [f"config: {json.dumps(_echo(cfg))}", f"{'field':<22}{'baseline':>18}{'behavioral':>18}"]
        bd, hd = base.to_dict(), beh.to_dict()
        for k in REPORT_FIELDS:
            lines.append(f"{k:<22}{str(bd[k]):>18}{str(hd[k]):>18}")
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def cmd_simulate(cfg: dict) -> int:
    params = _game(cfg)
    profile = PolicymakerProfile(
        beta=cfg["beta"],
        beta_hat=cfg["beta_hat"],
        delta=cfg["delta"],
        committed=bool(cfg["committed"]),
        sanction=math.inf if cfg["sanction"] is None else float(cfg["sanction"]),
    )
    traj = simulate(profile, params, None, cfg["target"], cfg["horizon"], seed=cfg["seed"])
    fmt = cfg["format"]
    if fmt == "json":
        doc = {"config": _echo(cfg), **traj.to_dict()}
        _emit(json.dumps(doc, indent=2) + "\n", cfg)
    elif fmt == "csv":
        _emit(traj.to_csv(), cfg)
        _write_sidecar(cfg)
    else:
        s = traj.to_dict()["summary"]
        head = [
            f"config: {json.dumps(_echo(cfg))}",
            f"type: {traj.policymaker_type.value}",
            f"cheats: {s['cheat_count']}  reversals: {s['reversal_count']}  "
            f"discounted loss: {s['total_discounted_loss_actual_beta']}",
        ]
        _emit("\n".join(head) + "\n" + traj.to_csv(), cfg)
    return EXIT_OK


def cmd_sweep(cfg: dict) -> int:
    spec = SweepSpec(
        a=cfg["a"],
        b_bar=cfg["b_bar"],
        beta_grid=cfg["beta_grid"],
        delta_grid=cfg["delta_grid"],
        q_grid=cfg["q_grid"],
        punishment_periods=cfg["punishment_periods"],
    )
    summary = narrowing_report(spec, workers=cfg["workers"])
    fmt = cfg["format"]
    if fmt == "json":
        doc = {
            "config": _echo(cfg),
            "min_ratio": float(f"{summary.min_ratio:.12g}"),
            "monotone": summary.monotone,
            "rows": [dict(zip(r.__dataclass_fields__, map(float, r.csv_row()))) for r in summary.rows],
            "baseline": [rep.to_dict() for rep in baseline_reports(spec)],
        }
        _emit(json.dumps(doc, indent=2) + "\n", cfg)
    else:
        _emit(sweep_csv(summary.rows), cfg)
        _write_sidecar(cfg)
    log.info("min width ratio %.6g, monotone=%s", summary.min_ratio, summary.monotone)
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    results = run_checks(trials=cfg["trials"], seed=cfg["seed"])
    lines = [f"{r.name}: {r.passed} passed, {r.failed} failed" for r in results]
    total_failed = sum(r.failed for r in results)
    lines.append(f"total: {sum(r.passed for r in results)} passed, {total_failed} failed")
    _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK if total_failed == 0 else EXIT_NUMERICAL


COMMANDS = {"analyze": cmd_analyze, "simulate": cmd_simulate, "sweep": cmd_sweep, "verify": cmd_verify}


def _setup_logging() -> None:
    level = os.environ.get("POLICY_GAME_LAB_LOG", "warn").lower()
    levels = {"error": logging.ERROR, "warn": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.WARNING), stream=sys.stderr, format="%(levelname)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        cfg = effective_config(args)
        return COMMANDS[args.command](cfg)
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PolicyGameError, ValueError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
