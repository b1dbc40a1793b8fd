"""Grid experiments on how present bias narrows the enforceable range."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .discounting import DiscountSpec
from .errors import ParameterDomainError
from .policy_game import EquilibriumReport, GameParams, equilibrium_report

CSV_HEADER = ("beta", "delta", "discount_factor", "pi_best_enforceable", "range_width", "width_ratio_vs_beta1")


def _check_grid(name: str, grid: Sequence[float], lo: float, hi: float, hi_closed: bool) -> tuple[float, ...]:
    vals = tuple(float(x) for x in grid)
    if not vals:
        raise ParameterDomainError(name, vals, "grid must be non-empty")
    for x in vals:
        if not math.isfinite(x) or not (lo < x and (x <= hi if hi_closed else x < hi)):
            bound = "]" if hi_closed else ")"
            raise ParameterDomainError(name, x, f"grid values must lie in ({lo}, {hi}{bound}")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ParameterDomainError(name, vals, "grid must be strictly increasing")
    return vals


@dataclass(frozen=True)
class SweepSpec:
    a: float
    b_bar: float
    beta_grid: tuple[float, ...]
    delta_grid: tuple[float, ...]
    q_grid: tuple[float, ...] | None = None
    output_path: str | Path | None = None
    punishment_periods: int = 1

    def __post_init__(self):
        object.__setattr__(self, "beta_grid", _check_grid("beta_grid", self.beta_grid, 0.0, 1.0, True))
        object.__setattr__(self, "delta_grid", _check_grid("delta_grid", self.delta_grid, 0.0, 1.0, False))
        if self.q_grid is not None:
            object.__setattr__(self, "q_grid", _check_grid("q_grid", self.q_grid, 0.0, 1.0, False))
        self.params  # validates a, b_bar, punishment_periods

    @property
    def params(self) -> GameParams:
        return GameParams(self.a, self.b_bar, self.punishment_periods)


@dataclass(frozen=True)
class SweepRow:
    beta: float
    delta: float
    discount_factor: float
    pi_best_enforceable: float
    range_width: float
    width_ratio_vs_beta1: float

    def csv_row(self) -> list[str]:
        return [f"{getattr(self, name):.12g}" for name in CSV_HEADER]


def _row(params: GameParams, beta: float, delta: float) -> SweepRow:
    behavioral = equilibrium_report(params, DiscountSpec.quasi_hyperbolic(beta, delta))
    reference = equilibrium_report(params, DiscountSpec.quasi_hyperbolic(1.0, delta))
    return SweepRow(
        beta=beta,
        delta=delta,
        discount_factor=behavioral.discount_factor,
        pi_best_enforceable=behavioral.pi_best_enforceable,
        range_width=behavioral.range_width,
        width_ratio_vs_beta1=behavioral.range_width / reference.range_width,
    )


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """One row per (beta, delta) pair, sorted by (delta, beta).

    With ``workers > 1`` grid points are evaluated in a thread pool; ordering
    is fixed by the task list, not completion order. If ``spec.output_path``
    is set the table is written there as CSV.
    """
    params = spec.params
    tasks = [(b, d) for d in spec.delta_grid for b in spec.beta_grid]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(lambda bd: _row(params, *bd), tasks))
    else:
        rows = [_row(params, b, d) for b, d in tasks]
    rows.sort(key=lambda r: (r.delta, r.beta))
    if spec.output_path is not None:
        Path(spec.output_path).write_text(sweep_csv(rows), encoding="utf-8")
    return rows


def baseline_reports(spec: SweepSpec) -> list[EquilibriumReport]:
    """Exponential-discounting reports for each q in ``q_grid`` (empty if unset)."""
    if not spec.q_grid:
        return []
    return [equilibrium_report(spec.params, DiscountSpec.from_factor(q)) for q in spec.q_grid]


@dataclass(frozen=True)
class NarrowingSummary:
    min_ratio: float
    monotone: bool
    rows: list[SweepRow]


def narrowing_report(spec: SweepSpec, workers: int = 1) -> NarrowingSummary:
    rows = run_sweep(spec, workers)
    monotone = True
    for prev, cur in zip(rows, rows[1:]):
        if prev.delta == cur.delta and cur.range_width < prev.range_width:
            monotone = False
    return NarrowingSummary(min(r.width_ratio_vs_beta1 for r in rows), monotone, rows)
