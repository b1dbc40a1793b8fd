"""Randomized cross-checks between closed forms and brute-force routes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discounting import DiscountSpec
from .errors import NumericalError
from .policy_game import (
    GameParams,
    enforcement,
    equilibrium_report,
    iterate_discretion,
    solve_enforceable_rule,
    temptation,
)
from .repeated_game import PolicymakerProfile, detect_reversal, one_shot_deviation_value


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _record(res: CheckResult, ok: bool) -> None:
    if ok:
        res.passed += 1
    else:
        res.failed += 1


def run_checks(trials: int = 1000, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)

    rule = CheckResult("closed_form_vs_bisection")
    for _ in range(trials):
        p = GameParams(rng.uniform(0.5, 4.0), rng.uniform(0.5, 2.0))
        df = rng.uniform(0.05, 0.95)
        try:
            sol = solve_enforceable_rule(p, df)
            _record(rule, abs(sol.bisection - sol.closed_form) <= 1e-10 * sol.closed_form)
        except NumericalError:
            _record(rule, False)

    dev = CheckResult("deviation_oracle")
    for _ in range(trials):
        p = GameParams(rng.uniform(0.5, 4.0), rng.uniform(0.5, 2.0))
        df = rng.uniform(0.05, 0.95)
        target = rng.uniform(0.0, p.pi_discretion)
        analytic = temptation(target, p) - enforcement(target, p, df)
        brute = one_shot_deviation_value(p, DiscountSpec.from_factor(df), target)
        _record(dev, abs(analytic - brute) <= 1e-12 and np.sign(analytic) == np.sign(brute))

    disc = CheckResult("discretion_fixed_point")
    for _ in range(trials):
        p = GameParams(rng.uniform(0.5, 4.0), rng.uniform(0.5, 2.0))
        value, _steps = iterate_discretion(p)
        _record(disc, abs(value - p.b_bar / p.a) <= 1e-12)

    red = CheckResult("beta_one_reduction")
    for _ in range(trials):
        p = GameParams(rng.uniform(0.5, 4.0), rng.uniform(0.5, 2.0))
        delta = rng.uniform(0.05, 0.95)
        base = equilibrium_report(p, DiscountSpec.from_factor(delta)).to_dict(rounded=False)
        beh = equilibrium_report(p, DiscountSpec.quasi_hyperbolic(1.0, delta)).to_dict(rounded=False)
        base.pop("mode"), beh.pop("mode")
        _record(red, base == beh)

    rev = CheckResult("reversal_region")
    for _ in range(trials):
        p = GameParams(rng.uniform(0.5, 4.0), rng.uniform(0.5, 2.0))
        beta = rng.uniform(0.01, 1.0)
        beta_hat = beta + rng.uniform(0.0, 1.0) * (1.0 - beta)
        delta = rng.uniform(0.05, 0.95)
        target = rng.uniform(0.0, p.pi_discretion)
        prof = PolicymakerProfile(beta, beta_hat, delta)
        t_val = (p.a * target - p.b_bar) ** 2 / (2 * p.a)
        e_val = p.b_bar**2 / (2 * p.a) - p.a * target**2 / 2
        expected = beta * delta * e_val < t_val <= beta_hat * delta * e_val
        _record(rev, detect_reversal(prof, p, target) == expected)

    return [rule, dev, disc, red, rev]
