"""Reputational monetary-policy game: per-period loss, temptation, enforcement.

The policymaker's period loss is ``(a/2) pi**2 - b (pi - pi_e)``. Cheating on an
announced target buys a one-period gain (temptation); private agents answer with
discretionary expectations for ``punishment_periods`` periods, whose discounted
cost is the enforcement. A target is enforceable when temptation does not exceed
enforcement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .discounting import DiscountKind, DiscountSpec
from .errors import NumericalError, ParameterDomainError, UnsupportedModeError

# Mass of a logistic shock allowed below zero before it is rejected as non-positive.
_LOGISTIC_NEGATIVE_MASS = 1e-6


class ShockKind(str, Enum):
    NONE = "none"
    UNIFORM = "uniform"
    LOGISTIC = "logistic"


@dataclass(frozen=True)
class ShockSpec:
    """Distribution of the per-period benefit slope b_t.

    ``uniform`` draws on ``[lo, hi]``; ``logistic`` draws from a logistic law
    with location ``mean`` and ``scale`` and resamples the (negligible) draws
    that fall at or below zero.
    """

    distribution: ShockKind = ShockKind.NONE
    lo: float | None = None
    hi: float | None = None
    mean: float | None = None
    scale: float | None = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "distribution", ShockKind(self.distribution))
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ParameterDomainError("seed", self.seed, "must be a 64-bit unsigned integer")
        if self.distribution is ShockKind.UNIFORM:
            _require_finite(lo=self.lo, hi=self.hi)
            if not 0 < self.lo < self.hi:
                raise ParameterDomainError("lo", self.lo, "uniform support must satisfy 0 < lo < hi")
        elif self.distribution is ShockKind.LOGISTIC:
            _require_finite(mean=self.mean, scale=self.scale)
            if not self.scale > 0:
                raise ParameterDomainError("scale", self.scale, "must be > 0")
            if not self.mean > 0:
                raise ParameterDomainError("mean", self.mean, "must be > 0")
            if 1.0 / (1.0 + math.exp(self.mean / self.scale)) > _LOGISTIC_NEGATIVE_MASS:
                raise ParameterDomainError(
                    "scale", self.scale, "logistic shock puts non-negligible mass at b_t <= 0"
                )

    @property
    def analytic_mean(self) -> float | None:
        if self.distribution is ShockKind.UNIFORM:
            return 0.5 * (self.lo + self.hi)
        if self.distribution is ShockKind.LOGISTIC:
            return self.mean
        return None

    @property
    def variance(self) -> float:
        if self.distribution is ShockKind.UNIFORM:
            return (self.hi - self.lo) ** 2 / 12.0
        if self.distribution is ShockKind.LOGISTIC:
            return (math.pi * self.scale) ** 2 / 3.0
        return 0.0

    def draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.distribution is ShockKind.UNIFORM:
            return rng.uniform(self.lo, self.hi, size=n)
        if self.distribution is ShockKind.LOGISTIC:
            out = rng.logistic(self.mean, self.scale, size=n)
            bad = out <= 0
            while bad.any():
                out[bad] = rng.logistic(self.mean, self.scale, size=int(bad.sum()))
                bad = out <= 0
            return out
        raise ParameterDomainError("distribution", self.distribution.value, "no distribution to draw from")

    def to_dict(self) -> dict:
        out = {"distribution": self.distribution.value, "seed": self.seed}
        for name in ("lo", "hi", "mean", "scale"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


@dataclass(frozen=True)
class GameParams:
    a: float
    b_bar: float
    punishment_periods: int = 1
    shock: ShockSpec | None = None

    def __post_init__(self):
        _require_finite(a=self.a, b_bar=self.b_bar)
        if not self.a > 0:
            raise ParameterDomainError("a", self.a, "must be > 0")
        if not self.b_bar > 0:
            raise ParameterDomainError("b_bar", self.b_bar, "must be > 0")
        p = self.punishment_periods
        if isinstance(p, bool) or not isinstance(p, int) or p < 1:
            raise ParameterDomainError("punishment_periods", p, "must be a positive integer")
        if self.shock is not None and self.shock.distribution is ShockKind.NONE:
            object.__setattr__(self, "shock", None)
        if self.shock is not None:
            m = self.shock.analytic_mean
            if abs(m - self.b_bar) > 1e-12 * max(1.0, self.b_bar):
                raise ParameterDomainError("shock", m, f"shock mean must equal b_bar={self.b_bar}")

    @property
    def pi_discretion(self) -> float:
        return self.b_bar / self.a


def _require_finite(**values) -> None:
    for name, v in values.items():
        if v is None or isinstance(v, bool) or not isinstance(v, (int, float, np.floating)):
            raise ParameterDomainError(name, v, "must be a real number")
        if not math.isfinite(v):
            raise ParameterDomainError(name, v, "must be finite")


def _check_target(target: float, params: GameParams) -> None:
    _require_finite(target=target)
    if target < 0:
        raise ParameterDomainError("target", target, "deflation targets (< 0) are outside the model")


def _check_discount_factor(df: float) -> None:
    _require_finite(discount_factor=df)
    if not 0 < df <= 1:
        raise ParameterDomainError("discount_factor", df, "must lie in (0, 1]")


# --- period loss -------------------------------------------------------------


def inflation_cost(pi: float, params: GameParams) -> float:
    return 0.5 * params.a * pi * pi


def surprise_benefit(pi: float, pi_e: float, b_t: float) -> float:
    return b_t * (pi - pi_e)


def loss(pi: float, pi_e: float, params: GameParams, b_t: float | None = None) -> float:
    """Period loss ``(a/2) pi**2 - b_t (pi - pi_e)``; ``b_t`` defaults to ``b_bar``."""
    if b_t is None:
        b_t = params.b_bar
    _require_finite(pi=pi, pi_e=pi_e, b_t=b_t)
    return inflation_cost(pi, params) - surprise_benefit(pi, pi_e, b_t)


def best_cheat(params: GameParams) -> float:
    """Loss-minimizing inflation given any fixed expectation: ``b_bar / a``."""
    return params.b_bar / params.a


# --- temptation / enforcement ------------------------------------------------


def _temptation(target: float, a: float, b: float) -> float:
    gap = a * target - b
    return gap * gap / (2.0 * a)


def _punishment_differential(target: float, a: float, b: float) -> float:
    # loss under discretionary expectations minus loss under the honoured rule
    return b * b / (2.0 * a) - 0.5 * a * target * target


def enforcement_weight(punishment_periods: int, discount_factor: float, continuation: float | None = None) -> float:
    """Total discount weight on the punishment periods.

    The first punished period carries ``discount_factor``; each later one is
    multiplied by ``continuation`` (defaults to ``discount_factor``, the
    exponential case). For beta-delta discounting pass ``beta*delta`` and ``delta``.
    """
    if continuation is None:
        continuation = discount_factor
    w, term = 0.0, discount_factor
    for _ in range(punishment_periods):
        w += term
        term *= continuation
    return w


def temptation(target: float, params: GameParams) -> float:
    """One-period gain from surprising agents who expect ``target``."""
    _check_target(target, params)
    return _temptation(target, params.a, params.b_bar)


def enforcement(
    target: float,
    params: GameParams,
    discount_factor: float,
    continuation: float | None = None,
) -> float:
    """Discounted loss increase from the punishment that follows a cheat."""
    _check_target(target, params)
    _check_discount_factor(discount_factor)
    if continuation is not None:
        _check_discount_factor(continuation)
    w = enforcement_weight(params.punishment_periods, discount_factor, continuation)
    return w * _punishment_differential(target, params.a, params.b_bar)


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    n: int


def expected_temptation(target: float, params: GameParams, n_draws: int = 100_000, seed: int | None = None) -> MonteCarloEstimate:
    """Monte Carlo mean of the temptation when b_t is drawn from ``params.shock``.

    The policymaker observes b_t before choosing, so each draw contributes
    ``(a*target - b_t)**2 / (2a)``. Without a shock the estimate is exact.
    """
    _check_target(target, params)
    if params.shock is None:
        return MonteCarloEstimate(temptation(target, params), 0.0, 1)
    rng = np.random.default_rng(params.shock.seed if seed is None else seed)
    b = params.shock.draw(n_draws, rng)
    vals = (params.a * target - b) ** 2 / (2.0 * params.a)
    return MonteCarloEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_draws)), n_draws)


def expected_enforcement(
    target: float,
    params: GameParams,
    discount_factor: float,
    continuation: float | None = None,
    n_draws: int = 100_000,
    seed: int | None = None,
) -> MonteCarloEstimate:
    """Monte Carlo mean of the enforcement under stochastic b_t.

    In a punished period agents expect ``b_bar/a`` and the policymaker plays the
    discretionary response ``b_t/a`` to the realized shock.
    """
    _check_target(target, params)
    _check_discount_factor(discount_factor)
    w = enforcement_weight(params.punishment_periods, discount_factor, continuation)
    if params.shock is None:
        return MonteCarloEstimate(w * _punishment_differential(target, params.a, params.b_bar), 0.0, 1)
    rng = np.random.default_rng(params.shock.seed if seed is None else seed)
    a, bbar = params.a, params.b_bar
    b = params.shock.draw(n_draws, rng)
    punished = 0.5 * a * (b / a) ** 2 - b * (b / a - bbar / a)
    vals = w * (punished - 0.5 * a * target * target)
    return MonteCarloEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_draws)), n_draws)


# --- discretionary equilibrium -----------------------------------------------


def best_response(pi_e: float, params: GameParams) -> float:
    """Numerical argmin over pi of the period loss at expectation ``pi_e``.

    The loss is quadratic in pi, so three evaluations recover it exactly
    up to rounding.
    """
    l0 = loss(0.0, pi_e, params)
    lp = loss(1.0, pi_e, params)
    lm = loss(-1.0, pi_e, params)
    curvature = 0.5 * (lp + lm - 2.0 * l0)
    slope = 0.5 * (lp - lm)
    return -slope / (2.0 * curvature)


def iterate_discretion(
    params: GameParams,
    damping: float = 0.5,
    tol: float = 1e-12,
    max_iter: int = 10_000,
) -> tuple[float, int]:
    """Damped best-response iteration ``pi_e <- (1-d) pi_e + d BR(pi_e)`` from 0.

    Returns the fixed point and the number of steps taken.
    """
    if not 0 < damping <= 1:
        raise ParameterDomainError("damping", damping, "must lie in (0, 1]")
    pi_e = 0.0
    for step in range(1, max_iter + 1):
        nxt = (1.0 - damping) * pi_e + damping * best_response(pi_e, params)
        delta = nxt - pi_e
        pi_e = nxt
        if abs(delta) < tol:
            return pi_e, step
    raise NumericalError(f"best-response iteration did not converge in {max_iter} steps (last pi_e={pi_e!r})")


def discretionary_equilibrium(params: GameParams) -> float:
    analytic = best_cheat(params)
    iterated, _ = iterate_discretion(params)
    if abs(iterated - analytic) > 1e-10 * max(1.0, analytic):
        raise NumericalError(f"fixed point {iterated!r} disagrees with analytic b_bar/a={analytic!r}")
    return analytic


# --- best enforceable rule ---------------------------------------------------


@dataclass(frozen=True)
class RuleSolution:
    closed_form: float
    bisection: float
    iterations: int


def _closed_form_rule(params: GameParams, weight: float) -> float:
    if weight >= 1.0:
        return 0.0
    return params.pi_discretion * (1.0 - weight) / (1.0 + weight)


def _bisect_rule(params: GameParams, weight: float, max_iter: int = 200) -> tuple[float, int]:
    a, b = params.a, params.b_bar

    def g(pi: float) -> float:
        return _temptation(pi, a, b) - weight * _punishment_differential(pi, a, b)

    lo, hi = 0.0, params.pi_discretion
    g_lo, g_hi = g(lo), g(hi)
    if not (math.isfinite(g_lo) and math.isfinite(g_hi)):
        raise NumericalError(f"non-finite bracket values g(0)={g_lo!r}, g({hi!r})={g_hi!r}")
    if g_lo <= 0.0:
        return 0.0, 0
    if g_hi > 1e-12 * max(1.0, b * b / a):
        raise NumericalError(f"root not bracketed on [0, {hi!r}]: g(0)={g_lo!r}, g(hi)={g_hi!r}")
    n = 0
    # g > 0 on [0, root) and g <= 0 on [root, b/a]; keep that invariant
    # runs to adjacent floats, well inside the 1e-12 width tolerance
    while n < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        n += 1
    return hi, n


def solve_enforceable_rule(
    params: GameParams,
    discount_factor: float,
    continuation: float | None = None,
) -> RuleSolution:
    """Smallest target whose temptation does not exceed its enforcement, two ways.

    Both the closed form ``(b/a)(1-w)/(1+w)`` (w the total enforcement weight)
    and a bisection on temptation minus enforcement are returned; a
    disagreement beyond 1e-10 relative raises ``NumericalError``.
    """
    _require_finite(discount_factor=discount_factor)
    if not 0 < discount_factor < 1:
        raise ParameterDomainError("discount_factor", discount_factor, "must lie in (0, 1)")
    if continuation is not None:
        _check_discount_factor(continuation)
    w = enforcement_weight(params.punishment_periods, discount_factor, continuation)
    closed = _closed_form_rule(params, w)
    bisected, n = _bisect_rule(params, w)
    scale = max(abs(closed), 1e-300)
    if closed == 0.0:
        ok = bisected == 0.0
    else:
        ok = abs(bisected - closed) <= 1e-10 * scale
    if not ok:
        raise NumericalError(
            f"closed form {closed!r} and bisection {bisected!r} disagree "
            f"(a={params.a}, b_bar={params.b_bar}, weight={w!r})"
        )
    return RuleSolution(closed, bisected, n)


def best_enforceable_rule(params: GameParams, discount_factor: float, continuation: float | None = None) -> float:
    return solve_enforceable_rule(params, discount_factor, continuation).closed_form


# --- equilibrium report ------------------------------------------------------


class Mode(str, Enum):
    BASELINE = "Baseline"
    BEHAVIORAL = "Behavioral"


REPORT_FIELDS = (
    "mode",
    "a",
    "b_bar",
    "discount_factor",
    "pi_discretion",
    "pi_ideal",
    "pi_best_enforceable",
    "range_lo",
    "range_hi",
    "range_width",
)


def fmt12(x: float) -> float:
    """Round to 12 significant digits for emission."""
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class EquilibriumReport:
    mode: Mode
    a: float
    b_bar: float
    discount_factor: float
    pi_discretion: float
    pi_ideal: float
    pi_best_enforceable: float
    range_lo: float
    range_hi: float
    range_width: float

    @property
    def enforceable_range(self) -> tuple[float, float]:
        return (self.range_lo, self.range_hi)

    def to_dict(self, rounded: bool = True) -> dict:
        out = {}
        for name in REPORT_FIELDS:
            v = getattr(self, name)
            if isinstance(v, Mode):
                out[name] = v.value
            else:
                out[name] = fmt12(v) if rounded else v
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def equilibrium_report(params: GameParams, spec: DiscountSpec) -> EquilibriumReport:
    """Discretionary rate, best enforceable rule and enforceable range.

    Exponential specs give the Baseline report with discount factor q;
    quasi-hyperbolic specs give the Behavioral report with ``beta*delta``.
    """
    if spec.kind is DiscountKind.EXPONENTIAL:
        mode, df, cont = Mode.BASELINE, spec.factor, spec.factor
    elif spec.kind is DiscountKind.QUASI_HYPERBOLIC:
        mode, df, cont = Mode.BEHAVIORAL, spec.beta * spec.delta, spec.delta
    else:
        raise UnsupportedModeError(
            "generalized hyperbolic discounting has no single per-period factor for enforcement"
        )
    pi_best = best_enforceable_rule(params, df, cont)
    pi_disc = discretionary_equilibrium(params)
    return EquilibriumReport(
        mode=mode,
        a=params.a,
        b_bar=params.b_bar,
        discount_factor=df,
        pi_discretion=pi_disc,
        pi_ideal=0.0,
        pi_best_enforceable=pi_best,
        range_lo=pi_best,
        range_hi=pi_disc,
        range_width=pi_disc - pi_best,
    )
