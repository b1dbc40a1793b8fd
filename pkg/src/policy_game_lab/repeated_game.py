"""Period-by-period simulation of the policy game with behavioral policymakers.

Private agents expect the announced target while the policymaker has a clean
record. After a cheat they expect the discretionary rate for
``punishment_periods`` periods, then trust the target again.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .discounting import DiscountSpec, present_value
from .errors import InvalidProfileError, ParameterDomainError
from .policy_game import (
    GameParams,
    _punishment_differential,
    _temptation,
    enforcement_weight,
    loss,
)

MYOPIC_THRESHOLD = 1e-6
EQ_TOL = 1e-9


class PolicymakerType(str, Enum):
    NAIVE = "Naive"
    PARTIALLY_NAIVE = "PartiallyNaive"
    SOPHISTICATED = "Sophisticated"
    RESOLUTE = "Resolute"
    MYOPIC = "Myopic"


class Action(str, Enum):
    COMPLY = "COMPLY"
    CHEAT = "CHEAT"
    PUNISHED = "PUNISHED"
    ABSTAIN = "ABSTAIN"


class DiscountBasis(str, Enum):
    ACTUAL_BETA = "actual"
    BELIEVED_BETA = "believed"


@dataclass(frozen=True)
class PolicymakerProfile:
    """Actual present bias, believed present bias, patience and commitment."""

    beta: float
    beta_hat: float
    delta: float
    committed: bool = False
    sanction: float = math.inf

    def __post_init__(self):
        for name in ("beta", "beta_hat"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or math.isnan(v) or not 0 < v <= 1:
                raise ParameterDomainError(name, v, "must lie in (0, 1]")
        if not isinstance(self.delta, (int, float)) or not 0 < self.delta < 1:
            raise ParameterDomainError("delta", self.delta, "must lie in (0, 1)")
        if math.isnan(self.sanction) or self.sanction < 0:
            raise ParameterDomainError("sanction", self.sanction, "must be >= 0")

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "beta_hat": self.beta_hat,
            "delta": self.delta,
            "committed": self.committed,
            "sanction": None if math.isinf(self.sanction) else self.sanction,
        }


def classify(profile: PolicymakerProfile) -> PolicymakerType:
    """Map a profile onto the five policymaker types.

    Commitment is checked first (it is treated as restoring beta = 1), then
    myopia, then the beta / beta_hat relation. Equalities use 1e-9 absolute
    tolerance. A time-consistent uncommitted profile (beta = beta_hat = 1)
    is Sophisticated: it correctly foresees its own behaviour.
    """
    b, bh = profile.beta, profile.beta_hat
    if bh < b - EQ_TOL:
        raise InvalidProfileError("beta_hat", bh, f"must be >= beta={b}")
    if profile.committed:
        return PolicymakerType.RESOLUTE
    if b <= MYOPIC_THRESHOLD:
        return PolicymakerType.MYOPIC
    if abs(bh - b) <= EQ_TOL:
        return PolicymakerType.SOPHISTICATED
    if abs(bh - 1.0) <= EQ_TOL:
        return PolicymakerType.NAIVE
    return PolicymakerType.PARTIALLY_NAIVE


@dataclass(frozen=True)
class Decision:
    action: Action
    margin: float


def _check_sim_target(target: float, params: GameParams) -> None:
    if not isinstance(target, (int, float)) or not math.isfinite(target):
        raise ParameterDomainError("target", target, "must be a finite real")
    hi = params.pi_discretion
    if target < 0 or target > hi * (1 + 1e-12):
        raise ParameterDomainError("target", target, f"must lie in [0, b_bar/a = {hi}]")


def _enforcement_per_beta(profile: PolicymakerProfile, params: GameParams, target: float) -> float:
    # sum_{k=1..P} delta**k times the per-period differential; beta applied by caller
    w = enforcement_weight(params.punishment_periods, profile.delta, profile.delta)
    return w * _punishment_differential(target, params.a, params.b_bar)


def decide(
    profile: PolicymakerProfile,
    params: GameParams,
    target: float,
    basis: DiscountBasis = DiscountBasis.ACTUAL_BETA,
    b_t: float | None = None,
) -> Decision:
    """Cheat iff ``T - sanction > beta_used * delta * E``.

    ``margin`` is the enforcement side minus the temptation side, so a
    non-negative margin means comply. ``b_t`` is the realized benefit slope
    (defaults to ``b_bar``); enforcement always uses ``b_bar``.
    """
    _check_sim_target(target, params)
    kind = classify(profile)
    basis = DiscountBasis(basis)
    if basis is DiscountBasis.ACTUAL_BETA:
        beta_used = 0.0 if kind is PolicymakerType.MYOPIC else profile.beta
    else:
        beta_used = profile.beta_hat
    t_val = _temptation(target, params.a, params.b_bar if b_t is None else b_t)
    lhs = t_val - (profile.sanction if profile.committed else 0.0)
    rhs = beta_used * _enforcement_per_beta(profile, params, target)
    action = Action.CHEAT if lhs > rhs else Action.COMPLY
    return Decision(action, rhs - lhs)


def detect_reversal(profile: PolicymakerProfile, params: GameParams, target: float) -> bool:
    """Planned compliance (believed beta) that flips to a cheat at the moment of action."""
    planned = decide(profile, params, target, DiscountBasis.BELIEVED_BETA)
    actual = decide(profile, params, target, DiscountBasis.ACTUAL_BETA)
    return planned.action is Action.COMPLY and actual.action is Action.CHEAT


# --- trajectories ------------------------------------------------------------

CSV_HEADER = (
    "t",
    "announced_target",
    "expected_inflation",
    "realized_inflation",
    "period_loss",
    "action",
    "planned_action",
    "reversal",
)


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


@dataclass(frozen=True)
class PeriodRecord:
    t: int
    announced_target: float | None
    expected_inflation: float
    realized_inflation: float
    period_loss: float
    action: Action
    planned_action: Action
    reversal: bool

    def csv_row(self) -> list[str]:
        return [
            str(self.t),
            _fmt(self.announced_target),
            _fmt(self.expected_inflation),
            _fmt(self.realized_inflation),
            _fmt(self.period_loss),
            self.action.value,
            self.planned_action.value,
            "true" if self.reversal else "false",
        ]


@dataclass
class Trajectory:
    periods: list[PeriodRecord]
    policymaker_type: PolicymakerType
    total_discounted_loss_actual_beta: float = 0.0
    cheat_count: int = 0
    reversal_count: int = 0
    summary: dict = field(init=False)

    def __post_init__(self):
        self.summary = {
            "total_discounted_loss_actual_beta": self.total_discounted_loss_actual_beta,
            "cheat_count": self.cheat_count,
            "reversal_count": self.reversal_count,
        }

    @property
    def actions(self) -> list[Action]:
        return [p.action for p in self.periods]

    @property
    def losses(self) -> list[float]:
        return [p.period_loss for p in self.periods]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p in self.periods:
            w.writerow(p.csv_row())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "policymaker_type": self.policymaker_type.value,
            "summary": {
                "total_discounted_loss_actual_beta": float(_fmt(self.total_discounted_loss_actual_beta)),
                "cheat_count": self.cheat_count,
                "reversal_count": self.reversal_count,
            },
            "periods": [
                {
                    "t": p.t,
                    "announced_target": None if p.announced_target is None else float(_fmt(p.announced_target)),
                    "expected_inflation": float(_fmt(p.expected_inflation)),
                    "realized_inflation": float(_fmt(p.realized_inflation)),
                    "period_loss": float(_fmt(p.period_loss)),
                    "action": p.action.value,
                    "planned_action": p.planned_action.value,
                    "reversal": p.reversal,
                }
                for p in self.periods
            ],
        }


def simulate(
    profile: PolicymakerProfile,
    params: GameParams,
    spec: DiscountSpec | None,
    target: float,
    horizon: int,
    seed: int | None = None,
) -> Trajectory:
    """Play ``horizon`` periods of the policy game.

    ``spec`` discounts the realized loss stream for the summary; when None the
    profile's own beta-delta function is used. Benefit shocks, if configured on
    ``params``, are drawn from a generator seeded with ``seed`` (falling back to
    the shock's own seed).
    """
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 1:
        raise ParameterDomainError("horizon", horizon, "must be a positive integer")
    _check_sim_target(target, params)
    kind = classify(profile)
    if spec is None:
        spec = DiscountSpec.quasi_hyperbolic(profile.beta, profile.delta)

    a, bbar = params.a, params.b_bar
    if params.shock is not None:
        rng = np.random.default_rng(params.shock.seed if seed is None else seed)
        benefits = [float(x) for x in params.shock.draw(horizon, rng)]
    else:
        benefits = [bbar] * horizon
    pi_disc = bbar / a

    records: list[PeriodRecord] = []
    abstain = (
        kind is PolicymakerType.SOPHISTICATED
        and decide(profile, params, target, DiscountBasis.BELIEVED_BETA).action is Action.CHEAT
    )
    punish_left = 0
    for t, b_t in enumerate(benefits):
        if abstain:
            pi = b_t / a
            records.append(
                PeriodRecord(t, None, pi_disc, pi, loss(pi, pi_disc, params, b_t), Action.ABSTAIN, Action.ABSTAIN, False)
            )
            continue
        if punish_left > 0:
            punish_left -= 1
            pi = b_t / a
            records.append(
                PeriodRecord(t, target, pi_disc, pi, loss(pi, pi_disc, params, b_t), Action.PUNISHED, Action.PUNISHED, False)
            )
            continue
        planned = decide(profile, params, target, DiscountBasis.BELIEVED_BETA, b_t).action
        actual = decide(profile, params, target, DiscountBasis.ACTUAL_BETA, b_t).action
        if actual is Action.CHEAT:
            pi = b_t / a
            punish_left = params.punishment_periods
        else:
            pi = target
        reversal = planned is Action.COMPLY and actual is Action.CHEAT
        records.append(PeriodRecord(t, target, target, pi, loss(pi, target, params, b_t), actual, planned, reversal))

    total = present_value([r.period_loss for r in records], spec)
    return Trajectory(
        periods=records,
        policymaker_type=kind,
        total_discounted_loss_actual_beta=total,
        cheat_count=sum(r.action is Action.CHEAT for r in records),
        reversal_count=sum(r.reversal for r in records),
    )


def one_shot_deviation_value(
    params: GameParams,
    spec: DiscountSpec,
    target: float,
    horizon: int | None = None,
) -> float:
    """Discounted loss of complying forever minus that of cheating once.

    Both paths are simulated explicitly over ``horizon`` periods (at least
    ``punishment_periods + 2``): the cheat path surprises in period 0, is
    punished with discretionary expectations, then complies again. A positive
    value means the one-shot deviation pays. Deterministic b_t = b_bar.
    """
    _check_sim_target(target, params)
    p = params.punishment_periods
    n = p + 2 if horizon is None else max(horizon, p + 2)
    pi_disc = params.b_bar / params.a
    comply = [loss(target, target, params)] * n
    cheat = [loss(pi_disc, target, params)]
    cheat += [loss(pi_disc, pi_disc, params)] * p
    cheat += [loss(target, target, params)] * (n - 1 - p)
    return present_value(comply, spec) - present_value(cheat, spec)
