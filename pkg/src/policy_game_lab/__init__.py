"""Reputational monetary-policy game under exponential and present-biased discounting."""

from .discounting import DiscountKind, DiscountSpec, PayoffStream, eval_discount, present_value
from .errors import (
    InvalidProfileError,
    NumericalError,
    ParameterDomainError,
    PolicyGameError,
    UnsupportedModeError,
)
from .policy_game import (
    EquilibriumReport,
    GameParams,
    Mode,
    ShockSpec,
    best_cheat,
    best_enforceable_rule,
    discretionary_equilibrium,
    enforcement,
    equilibrium_report,
    loss,
    solve_enforceable_rule,
    temptation,
)
from .repeated_game import (
    Action,
    DiscountBasis,
    PolicymakerProfile,
    PolicymakerType,
    Trajectory,
    classify,
    decide,
    detect_reversal,
    one_shot_deviation_value,
    simulate,
)
from .sweep import SweepSpec, narrowing_report, run_sweep

__version__ = "0.1.0"
