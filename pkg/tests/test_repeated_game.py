import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from policy_game_lab import (
    Action,
    DiscountBasis,
    DiscountSpec,
    GameParams,
    InvalidProfileError,
    ParameterDomainError,
    PolicymakerProfile,
    PolicymakerType,
    ShockSpec,
    classify,
    decide,
    detect_reversal,
    enforcement,
    one_shot_deviation_value,
    simulate,
    temptation,
)
from policy_game_lab.repeated_game import CSV_HEADER


def profile(beta, beta_hat=None, delta=0.9, **kw):
    return PolicymakerProfile(beta, beta if beta_hat is None else beta_hat, delta, **kw)


# --- classify --------------------------------------------------------------

@pytest.mark.parametrize(
    "prof, expected",
    [
        (profile(0.6, 1.0), PolicymakerType.NAIVE),
        (profile(0.6, 0.6), PolicymakerType.SOPHISTICATED),
        (profile(0.6, 0.8), PolicymakerType.PARTIALLY_NAIVE),
        (profile(1e-7, 1.0), PolicymakerType.MYOPIC),
        (profile(1e-7, 1e-7), PolicymakerType.MYOPIC),
        (profile(0.6, 1.0, committed=True), PolicymakerType.RESOLUTE),
        (profile(1.0, 1.0, committed=True), PolicymakerType.RESOLUTE),
        (profile(1.0, 1.0), PolicymakerType.SOPHISTICATED),
        (profile(0.6, 0.6 + 5e-10), PolicymakerType.SOPHISTICATED),
    ],
)
def test_classify(prof, expected):
    assert classify(prof) is expected


def test_classify_rejects_overconfident_in_reverse():
    with pytest.raises(InvalidProfileError):
        classify(profile(0.8, 0.5))


def test_profile_validation():
    with pytest.raises(ParameterDomainError):
        PolicymakerProfile(0.0, 0.5, 0.9)
    with pytest.raises(ParameterDomainError):
        PolicymakerProfile(0.5, 0.5, 1.0)
    with pytest.raises(ParameterDomainError):
        PolicymakerProfile(0.5, 0.5, 0.9, committed=True, sanction=-1.0)


# --- decide / reversal -----------------------------------------------------

def test_decide_actual_beta_cheats(unit_game):
    d = decide(profile(0.4, 1.0), unit_game, 0.4, DiscountBasis.ACTUAL_BETA)
    assert d.action is Action.CHEAT
    assert d.margin == pytest.approx(0.4 * 0.9 * 0.42 - 0.18, abs=1e-15)


def test_decide_believed_beta_complies(unit_game):
    d = decide(profile(0.4, 1.0), unit_game, 0.4, DiscountBasis.BELIEVED_BETA)
    assert d.action is Action.COMPLY
    assert d.margin == pytest.approx(0.9 * 0.42 - 0.18, abs=1e-15)


@pytest.mark.parametrize("prof", [profile(0.3, 0.9), profile(1e-8, 1e-8), profile(0.5, 1.0, committed=True)])
def test_decide_complies_at_discretion(unit_game, prof):
    for basis in DiscountBasis:
        d = decide(prof, unit_game, 1.0, basis)
        assert d.action is Action.COMPLY and d.margin >= 0


def test_myopic_cheats_whenever_tempted(unit_game):
    d = decide(profile(1e-7, 1e-7, delta=0.99), unit_game, 0.999)
    assert d.action is Action.CHEAT


def test_finite_sanction_enters_cheat_side(unit_game):
    weak = profile(0.4, 1.0, committed=True, sanction=0.01)
    strong = profile(0.4, 1.0, committed=True, sanction=0.1)
    assert decide(weak, unit_game, 0.4).action is Action.CHEAT
    assert decide(strong, unit_game, 0.4).action is Action.COMPLY


def test_decide_target_out_of_range(unit_game):
    with pytest.raises(ParameterDomainError):
        decide(profile(0.5), unit_game, 1.5)


def test_reversal_examples(unit_game):
    assert detect_reversal(profile(0.4, 1.0), unit_game, 0.4)
    assert not detect_reversal(profile(0.4, 0.4), unit_game, 0.4)
    for target in np.linspace(0, 1, 11):
        assert not detect_reversal(profile(1.0, 1.0), unit_game, float(target))


@given(
    st.floats(0.5, 3), st.floats(0.5, 3), st.floats(0.01, 1.0), st.floats(0, 1), st.floats(0.05, 0.95), st.floats(0, 1)
)
def test_reversal_region_matches_inequality(a, b, beta, u, delta, frac):
    p = GameParams(a, b)
    beta_hat = beta + u * (1 - beta)
    target = frac * p.pi_discretion
    T = (a * target - b) ** 2 / (2 * a)
    E = b * b / (2 * a) - a * target * target / 2
    lo, hi = beta * delta * E, beta_hat * delta * E
    # skip float ties that the two arithmetic paths may round differently
    if min(abs(T - lo), abs(T - hi)) > 1e-13:
        assert detect_reversal(PolicymakerProfile(beta, beta_hat, delta), p, target) == (lo < T <= hi)


# --- simulate --------------------------------------------------------------

def test_resolute_complies_at_ideal_rule():
    p = GameParams(1.3, 0.7)
    traj = simulate(profile(0.5, 1.0, committed=True), p, None, 0.0, 10)
    assert traj.actions == [Action.COMPLY] * 10
    assert traj.losses == [0.0] * 10
    assert traj.cheat_count == 0


def test_myopic_cheat_punish_cycle(unit_game):
    traj = simulate(profile(1e-7, 1e-7), unit_game, None, 0.0, 3)
    assert traj.actions == [Action.CHEAT, Action.PUNISHED, Action.CHEAT]
    # hand evaluation: cheat vs expectations 0, then punished at discretion
    assert traj.losses == pytest.approx([0.5 - 1.0, 0.5, -0.5], abs=1e-15)
    assert traj.periods[1].expected_inflation == 1.0


def test_time_consistent_inside_range_complies(unit_game):
    traj = simulate(profile(1.0, 1.0), unit_game, DiscountSpec.from_factor(0.9), 0.06, 50)
    assert traj.actions == [Action.COMPLY] * 50


def test_time_consistent_outside_range_abstains(unit_game):
    traj = simulate(profile(1.0, 1.0), unit_game, None, 0.04, 5)
    assert traj.actions == [Action.ABSTAIN] * 5
    assert all(r.announced_target is None and r.realized_inflation == 1.0 for r in traj.periods)


def test_sophisticate_abstains_when_self_cheat_predicted(unit_game):
    traj = simulate(profile(0.4, 0.4), unit_game, None, 0.4, 8)
    assert traj.actions == [Action.ABSTAIN] * 8
    assert traj.losses == pytest.approx([0.5] * 8)


def test_naive_reversal_logged(unit_game):
    traj = simulate(profile(0.4, 1.0), unit_game, None, 0.4, 6)
    first = traj.periods[0]
    assert first.reversal and first.action is Action.CHEAT and first.planned_action is Action.COMPLY
    assert traj.reversal_count == 3 and traj.cheat_count == 3


def test_punishment_length_respected():
    p = GameParams(1.0, 1.0, punishment_periods=3)
    traj = simulate(profile(1e-7, 1e-7), p, None, 0.0, 9)
    assert [a.value for a in traj.actions] == ["CHEAT"] + ["PUNISHED"] * 3 + ["CHEAT"] + ["PUNISHED"] * 3 + ["CHEAT"]


def test_summary_discounted_loss(unit_game):
    traj = simulate(profile(1e-7, 1e-7), unit_game, DiscountSpec.from_factor(0.5), 0.0, 3)
    assert traj.total_discounted_loss_actual_beta == pytest.approx(-0.5 + 0.5 * 0.5 - 0.25 * 0.5)


@pytest.mark.parametrize("beta_hat", [1.0])
@pytest.mark.parametrize("target", [0.0, 0.03, 0.06, 0.5, 1.0])
def test_beta_one_profiles_degenerate(unit_game, beta_hat, target):
    trajs = [simulate(PolicymakerProfile(1.0, beta_hat, 0.9), unit_game, None, target, 12) for _ in range(3)]
    assert trajs[0].to_csv() == trajs[1].to_csv() == trajs[2].to_csv()


@given(st.floats(0.01, 1.0), st.floats(0, 1), st.floats(0, 0.999), st.floats(0.05, 0.95))
def test_resolute_never_cheats(beta, u, frac, delta):
    p = GameParams(1.0, 1.0)
    prof = PolicymakerProfile(beta, beta + u * (1 - beta), delta, committed=True)
    assert Action.CHEAT not in simulate(prof, p, None, frac, 15).actions


@given(st.floats(0, 0.999), st.floats(0.05, 0.95), st.integers(1, 4))
def test_myopic_never_complies(frac, delta, punish):
    p = GameParams(1.0, 1.0, punishment_periods=punish)
    traj = simulate(PolicymakerProfile(1e-7, 0.5, delta), p, None, frac, 15)
    assert Action.COMPLY not in traj.actions


def test_trajectory_csv(unit_game):
    text = simulate(profile(0.4, 1.0), unit_game, None, 0.4, 2).to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1] == "0,0.4,0.4,1,-0.1,CHEAT,COMPLY,true"
    assert lines[2] == "1,0.4,1,1,0.5,PUNISHED,PUNISHED,false"


def test_shock_simulation_reproducible():
    p = GameParams(1.0, 1.0, shock=ShockSpec("uniform", lo=0.6, hi=1.4, seed=9))
    prof = profile(0.5, 1.0)
    first = simulate(prof, p, None, 0.3, 40, seed=123).to_csv()
    assert first == simulate(prof, p, None, 0.3, 40, seed=123).to_csv()
    assert first != simulate(prof, p, None, 0.3, 40, seed=124).to_csv()


def test_simulate_validation(unit_game):
    with pytest.raises(ParameterDomainError):
        simulate(profile(0.5), unit_game, None, 0.2, 0)
    with pytest.raises(ParameterDomainError):
        simulate(profile(0.5), unit_game, None, -0.1, 5)


# --- one-shot deviation ----------------------------------------------------

def test_deviation_value_examples(unit_game):
    spec = DiscountSpec.from_factor(0.9)
    assert one_shot_deviation_value(unit_game, spec, 0.0) == pytest.approx(0.5 - 0.9 * 0.5, abs=1e-15)
    assert one_shot_deviation_value(unit_game, spec, 1 / 19) == pytest.approx(0.0, abs=1e-9)
    assert one_shot_deviation_value(unit_game, spec, 0.5) < 0


def test_deviation_value_longer_horizon_unchanged(unit_game):
    spec = DiscountSpec.from_factor(0.9)
    assert one_shot_deviation_value(unit_game, spec, 0.2, horizon=30) == pytest.approx(
        one_shot_deviation_value(unit_game, spec, 0.2), abs=1e-14
    )


@given(st.floats(0.5, 4), st.floats(0.5, 2), st.floats(0.05, 0.95), st.floats(0, 1), st.integers(1, 5))
def test_deviation_oracle_matches_analytic(a, b, df, frac, punish):
    p = GameParams(a, b, punishment_periods=punish)
    target = frac * p.pi_discretion
    analytic = temptation(target, p) - enforcement(target, p, df)
    assert one_shot_deviation_value(p, DiscountSpec.from_factor(df), target) == pytest.approx(analytic, abs=1e-12)


@given(st.floats(0.05, 1.0), st.floats(0.05, 0.95), st.floats(0, 1), st.integers(1, 4))
def test_deviation_oracle_behavioral(beta, delta, frac, punish):
    p = GameParams(1.0, 1.0, punishment_periods=punish)
    analytic = temptation(frac, p) - enforcement(frac, p, beta * delta, delta)
    brute = one_shot_deviation_value(p, DiscountSpec.quasi_hyperbolic(beta, delta), frac)
    assert brute == pytest.approx(analytic, abs=1e-12)
