import pytest

from policy_game_lab import ParameterDomainError, SweepSpec, narrowing_report, run_sweep
from policy_game_lab.sweep import baseline_reports, sweep_csv

BETAS = (0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def closed_width(df, b_over_a=1.0):
    return b_over_a * 2 * df / (1 + df)


def test_beta_one_row():
    (row,) = run_sweep(SweepSpec(1.0, 1.0, (1.0,), (0.9,)))
    assert row.pi_best_enforceable == pytest.approx(0.052632, abs=1e-6)
    assert row.width_ratio_vs_beta1 == 1.0


def test_behavioral_row():
    (row,) = run_sweep(SweepSpec(1.0, 1.0, (0.7,), (0.9,)))
    assert row.pi_best_enforceable == pytest.approx(0.226994, abs=1e-6)
    assert row.width_ratio_vs_beta1 == pytest.approx(0.773006134969 / 0.947368421053, rel=1e-10)
    assert row.width_ratio_vs_beta1 == pytest.approx(0.8159, abs=1e-4)


def test_ratio_increasing_in_beta():
    rows = run_sweep(SweepSpec(1.0, 1.0, BETAS, (0.9,)))
    ratios = [r.width_ratio_vs_beta1 for r in rows]
    assert all(x < y for x, y in zip(ratios, ratios[1:]))


def test_rows_sorted_and_counted():
    spec = SweepSpec(2.0, 1.0, (0.2, 0.6, 1.0), (0.3, 0.5, 0.8, 0.95))
    rows = run_sweep(spec)
    assert len(rows) == 12
    assert [(r.delta, r.beta) for r in rows] == sorted((r.delta, r.beta) for r in rows)
    for r in rows:
        assert 0 < r.pi_best_enforceable < 0.5
        assert 0 < r.range_width < 2 * 0.5


def test_narrowing_summary():
    summary = narrowing_report(SweepSpec(1.0, 1.0, BETAS, (0.5, 0.7, 0.9)))
    assert summary.monotone
    assert narrowing_report(SweepSpec(1.0, 1.0, (1.0,), (0.9,))).min_ratio == 1.0
    single = narrowing_report(SweepSpec(1.0, 1.0, (0.5,), (0.9,)))
    assert single.min_ratio == pytest.approx(closed_width(0.45) / closed_width(0.9), rel=1e-12)
    assert single.min_ratio == pytest.approx(0.6552, abs=1e-4)


def test_parallel_matches_serial():
    spec = SweepSpec(1.0, 1.0, BETAS, (0.5, 0.7, 0.9))
    assert sweep_csv(run_sweep(spec, workers=4)) == sweep_csv(run_sweep(spec))


def test_csv_written_and_reproducible(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(SweepSpec(1.0, 1.0, BETAS, (0.9,), output_path=out1))
    run_sweep(SweepSpec(1.0, 1.0, BETAS, (0.9,), output_path=out2))
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "beta,delta,discount_factor,pi_best_enforceable,range_width,width_ratio_vs_beta1"
    assert len(lines) == 1 + len(BETAS)
    assert lines[-1] == "1,0.9,0.9,0.0526315789474,0.947368421053,1"


def test_unwritable_output(tmp_path):
    with pytest.raises(OSError):
        run_sweep(SweepSpec(1.0, 1.0, (0.5,), (0.9,), output_path=tmp_path / "missing" / "x.csv"))


@pytest.mark.parametrize(
    "betas, deltas",
    [((), (0.9,)), ((0.5, 0.4), (0.9,)), ((0.5,), (1.0,)), ((0.0,), (0.9,)), ((1.2,), (0.9,))],
)
def test_grid_validation(betas, deltas):
    with pytest.raises(ParameterDomainError):
        SweepSpec(1.0, 1.0, betas, deltas)


def test_baseline_reports_from_q_grid():
    reps = baseline_reports(SweepSpec(1.0, 1.0, (0.5,), (0.9,), q_grid=(0.5, 0.9)))
    assert [r.discount_factor for r in reps] == [0.5, 0.9]
    assert reps[1].range_width == pytest.approx(closed_width(0.9))
