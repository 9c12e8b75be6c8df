from pathlib import Path

import numpy as np
import pytest

from nodetool.infinity_laplace.config import ExperimentConfig
from nodetool.infinity_laplace.estimates import BoundParams
from nodetool.infinity_laplace.harness import (
    calibrate,
    run_convergence,
    run_doubling,
    run_experiment,
    run_oracle1d,
    run_sandwich,
    run_solve,
    run_stability_thm1,
    run_stability_two_exp,
    run_transform_check,
)

HALF = {"kind": "values", "values": [0.0, 0.5]}
TIGHT = {"tolerance": 1e-13}


def _thm1_config(**overrides):
    data = {
        "experiment": "stability-thm1",
        "grid": {"dim": 1, "n": 33},
        "exponent": {"kind": "exponential", "p0": 2.0, "delta": [1.0]},
        "boundary": HALF,
        "solver": TIGHT,
        "sweep": [0.4, 0.2, 0.1],
    }
    data.update(overrides)
    return ExperimentConfig.model_validate(data)


def _two_exp_config(**overrides):
    data = {
        "experiment": "stability-two-exp",
        "grid": {"dim": 1, "n": 33},
        "exponent": {"kind": "constant", "p0": 2.0},
        "exponent2": {"kind": "affine", "p0": 2.0, "delta": [1.0]},
        "boundary": HALF,
        "solver": TIGHT,
        "sweep": [0.2, 0.1, 0.05],
    }
    data.update(overrides)
    return ExperimentConfig.model_validate(data)


def _aux_variable_config():
    return ExperimentConfig.model_validate(
        {
            "experiment": "aux",
            "grid": {"dim": 1, "n": 33},
            "exponent": {"kind": "exponential", "p0": 2.0, "delta": [1.0]},
            "boundary": {"kind": "values", "values": [0.0, 0.0]},
            "sweep": [0.2, 0.1, 0.05],
        }
    )


def test_solve_lists_every_node():
    cfg = ExperimentConfig.model_validate(
        {
            "experiment": "solve",
            "grid": {"dim": 2, "n": 9},
            "exponent": {"kind": "exponential", "p0": 2.0, "delta": [0.5, 0.5]},
            "boundary": {"kind": "expression", "expression-id": "x+2y"},
        }
    )
    report = run_solve(cfg)
    assert len(report.rows) == 81
    assert report.rows[1].y == pytest.approx(0.125)
    assert report.columns == ["index", "x", "y", "u"]
    assert report.passed


def test_oracle1d_agrees_with_the_exact_profile():
    cfg = ExperimentConfig.model_validate(
        {
            "experiment": "oracle1d",
            "grid": {"dim": 1, "n": 33},
            "exponent": {"kind": "affine", "p0": 2.0, "delta": [1.0]},
            "boundary": HALF,
            "solver": TIGHT,
        }
    )
    report = run_oracle1d(cfg)
    assert report.passed
    assert report.summary["max_error"] < 5e-3
    assert report.rows[0].error == 0.0


def test_oracle1d_needs_a_1d_grid():
    cfg = ExperimentConfig(experiment="oracle1d", grid={"dim": 2, "n": 5})
    with pytest.raises(ValueError):
        run_oracle1d(cfg)


def test_convergence_errors_shrink_with_the_grid():
    cfg = ExperimentConfig.model_validate(
        {
            "experiment": "convergence",
            "grid": {"dim": 1},
            "grid_sizes": [17, 33, 65],
            "exponent": {"kind": "affine", "p0": 2.0, "delta": [1.0]},
            "boundary": HALF,
            "solver": TIGHT,
        }
    )
    report = run_convergence(cfg)
    errors = [row.error for row in report.rows]
    assert report.checks["converged"]
    assert errors[0] > errors[1] > errors[2] > 0.0
    assert report.rows[0].ratio is None
    assert report.rows[1].ratio == pytest.approx(errors[0] / errors[1])
    assert report.checks["first_order"]
    assert all(1.5 <= row.ratio <= 2.5 for row in report.rows[1:])


def test_sandwich_with_constant_exponent_passes():
    cfg = ExperimentConfig.model_validate(
        {
            "experiment": "aux",
            "grid": {"dim": 1, "n": 33},
            "boundary": HALF,
            "solver": TIGHT,
            "sweep": [0.2, 0.1],
        }
    )
    report = run_sandwich(cfg)
    assert [row.epsilon for row in report.rows] == [0.2, 0.1, 0.0]
    assert report.passed
    assert report.checks["width_bound"]
    assert report.summary["variable_exponent"] is False


def test_sandwich_with_variable_exponent_fits_a_power_law():
    report = run_sandwich(_aux_variable_config())
    assert "width_bound" not in report.checks
    assert report.summary["kappa"] is not None
    assert report.summary["B"] > 0.0
    assert report.checks["zero_epsilon_collapses"]


def test_sandwich_rows_do_not_depend_on_thread_count():
    cfg = _aux_variable_config()
    serial = run_sandwich(cfg, threads=1)
    pooled = run_sandwich(cfg, threads=3)
    assert [r.model_dump() for r in serial.rows] == [r.model_dump() for r in pooled.rows]


def test_stability_thm1_rows_and_control():
    report = run_stability_thm1(_thm1_config())
    assert [row.delta for row in report.rows] == [0.4, 0.2, 0.1, 0.0]
    control = report.rows[-1]
    assert control.sup_difference == 0.0
    assert control.bound_value == 0.0
    assert control.epsilon_used is None
    assert report.passed
    assert report.fitted_slope > 0.0


def test_stability_thm1_uses_the_constants_file(tmp_path):
    path = tmp_path / "constants.json"
    BoundParams(thm1_scale=0.5).save(path)
    cfg = _thm1_config(sweep=[0.4], constants_file=str(path))
    scaled = run_experiment(cfg)
    plain = run_stability_thm1(cfg)
    assert scaled.rows[0].bound_value == pytest.approx(0.5 * plain.rows[0].bound_value)


def test_stability_two_exp_rows_and_control():
    report = run_stability_two_exp(_two_exp_config())
    gaps = [row.delta_grad for row in report.rows]
    assert gaps[:3] == pytest.approx([0.1, 0.05, 0.025])
    assert gaps[-1] == 0.0
    assert report.rows[-1].sup_difference == 0.0
    assert all(row.epsilon_used is not None for row in report.rows[:3])
    assert report.passed


def test_transform_check_passes_on_the_standard_instance():
    cfg = ExperimentConfig.model_validate(
        {
            "experiment": "transform-check",
            "grid": {"dim": 1, "n": 33},
            "boundary": {"kind": "values", "values": [0.0, 1.0]},
            "solver": {"epsilon": 0.1},
            "transform": {"A": 1.5},
        }
    )
    report = run_transform_check(cfg)
    assert report.passed
    assert len(report.rows) == 15
    assert "identity[A=1.1,alpha=0.5]" in report.checks
    assert report.summary["mu"] > 0.0


def test_transform_check_needs_a_positive_epsilon():
    cfg = ExperimentConfig(experiment="transform-check", solver={"epsilon": 0.0})
    with pytest.raises(ValueError):
        run_transform_check(cfg)


def test_doubling_probe_experiment():
    cfg = ExperimentConfig.model_validate(
        {
            "experiment": "doubling",
            "grid": {"dim": 1, "n": 33},
            "exponent": {"kind": "exponential", "p0": 2.0, "delta": [1.0]},
            "boundary": {"kind": "values", "values": [0.5, 0.0]},
            "solver": {"epsilon": 0.1},
            "transform": {"A": 1.01},
        }
    )
    report = run_doubling(cfg)
    assert [row.j for row in report.rows] == [1.0, 10.0, 1e2, 1e3, 1e4]
    assert report.checks["m_j_above_sigma"]
    assert report.checks["m_j_nonincreasing"]
    assert report.checks["separation_nonincreasing"]
    assert report.checks["split_holds"]
    assert report.passed

    small, large = report.rows[0], report.rows[-1]
    assert small.separation > 0.0
    assert small.above_epsilon
    assert large.separation == 0.0
    assert not large.above_epsilon
    assert report.checks["above_epsilon_off_diagonal"]
    assert report.summary["off_diagonal_rows"] >= 1
    assert report.summary["split_transform_cap"] == pytest.approx(
        0.01 / report.summary["alpha"]
    )


def test_calibrate_fits_every_constant():
    configs = [_thm1_config(sweep=[0.2]), _two_exp_config(sweep=[0.1]), _aux_variable_config()]
    params = calibrate(configs)
    sandwich = run_sandwich(_aux_variable_config())
    assert params.kappa == pytest.approx(sandwich.summary["kappa"])
    assert params.B == pytest.approx(sandwich.summary["B"])
    assert params.a == pytest.approx(1.0)
    assert params.f_lip == pytest.approx(0.5)

    thm1 = run_stability_thm1(_thm1_config(sweep=[0.2]), params)
    first = thm1.rows[0]
    assert first.bound_value == pytest.approx(2.0 * first.sup_difference, rel=1e-9)

    two_exp = run_stability_two_exp(_two_exp_config(sweep=[0.1]), params)
    row = two_exp.rows[0]
    assert row.bound_value == pytest.approx(2.0 * row.sup_difference, rel=1e-9)


def test_calibrate_rejects_other_experiments():
    with pytest.raises(ValueError):
        calibrate([ExperimentConfig(experiment="solve")])


def test_run_experiment_dispatches():
    cfg = ExperimentConfig.model_validate(
        {"experiment": "solve", "grid": {"dim": 1, "n": 9}, "boundary": HALF}
    )
    report = run_experiment(cfg)
    assert report.experiment == "solve"
    assert np.allclose([row.u for row in report.rows], np.linspace(0.0, 0.5, 9))


CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def test_shipped_sandwich_config_has_active_constraints():
    cfg = ExperimentConfig.load(CONFIG_DIR / "aux.json")
    report = run_sandwich(cfg)
    assert report.passed
    widths = [row.width for row in report.rows[:-1]]
    assert all(width > 0.0 for width in widths)
    assert widths[0] > widths[1] > widths[2]
    assert report.rows[-1].width == pytest.approx(0.0, abs=1e-8)


def test_stability_rows_do_not_depend_on_thread_count():
    cfg = _thm1_config(sweep=[0.4, 0.2])
    serial = run_stability_thm1(cfg, threads=1)
    pooled = run_stability_thm1(cfg, threads=3)
    assert [r.model_dump() for r in serial.rows] == [r.model_dump() for r in pooled.rows]


def test_pinned_constants_bound_both_stability_sweeps():
    params = BoundParams.load(CONFIG_DIR / "constants.json")
    thm1 = run_stability_thm1(_thm1_config(sweep=[0.4, 0.2, 0.1, 0.05]), params)
    two_exp = run_stability_two_exp(_two_exp_config(), params)
    for report in (thm1, two_exp):
        assert report.checks["below_bound"]
        assert report.checks["decreasing"]
        assert report.passed


def test_transform_check_adds_seeded_samples():
    data = {
        "experiment": "transform-check",
        "grid": {"dim": 1, "n": 17},
        "boundary": {"kind": "values", "values": [0.0, 1.0]},
        "solver": {"epsilon": 0.1},
    }
    first = run_transform_check(ExperimentConfig.model_validate({**data, "seed": 3}))
    again = run_transform_check(ExperimentConfig.model_validate({**data, "seed": 3}))
    other = run_transform_check(ExperimentConfig.model_validate({**data, "seed": 4}))
    assert first.summary["samples"] == 201 + 64
    assert first.summary["seed"] == 3
    assert [r.model_dump() for r in first.rows] == [r.model_dump() for r in again.rows]
    assert first.passed and other.passed


def test_calibrated_constants_are_plain_floats():
    params = calibrate([_two_exp_config(sweep=[0.1]), _aux_variable_config()])
    assert type(params.const) is float
    assert type(params.kappa) is float
    assert "np.float64" not in repr(params)
