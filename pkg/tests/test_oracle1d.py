import numpy as np
import pytest

from nodetool.infinity_laplace.errors import QuadratureError
from nodetool.infinity_laplace.oracle1d import (
    first_integral_quadrature,
    simpson_integral,
    solve_first_integral,
    stability_1d_exact,
)


def test_simpson_integral_of_exponential():
    assert simpson_integral(np.exp, 0.0, 1.0) == pytest.approx(np.e - 1.0, abs=1e-11)


def test_simpson_integral_gives_up_at_the_panel_cap():
    with pytest.raises(QuadratureError):
        simpson_integral(lambda t: np.abs(t - 1.0 / 3.0) ** 0.5, 0.0, 1.0, quad_tol=0.0)


def test_quadrature_of_constant_exponent():
    assert first_integral_quadrature(lambda t: 2.0, 0.0, 1.0, 0.25) == pytest.approx(0.5)


def test_unit_slope_gives_the_identity_profile():
    solution = solve_first_integral(lambda x: 2.0 * np.exp(x), 0.0, 1.0, 17)
    assert solution.C == 1.0
    assert solution.sign == 1
    assert solution.values.tolist() == pytest.approx(solution.nodes.tolist(), abs=1e-15)


def test_constant_exponent_gives_a_linear_profile():
    solution = solve_first_integral(lambda x: 3.0, 0.0, 0.5, 9)
    assert solution.C == pytest.approx(0.5**3, rel=1e-10)
    assert solution.values == pytest.approx(0.5 * solution.nodes, abs=1e-12)


def test_equal_boundary_values_give_a_constant():
    solution = solve_first_integral(lambda x: 2.0 + x, 0.7, 0.7, 9)
    assert solution.C == 0.0
    assert solution.sign == 0
    assert np.all(solution.values == 0.7)


def test_decreasing_data_mirrors_the_increasing_profile():
    up = solve_first_integral(lambda x: 2.0 + x, 0.0, 0.5, 17)
    down = solve_first_integral(lambda x: 2.0 + x, 0.5, 0.0, 17)
    assert down.sign == -1
    assert down.C == pytest.approx(up.C, rel=1e-12)
    assert down.values == pytest.approx(0.5 - up.values, abs=1e-12)


def test_profile_is_monotone_and_hits_both_ends():
    solution = solve_first_integral(lambda x: 2.0 * np.exp(x), 0.0, 0.5, 33)
    assert solution.values[0] == 0.0
    assert solution.values[-1] == 0.5
    assert np.all(np.diff(solution.values) > 0.0)


def test_profile_slope_matches_the_first_integral():
    solution = solve_first_integral(lambda x: 2.0 * np.exp(x), 0.0, 0.5, 257)
    h = solution.nodes[1] - solution.nodes[0]
    mid = 0.5 * (solution.nodes[1:] + solution.nodes[:-1])
    slopes = np.diff(solution.values) / h
    expected = solution.C ** (1.0 / (2.0 * np.exp(mid)))
    assert slopes == pytest.approx(expected, rel=1e-4)


def test_profile_on_a_shifted_interval():
    solution = solve_first_integral(lambda x: 2.0, 1.0, 3.0, 5, interval=(1.0, 2.0))
    assert solution.field.grid.lower == (1.0,)
    assert solution.values == pytest.approx([1.0, 1.5, 2.0, 2.5, 3.0])


def test_nonpositive_exponent_is_rejected():
    with pytest.raises(ValueError):
        solve_first_integral(lambda x: x - 0.5, 0.0, 0.5, 9)


def test_empty_interval_is_rejected():
    with pytest.raises(ValueError):
        solve_first_integral(lambda x: 2.0, 0.0, 1.0, 9, interval=(1.0, 1.0))


def test_stability_of_identical_exponents_is_zero():
    p = lambda x: 2.0 + x  # noqa: E731
    assert stability_1d_exact(p, p, 0.0, 0.5, 33) == 0.0


def test_stability_shrinks_with_the_perturbation():
    gaps = [
        stability_1d_exact(lambda x: 2.0, lambda x, d=d: 2.0 * np.exp(d * x), 0.0, 0.5, 33)
        for d in (0.1, 0.01, 0.001)
    ]
    assert gaps[0] > gaps[1] > gaps[2] > 0.0
