import numpy as np
import pytest

from nodetool.infinity_laplace.domain import Grid, ScalarField
from nodetool.infinity_laplace.errors import BracketError
from nodetool.infinity_laplace.estimates import (
    BoundParams,
    DoublingResult,
    choose_epsilon_sec5,
    choose_epsilon_thm1,
    doubling_probe,
    fit_power_law,
    lemma2_bound,
    lemma4_bound,
    one_sided_gaps,
    split_terms,
    theorem1_bound,
    theorem1_constants,
    theorem2_bound,
    thm1_majorant,
    two_exponent_majorant,
)
from nodetool.infinity_laplace.transform import TransformParams


def test_bound_params_defaults_and_validation():
    params = BoundParams()
    assert params.C == 1.0 and params.kappa == 1.0
    with pytest.raises(ValueError):
        BoundParams(C=0.0)
    with pytest.raises(ValueError):
        BoundParams(kappa=-1.0)


def test_bound_params_save_and_load(tmp_path):
    path = tmp_path / "constants.json"
    params = BoundParams(B=0.7, kappa=0.9, const=3.5, thm1_scale=0.25, a=1.4142)
    params.save(path)
    assert BoundParams.load(path) == params


def test_bound_params_load_missing_file(tmp_path):
    with pytest.raises(ValueError, match="cannot read"):
        BoundParams.load(tmp_path / "missing.json")


def test_lemma2_bound_value():
    value = lemma2_bound(1.0, 1.0, 0.5, 0.1)
    assert value == pytest.approx(8.0 * 0.25 * np.log(2.0) * 0.1)


def test_lemma2_bound_rejects_large_epsilon():
    with pytest.raises(ValueError):
        lemma2_bound(2.0, 0.5, 1.0, 1.0)


def test_thm1_majorant_value():
    assert thm1_majorant(1.0, 0.1, 1.0, 1.0) == pytest.approx(32.0 * np.log(2.0) * 0.1 + 1.0)


def test_choose_epsilon_thm1_unit_branch():
    epsilon, value = choose_epsilon_thm1(0.1, 1.0, 1.0)
    assert epsilon == 1.0
    assert value == pytest.approx(thm1_majorant(1.0, 0.1, 1.0, 1.0))


def test_choose_epsilon_thm1_balances_the_terms():
    grad, a, C = 1e-4, 1.0, 1.0
    epsilon, value = choose_epsilon_thm1(grad, a, C)
    assert 0.0 < epsilon < 1.0
    assert ((C + epsilon) / epsilon) ** 5 * grad == pytest.approx(a, rel=1e-10)
    assert value == pytest.approx(thm1_majorant(epsilon, grad, a, C))


def test_choose_epsilon_thm1_rejects_nonpositive_inputs():
    with pytest.raises(ValueError):
        choose_epsilon_thm1(0.0, 1.0, 1.0)


def test_theorem1_bound_is_zero_for_equal_exponents():
    assert theorem1_bound(0.0, BoundParams()) == 0.0
    with pytest.raises(ValueError):
        theorem1_bound(-1.0, BoundParams())


def test_theorem1_bound_scales_and_decreases():
    params = BoundParams(thm1_scale=0.5)
    grads = [1e-2, 1e-3, 1e-4, 1e-5]
    values = [theorem1_bound(g, params) for g in grads]
    assert values[0] == pytest.approx(0.5 * choose_epsilon_thm1(1e-2, 1.0, 1.0)[1])
    assert all(a > b for a, b in zip(values, values[1:]))


def test_theorem1_constants_dominate_on_the_unit_branch():
    params = BoundParams(C=1.0, a=1.0)
    c1, c2, c = theorem1_constants(params)
    assert c == pytest.approx(np.exp(-5.0))
    assert c2 == pytest.approx(0.4)
    for grad in (0.05, 0.1, 1.0):
        assert theorem1_bound(grad, params) <= c1 * grad


def test_theorem2_bound_value():
    params = BoundParams(const=2.0, kappa=2.0)
    assert theorem2_bound(np.exp(-4.0), params) == pytest.approx(0.125)


@pytest.mark.parametrize("delta", [0.0, 1.0, 1.5])
def test_theorem2_bound_rejects_delta_outside_unit_interval(delta):
    with pytest.raises(ValueError):
        theorem2_bound(delta, BoundParams())


def test_sec5_epsilon_reference_root():
    epsilon = choose_epsilon_sec5(np.exp(-100.0), 0.0, 1.0, 2.0)
    assert 0.0121 < epsilon < 0.0122
    assert 1.0 / epsilon - 100.0 == pytest.approx(4.0 * np.log(epsilon), rel=1e-10)


def test_sec5_epsilon_closed_form_without_k():
    assert choose_epsilon_sec5(1e-4, 0.0, 0.0, 2.0) == pytest.approx(0.1)


def test_sec5_epsilon_needs_a_small_perturbation():
    with pytest.raises(BracketError, match="exp"):
        choose_epsilon_sec5(0.5, 0.0, 1.0, 2.0)


def test_sec5_epsilon_rejects_bad_inputs():
    with pytest.raises(ValueError):
        choose_epsilon_sec5(1e-3, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        choose_epsilon_sec5(2.0, 0.0, 1.0, 1.0)


def test_lemma4_and_two_exponent_majorant():
    value = lemma4_bound(1.0, 1.5, 1.0, 0.5, 1.0, 1e-3)
    expected = 2.0 * 1.5 * 8.0 * np.log(2.0) * np.exp(1.0) * 1e-3
    assert value == pytest.approx(expected)
    total = two_exponent_majorant(1.0, 1.5, 1.0, 0.5, 1.0, 1e-3, 0.3, 2.0)
    assert total == pytest.approx(2.0 * expected + 0.3)


def test_fit_power_law_recovers_exponent():
    x = np.array([1.0, 2.0, 4.0, 8.0])
    B, kappa = fit_power_law(x, 3.0 * x**2)
    assert B == pytest.approx(3.0)
    assert kappa == pytest.approx(2.0)


def test_fit_power_law_rejects_bad_samples():
    with pytest.raises(ValueError):
        fit_power_law([1.0], [1.0])
    with pytest.raises(ValueError):
        fit_power_law([1.0, 2.0], [0.0, 1.0])


def test_one_sided_gaps():
    grid = Grid.unit(n=3)
    u1 = ScalarField(grid=grid, values=[0.0, 0.3, 0.0])
    u2 = ScalarField(grid=grid, values=[0.0, 0.1, 0.2])
    assert one_sided_gaps(u1, u2) == pytest.approx((0.2, 0.2))


def test_split_terms_hold_for_a_shifted_sandwich():
    grid = Grid.unit(n=9)
    u = ScalarField.from_function(grid, lambda x: x[:, 0])
    upper = u.shifted(0.05)
    prm = TransformParams(A=1.5, alpha=2.0)
    terms = split_terms(u, u, upper, prm, 0.05, 1.0)
    assert terms.holds
    assert terms.total == 0.0
    assert terms.sandwich_gap == pytest.approx(0.05)
    assert 0.0 <= terms.transform_gap <= np.log(1.5) / 2.0 + 1e-12
    assert terms.to_transform <= 0.0
    assert terms.transform_cap == pytest.approx(0.25)
    assert terms.sandwich_cap == pytest.approx(0.05)


def test_doubling_probe_on_equal_fields():
    grid = Grid.unit(n=9)
    u = ScalarField.from_function(grid, lambda x: x[:, 0])
    result = doubling_probe(u, u, 100.0)
    assert result.sigma == 0.0
    assert result.M_j == 0.0
    assert result.x_index == result.y_index == 0
    assert result.separation == 0.0


def test_doubling_probe_dominates_sigma():
    grid = Grid.unit(dim=2, n=5)
    u1 = ScalarField.from_function(grid, lambda x: x[:, 0] * x[:, 1])
    w2 = u1.shifted(-0.2)
    for j in (1.0, 10.0, 100.0):
        result = doubling_probe(u1, w2, j)
        assert result.sigma == pytest.approx(0.2)
        assert result.M_j >= result.sigma
        assert result.j_separation == pytest.approx(j * result.separation)
        assert len(result.x_j) == 2


def test_doubling_probe_rejects_large_grids_and_bad_j():
    big = ScalarField.constant(Grid.unit(dim=2, n=20), 0.0)
    with pytest.raises(ValueError, match="probe limit"):
        doubling_probe(big, big, 1.0)
    small = ScalarField.constant(Grid.unit(n=5), 0.0)
    with pytest.raises(ValueError):
        doubling_probe(small, small, 0.0)


def test_doubling_result_requires_m_j_above_sigma():
    with pytest.raises(ValueError):
        DoublingResult(
            j=1.0,
            M_j=0.1,
            x_index=0,
            y_index=0,
            x_j=(0.0,),
            y_j=(0.0,),
            sigma=0.2,
            separation=0.0,
            j_separation=0.0,
        )
