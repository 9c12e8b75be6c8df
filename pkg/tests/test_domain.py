import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodetool.infinity_laplace.domain import (
    BoundaryData,
    ExponentField,
    Grid,
    ScalarField,
    grad_ln_p_gap,
    lipschitz_constant,
    make_affine_exponent,
    make_constant_exponent,
    make_exponential_exponent,
    make_tabulated_exponent,
    max_excess,
    sup_difference,
    transfinite_interpolation,
)


def test_grid_rejects_too_few_nodes():
    with pytest.raises(ValueError):
        Grid(dim=1, lower=(0.0,), upper=(1.0,), n=2)


def test_grid_rejects_inverted_box():
    with pytest.raises(ValueError):
        Grid(dim=1, lower=(1.0,), upper=(0.0,), n=5)


def test_grid_rejects_corner_dimension_mismatch():
    with pytest.raises(ValueError):
        Grid(dim=2, lower=(0.0,), upper=(1.0, 1.0), n=5)


def test_grid_spacing_and_counts():
    grid = Grid.unit(dim=2, n=5)
    assert grid.spacing.tolist() == [0.25, 0.25]
    assert grid.node_count == 25
    assert grid.boundary_indices().size == 16
    assert grid.interior_indices().size == 9


def test_grid_points_are_c_ordered():
    grid = Grid.unit(dim=2, n=3)
    points = grid.points()
    assert points[1].tolist() == [0.0, 0.5]
    assert points[3].tolist() == [0.5, 0.0]


def test_one_dimensional_boundary_is_the_two_ends():
    grid = Grid.unit(dim=1, n=9)
    assert grid.boundary_indices().tolist() == [0, 8]


def test_is_interior_and_out_of_range():
    grid = Grid.unit(dim=2, n=4)
    assert grid.is_interior(5)
    assert not grid.is_interior(0)
    with pytest.raises(ValueError):
        grid.is_interior(16)


def test_refined_halves_spacing():
    grid = Grid.unit(dim=1, n=17)
    assert grid.refined().n == 33
    assert grid.refined().spacing[0] == pytest.approx(grid.spacing[0] / 2)


def test_diameter_of_unit_square():
    assert Grid.unit(dim=2, n=5).diameter() == pytest.approx(np.sqrt(2.0))


def test_scalar_field_rejects_wrong_size_and_nan():
    grid = Grid.unit(n=5)
    with pytest.raises(ValueError):
        ScalarField(grid=grid, values=np.zeros(4))
    with pytest.raises(ValueError):
        ScalarField(grid=grid, values=[0.0, 1.0, np.nan, 0.0, 0.0])


def test_scalar_field_values_are_frozen():
    field = ScalarField.constant(Grid.unit(n=5), 1.0)
    with pytest.raises(ValueError):
        field.values[0] = 2.0


def test_reflect_and_shift():
    field = ScalarField.from_function(Grid.unit(n=5), lambda x: x[:, 0])
    assert field.reflect(1.0).values.tolist() == [1.0, 0.75, 0.5, 0.25, 0.0]
    assert field.shifted(2.0).values[0] == 2.0


def test_sup_difference_and_max_excess():
    grid = Grid.unit(n=3)
    a = ScalarField(grid=grid, values=[0.0, 1.0, 0.0])
    b = ScalarField(grid=grid, values=[0.0, 0.0, 2.0])
    assert sup_difference(a, b) == 2.0
    assert max_excess(a, b) == 1.0
    assert max_excess(b, a) == 2.0


def test_field_comparisons_need_the_same_grid():
    a = ScalarField.constant(Grid.unit(n=3), 0.0)
    b = ScalarField.constant(Grid.unit(n=5), 0.0)
    with pytest.raises(ValueError):
        sup_difference(a, b)


def test_boundary_data_lipschitz_constant():
    grid = Grid.unit(dim=1, n=9)
    f = BoundaryData.from_values(grid, [0.0, 0.5])
    assert f.lipschitz == pytest.approx(0.5)
    assert lipschitz_constant(f) == pytest.approx(0.5)
    assert (f.lo, f.hi) == (0.0, 0.5)


def test_boundary_data_rejects_understated_lipschitz():
    grid = Grid.unit(dim=1, n=9)
    with pytest.raises(ValueError):
        BoundaryData(grid=grid, values=[0.0, 1.0], lipschitz=0.5)


def test_boundary_data_rejects_wrong_count():
    with pytest.raises(ValueError):
        BoundaryData.from_values(Grid.unit(dim=2, n=5), [0.0, 1.0])


def test_boundary_data_from_function_in_2d():
    grid = Grid.unit(dim=2, n=5)
    f = BoundaryData.from_function(grid, lambda x: x[:, 0] + 2.0 * x[:, 1])
    assert f.values.size == 16
    assert f.lipschitz == pytest.approx(np.sqrt(5.0))


def test_scaled_boundary_data_scales_lipschitz():
    f = BoundaryData.from_values(Grid.unit(n=5), [0.0, 0.5])
    assert f.scaled(-2.0).lipschitz == pytest.approx(1.0)
    assert f.shifted(1.0).lo == 1.0


def test_transfinite_interpolation_is_chord_in_1d():
    grid = Grid.unit(dim=1, n=5)
    start = transfinite_interpolation(BoundaryData.from_values(grid, [1.0, 3.0]))
    assert start.values.tolist() == pytest.approx([1.0, 1.5, 2.0, 2.5, 3.0])


def test_transfinite_interpolation_reproduces_bilinear_data():
    grid = Grid.unit(dim=2, n=9)
    f = BoundaryData.from_function(grid, lambda x: x[:, 0] + 2.0 * x[:, 1])
    start = transfinite_interpolation(f)
    expected = grid.points() @ np.array([1.0, 2.0])
    assert np.max(np.abs(start.values - expected)) < 1e-14


def test_transfinite_interpolation_stays_within_data_range():
    grid = Grid.unit(dim=2, n=9)
    f = BoundaryData.from_function(grid, lambda x: x[:, 0] ** 2 - x[:, 1] ** 2)
    start = transfinite_interpolation(f)
    assert f.lo <= start.values.min() and start.values.max() <= f.hi
    assert np.array_equal(start.boundary_values(), f.values)


def test_exponential_exponent_has_constant_log_gradient():
    grid = Grid.unit(dim=2, n=5)
    pfield = make_exponential_exponent(grid, 2.0, [0.3, -0.4])
    assert pfield.sup_norm_grad_ln_p() == pytest.approx(0.5)
    assert pfield.p[0] == pytest.approx(2.0)
    assert pfield.kind == "exponential"
    assert pfield.gradient_consistency() < 1e-12


def test_zero_perturbation_is_constant():
    pfield = make_exponential_exponent(Grid.unit(n=5), 2.0, [0.0])
    assert pfield.kind == "constant"
    assert pfield.is_constant()
    assert make_constant_exponent(Grid.unit(n=5), 3.0).p_max == 3.0


def test_exponential_exponent_rejects_nonpositive_scale():
    with pytest.raises(ValueError):
        make_exponential_exponent(Grid.unit(n=5), 0.0, [1.0])


def test_affine_exponent_log_gradient():
    grid = Grid.unit(dim=1, n=5)
    pfield = make_affine_exponent(grid, 2.0, [1.0])
    assert pfield.grad_ln_p[:, 0] == pytest.approx(1.0 / (2.0 + grid.axes()[0]))
    assert pfield.p_min == 2.0 and pfield.p_max == 3.0


def test_affine_exponent_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        make_affine_exponent(Grid.unit(n=5), 0.5, [-1.0])


def test_tabulated_exponent_checks_shapes_and_positivity():
    grid = Grid.unit(n=3)
    pfield = make_tabulated_exponent(grid, [2.0, 2.0, 2.0], [0.0, 0.0, 0.0])
    assert pfield.grad_ln_p.shape == (3, 1)
    with pytest.raises(ValueError):
        make_tabulated_exponent(grid, [2.0, -1.0, 2.0], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        ExponentField(grid=grid, p=[2.0, 2.0], grad_ln_p=[[0.0], [0.0]])


def test_grad_ln_p_gap():
    grid = Grid.unit(n=5)
    p1 = make_constant_exponent(grid, 2.0)
    p2 = make_affine_exponent(grid, 2.0, [0.2])
    assert grad_ln_p_gap(p1, p2) == pytest.approx(0.1)
    assert grad_ln_p_gap(p1, p1) == 0.0


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(-5.0, 5.0), min_size=2, max_size=2),
    st.floats(-3.0, 3.0),
)
def test_shift_leaves_lipschitz_constant_unchanged(values, c):
    grid = Grid.unit(dim=1, n=5)
    f = BoundaryData.from_values(grid, values)
    moved = BoundaryData.from_values(grid, np.asarray(values) + c)
    assert moved.lipschitz == pytest.approx(f.lipschitz, abs=1e-12)
