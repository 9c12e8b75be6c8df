"""
Centered-difference evaluation of the infinity-Laplacian and its
variable-exponent counterpart.

These are measurement operators: no regularization of ``ln |grad u|``
beyond the exact ``s**3 ln s -> 0`` limit, and no upwinding. The monotone
discretizations used for solving live in :mod:`solvers`.
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict

from nodetool.infinity_laplace.domain import (
    ExponentField,
    Grid,
    ScalarField,
    interior_centered_gradient,
    shifted_interior,
)


class OperatorSample(BaseModel):
    """Pointwise evaluation of the infinity(x)-Laplacian at one interior node."""

    model_config = ConfigDict(frozen=True)

    node: int
    gradient: tuple[float, ...]
    grad_norm: float
    infinity_laplacian: float
    variable_term: float
    total: float


def _require_interior(grid: Grid, node: int) -> tuple[int, ...]:
    if not grid.is_interior(node):
        raise ValueError(f"node {node} is a boundary node; operators need an interior node")
    return tuple(int(i) for i in np.unravel_index(node, grid.shape))


def _at(u: ScalarField, index: tuple[int, ...], offset: tuple[int, ...]) -> float:
    array = u.as_grid_array()
    return float(array[tuple(i + o for i, o in zip(index, offset))])


def _unit(dim: int, axis: int, step: int) -> tuple[int, ...]:
    return tuple(step if a == axis else 0 for a in range(dim))


def gradient_centered(u: ScalarField, node: int) -> np.ndarray:
    grid = u.grid
    index = _require_interior(grid, node)
    h = grid.spacing
    return np.array(
        [
            (_at(u, index, _unit(grid.dim, a, 1)) - _at(u, index, _unit(grid.dim, a, -1)))
            / (2.0 * h[a])
            for a in range(grid.dim)
        ]
    )


def _hessian(u: ScalarField, index: tuple[int, ...]) -> np.ndarray:
    grid = u.grid
    h = grid.spacing
    center = _at(u, index, (0,) * grid.dim)
    hess = np.empty((grid.dim, grid.dim))
    for a in range(grid.dim):
        hess[a, a] = (
            _at(u, index, _unit(grid.dim, a, 1))
            - 2.0 * center
            + _at(u, index, _unit(grid.dim, a, -1))
        ) / h[a] ** 2
    if grid.dim == 2:
        mixed = (
            _at(u, index, (1, 1))
            - _at(u, index, (1, -1))
            - _at(u, index, (-1, 1))
            + _at(u, index, (-1, -1))
        ) / (4.0 * h[0] * h[1])
        hess[0, 1] = hess[1, 0] = mixed
    return hess


def infinity_laplacian(u: ScalarField, node: int) -> float:
    index = _require_interior(u.grid, node)
    g = gradient_centered(u, node)
    hess = _hessian(u, index)
    return float(g @ hess @ g)


def _drift(g: np.ndarray, grad_ln_p: np.ndarray) -> float:
    s = float(np.linalg.norm(g))
    if s == 0.0:
        return 0.0
    return s * s * float(np.log(s)) * float(g @ grad_ln_p)


def variable_term(u: ScalarField, pfield: ExponentField, node: int) -> float:
    """``|g|^2 ln|g| <g, grad ln p>`` with ``g`` the centered gradient; exactly 0 at ``g = 0``."""
    if pfield.grid != u.grid:
        raise ValueError("exponent field lives on a different grid")
    return _drift(gradient_centered(u, node), pfield.grad_ln_p[node])


def infinity_x_laplacian(u: ScalarField, pfield: ExponentField, node: int) -> OperatorSample:
    if pfield.grid != u.grid:
        raise ValueError("exponent field lives on a different grid")
    g = gradient_centered(u, node)
    main = infinity_laplacian(u, node)
    extra = _drift(g, pfield.grad_ln_p[node])
    return OperatorSample(
        node=node,
        gradient=tuple(float(c) for c in g),
        grad_norm=float(np.linalg.norm(g)),
        infinity_laplacian=main,
        variable_term=extra,
        total=main + extra,
    )


# Vectorized versions over all interior nodes, in grid.interior_indices() order.


def _interior_hessian(u: ScalarField) -> np.ndarray:
    grid = u.grid
    h = grid.spacing
    values = u.values
    center = shifted_interior(values, grid, (0,) * grid.dim)
    hess = np.empty((center.size, grid.dim, grid.dim))
    for a in range(grid.dim):
        plus = shifted_interior(values, grid, _unit(grid.dim, a, 1))
        minus = shifted_interior(values, grid, _unit(grid.dim, a, -1))
        hess[:, a, a] = (plus - 2.0 * center + minus) / h[a] ** 2
    if grid.dim == 2:
        mixed = (
            shifted_interior(values, grid, (1, 1))
            - shifted_interior(values, grid, (1, -1))
            - shifted_interior(values, grid, (-1, 1))
            + shifted_interior(values, grid, (-1, -1))
        ) / (4.0 * h[0] * h[1])
        hess[:, 0, 1] = hess[:, 1, 0] = mixed
    return hess


def infinity_laplacian_field(u: ScalarField) -> np.ndarray:
    g = interior_centered_gradient(u.values, u.grid)
    return np.einsum("ni,nij,nj->n", g, _interior_hessian(u), g)


def variable_term_field(u: ScalarField, pfield: ExponentField) -> np.ndarray:
    if pfield.grid != u.grid:
        raise ValueError("exponent field lives on a different grid")
    g = interior_centered_gradient(u.values, u.grid)
    s = np.linalg.norm(g, axis=1)
    weight = pfield.grad_ln_p[u.grid.interior_indices()]
    safe = np.where(s > 0.0, s, 1.0)
    return np.where(s > 0.0, s * s * np.log(safe) * np.sum(g * weight, axis=1), 0.0)


def infinity_x_laplacian_field(u: ScalarField, pfield: ExponentField) -> np.ndarray:
    return infinity_laplacian_field(u) + variable_term_field(u, pfield)


def stream_line_values(u: ScalarField, pfield: ExponentField) -> np.ndarray:
    """``|grad u|^p(x)`` at interior nodes; constant along stream lines of a smooth solution."""
    if pfield.grid != u.grid:
        raise ValueError("exponent field lives on a different grid")
    s = np.linalg.norm(interior_centered_gradient(u.values, u.grid), axis=1)
    return s ** pfield.p[u.grid.interior_indices()]
