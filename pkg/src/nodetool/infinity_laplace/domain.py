"""
Grids, nodal fields, boundary data and variable exponents.

Everything here is an immutable pydantic model. Arrays are copied on the way
in and frozen, so a field can be handed to several threads at once.

Node numbering is C-order over the tensor grid: in 2D the node at axis
indices ``(i, j)`` has flat index ``i * n + j`` and coordinates
``(x_i, y_j)``.
"""

from __future__ import annotations

import logging
from typing import Any, Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.spatial.distance import pdist

log = logging.getLogger(__name__)

PointFunction = Callable[[np.ndarray], np.ndarray]
ExponentKind = Literal["constant", "exponential", "tabulated"]


def _frozen(values: Any) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


class Grid(BaseModel):
    """Uniform 1D interval or 2D rectangle lattice."""

    model_config = ConfigDict(frozen=True)

    dim: Literal[1, 2] = Field(default=1, description="Spatial dimension")
    lower: tuple[float, ...] = Field(default=(0.0,), description="Lower corner")
    upper: tuple[float, ...] = Field(default=(1.0,), description="Upper corner")
    n: int = Field(default=33, ge=3, description="Nodes per axis")

    @model_validator(mode="after")
    def _check_box(self) -> "Grid":
        if len(self.lower) != self.dim or len(self.upper) != self.dim:
            raise ValueError(
                f"corners must have {self.dim} coordinate(s), "
                f"got {len(self.lower)} and {len(self.upper)}"
            )
        if any(hi <= lo for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("upper corner must exceed lower corner on every axis")
        return self

    @classmethod
    def unit(cls, dim: Literal[1, 2] = 1, n: int = 33) -> "Grid":
        return cls(dim=dim, lower=(0.0,) * dim, upper=(1.0,) * dim, n=n)

    @property
    def spacing(self) -> np.ndarray:
        return (np.asarray(self.upper) - np.asarray(self.lower)) / (self.n - 1)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def node_count(self) -> int:
        return self.n**self.dim

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, self.n) for lo, hi in zip(self.lower, self.upper)]

    def points(self) -> np.ndarray:
        """Node coordinates, shape ``(node_count, dim)``."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([axis.ravel() for axis in mesh], axis=1)

    def boundary_mask(self) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        for axis in range(self.dim):
            index: list[Any] = [slice(None)] * self.dim
            index[axis] = 0
            mask[tuple(index)] = True
            index[axis] = -1
            mask[tuple(index)] = True
        return mask.ravel()

    def boundary_indices(self) -> np.ndarray:
        return np.flatnonzero(self.boundary_mask())

    def interior_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.boundary_mask())

    def is_interior(self, node: int) -> bool:
        if not 0 <= node < self.node_count:
            raise ValueError(f"node {node} outside grid with {self.node_count} nodes")
        index = np.unravel_index(node, self.shape)
        return all(0 < i < self.n - 1 for i in index)

    def diameter(self) -> float:
        return float(np.linalg.norm(np.subtract(self.upper, self.lower)))

    def refined(self) -> "Grid":
        """Same box with the spacing halved."""
        return self.model_copy(update={"n": 2 * (self.n - 1) + 1})


def shifted_interior(values: np.ndarray, grid: Grid, offset: tuple[int, ...]) -> np.ndarray:
    """Values at ``interior + offset`` for every interior node, in interior order."""
    array = np.asarray(values).reshape(grid.shape)
    window = tuple(slice(1 + o, grid.n - 1 + o) for o in offset)
    return array[window].ravel()


def interior_centered_gradient(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Centered differences at all interior nodes, shape ``(m, dim)``."""
    h = grid.spacing
    columns = []
    for axis in range(grid.dim):
        plus = tuple(1 if a == axis else 0 for a in range(grid.dim))
        minus = tuple(-1 if a == axis else 0 for a in range(grid.dim))
        columns.append(
            (shifted_interior(values, grid, plus) - shifted_interior(values, grid, minus))
            / (2.0 * h[axis])
        )
    return np.stack(columns, axis=1)


class ScalarField(BaseModel):
    """One finite real value per grid node."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return _frozen(value)

    @model_validator(mode="after")
    def _check_values(self) -> "ScalarField":
        if self.values.shape != (self.grid.node_count,):
            raise ValueError(
                f"field has {self.values.size} values for {self.grid.node_count} nodes"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")
        return self

    @classmethod
    def from_function(cls, grid: Grid, fn: PointFunction) -> "ScalarField":
        return cls(grid=grid, values=np.broadcast_to(fn(grid.points()), (grid.node_count,)))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "ScalarField":
        return cls(grid=grid, values=np.full(grid.node_count, float(value)))

    def with_values(self, values: np.ndarray) -> "ScalarField":
        return ScalarField(grid=self.grid, values=values)

    def as_grid_array(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)

    def interior_values(self) -> np.ndarray:
        return self.values[self.grid.interior_indices()]

    def boundary_values(self) -> np.ndarray:
        return self.values[self.grid.boundary_indices()]

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def shifted(self, c: float) -> "ScalarField":
        return self.with_values(self.values + c)

    def reflect(self, k: float) -> "ScalarField":
        """``k - u``; turns the lower half of a comparison into the upper one."""
        return self.with_values(k - self.values)


def _same_grid(a: ScalarField, b: ScalarField) -> None:
    if a.grid != b.grid:
        raise ValueError("fields live on different grids")


def sup_difference(a: ScalarField, b: ScalarField) -> float:
    _same_grid(a, b)
    return float(np.max(np.abs(a.values - b.values)))


def max_excess(a: ScalarField, b: ScalarField) -> float:
    """``max(a - b)`` over all nodes."""
    _same_grid(a, b)
    return float(np.max(a.values - b.values))


def _pairwise_slope(points: np.ndarray, values: np.ndarray) -> float:
    if values.size < 2:
        raise ValueError("a Lipschitz constant needs at least two boundary nodes")
    distances = pdist(points)
    rises = pdist(values.reshape(-1, 1), metric="cityblock")
    return float(np.max(rises / distances))


class BoundaryData(BaseModel):
    """Dirichlet values on the boundary nodes, in ``grid.boundary_indices()`` order."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    values: np.ndarray
    lipschitz: float = Field(ge=0.0, description="Lipschitz constant over boundary pairs")

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return _frozen(value)

    @model_validator(mode="after")
    def _check_values(self) -> "BoundaryData":
        expected = self.grid.boundary_indices().size
        if self.values.shape != (expected,):
            raise ValueError(f"boundary data has {self.values.size} values for {expected} nodes")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("boundary values must be finite")
        slope = _pairwise_slope(self.points(), self.values)
        if slope > self.lipschitz * (1.0 + 1e-12) + 1e-12:
            raise ValueError(
                f"boundary data is not {self.lipschitz}-Lipschitz (pair slope {slope})"
            )
        return self

    @classmethod
    def from_values(cls, grid: Grid, values: Any) -> "BoundaryData":
        array = np.asarray(values, dtype=float)
        points = grid.points()[grid.boundary_indices()]
        if array.shape != (points.shape[0],):
            raise ValueError(
                f"boundary data has {array.size} values for {points.shape[0]} nodes"
            )
        return cls(grid=grid, values=array, lipschitz=_pairwise_slope(points, array))

    @classmethod
    def from_function(cls, grid: Grid, fn: PointFunction) -> "BoundaryData":
        points = grid.points()[grid.boundary_indices()]
        values = np.broadcast_to(fn(points), (points.shape[0],))
        return cls.from_values(grid, values)

    def points(self) -> np.ndarray:
        return self.grid.points()[self.grid.boundary_indices()]

    @property
    def lo(self) -> float:
        return float(np.min(self.values))

    @property
    def hi(self) -> float:
        return float(np.max(self.values))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def shifted(self, c: float) -> "BoundaryData":
        return BoundaryData(grid=self.grid, values=self.values + c, lipschitz=self.lipschitz)

    def scaled(self, factor: float) -> "BoundaryData":
        return BoundaryData(
            grid=self.grid, values=self.values * factor, lipschitz=self.lipschitz * abs(factor)
        )


def lipschitz_constant(f: BoundaryData, grid: Grid | None = None) -> float:
    """Largest ``|f(x) - f(y)| / |x - y|`` over all boundary node pairs."""
    grid = grid or f.grid
    if grid != f.grid:
        raise ValueError("boundary data belongs to a different grid")
    return _pairwise_slope(grid.points()[grid.boundary_indices()], f.values)


def transfinite_interpolation(f: BoundaryData) -> ScalarField:
    """
    Bilinear Coons patch of the boundary data, clipped to ``[min f, max f]``.

    Linear boundary data is reproduced exactly. In 1D this is the chord
    between the two end values.
    """
    grid = f.grid
    full = np.zeros(grid.node_count)
    boundary = grid.boundary_indices()
    full[boundary] = f.values
    s = np.linspace(0.0, 1.0, grid.n)
    if grid.dim == 1:
        values = full[0] + (full[-1] - full[0]) * s
    else:
        u = full.reshape(grid.shape)
        si = s[:, None]
        tj = s[None, :]
        edges = (
            (1.0 - si) * u[0, :][None, :]
            + si * u[-1, :][None, :]
            + (1.0 - tj) * u[:, 0][:, None]
            + tj * u[:, -1][:, None]
        )
        corners = (
            (1.0 - si) * (1.0 - tj) * u[0, 0]
            + (1.0 - si) * tj * u[0, -1]
            + si * (1.0 - tj) * u[-1, 0]
            + si * tj * u[-1, -1]
        )
        values = (edges - corners).ravel()
    values = np.clip(values, f.lo, f.hi)
    values[boundary] = f.values
    return ScalarField(grid=grid, values=values)


class ExponentField(BaseModel):
    """Positive exponent ``p`` and its logarithmic gradient at every node."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    p: np.ndarray
    grad_ln_p: np.ndarray
    kind: ExponentKind = "tabulated"

    @field_validator("p", "grad_ln_p", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        return _frozen(value)

    @model_validator(mode="after")
    def _check(self) -> "ExponentField":
        count = self.grid.node_count
        if self.p.shape != (count,):
            raise ValueError(f"exponent has {self.p.size} values for {count} nodes")
        if self.grad_ln_p.shape != (count, self.grid.dim):
            raise ValueError(
                f"grad ln p must have shape {(count, self.grid.dim)}, got {self.grad_ln_p.shape}"
            )
        if not (np.all(np.isfinite(self.p)) and np.all(np.isfinite(self.grad_ln_p))):
            raise ValueError("exponent tables must be finite")
        if not self.check_positive():
            raise ValueError(f"exponent must be positive, min p = {float(np.min(self.p))}")
        return self

    def check_positive(self) -> bool:
        return bool(np.all(self.p > 0.0))

    def is_constant(self) -> bool:
        return not np.any(self.grad_ln_p)

    def sup_norm_grad_ln_p(self) -> float:
        return float(np.max(np.linalg.norm(self.grad_ln_p, axis=1)))

    @property
    def p_min(self) -> float:
        return float(np.min(self.p))

    @property
    def p_max(self) -> float:
        return float(np.max(self.p))

    def gradient_consistency(self) -> float:
        """Max deviation of the stored ``grad ln p`` from centered differences of ``ln p``."""
        centered = interior_centered_gradient(np.log(self.p), self.grid)
        stored = self.grad_ln_p[self.grid.interior_indices()]
        return float(np.max(np.abs(centered - stored)))


def _direction(grid: Grid, delta: Any) -> np.ndarray:
    vector = np.atleast_1d(np.asarray(delta, dtype=float))
    if vector.shape != (grid.dim,):
        raise ValueError(f"delta must have {grid.dim} component(s), got {vector.size}")
    return vector


def make_exponential_exponent(grid: Grid, p0: float, delta: Any) -> ExponentField:
    """``p(x) = p0 * exp(<delta, x>)``; the log gradient is ``delta`` everywhere."""
    if p0 <= 0:
        raise ValueError(f"p0 must be positive, got {p0}")
    vector = _direction(grid, delta)
    p = p0 * np.exp(grid.points() @ vector)
    grad = np.tile(vector, (grid.node_count, 1))
    kind: ExponentKind = "exponential" if np.any(vector) else "constant"
    return ExponentField(grid=grid, p=p, grad_ln_p=grad, kind=kind)


def make_constant_exponent(grid: Grid, p0: float) -> ExponentField:
    return make_exponential_exponent(grid, p0, np.zeros(grid.dim))


def make_tabulated_exponent(grid: Grid, p: Any, grad_ln_p: Any) -> ExponentField:
    grad = np.asarray(grad_ln_p, dtype=float)
    if grad.ndim == 1 and grid.dim == 1:
        grad = grad.reshape(-1, 1)
    return ExponentField(grid=grid, p=p, grad_ln_p=grad, kind="tabulated")


def make_affine_exponent(grid: Grid, p0: float, delta: Any) -> ExponentField:
    """``p(x) = p0 + <delta, x>`` with the analytic ``grad ln p = delta / p``."""
    vector = _direction(grid, delta)
    p = p0 + grid.points() @ vector
    if np.any(p <= 0.0):
        raise ValueError(
            f"affine exponent p0={p0}, delta={vector.tolist()} is not positive on the grid"
        )
    return make_tabulated_exponent(grid, p, vector[None, :] / p[:, None])


def grad_ln_p_gap(p1: ExponentField, p2: ExponentField) -> float:
    """``|| grad ln p1 - grad ln p2 ||_inf`` over all nodes."""
    if p1.grid != p2.grid:
        raise ValueError("exponent fields live on different grids")
    return float(np.max(np.linalg.norm(p1.grad_ln_p - p2.grad_ln_p, axis=1)))
