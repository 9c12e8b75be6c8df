"""
Dirichlet solvers built on monotone pointwise updates.

Every solver is a Jacobi fixed-point iteration of a :class:`MonotoneScheme`
started from the transfinite interpolation of the boundary data:

* ``harmonic``: ``u <- (max_N u + min_N u) / 2``
* ``upper``: ``u <- max(mid, min_N (u(y) + eps |y - x|))``, the discrete
  ``max{eps - |grad u|, Lap_inf u} = 0``
* ``lower``: ``u <- min(mid, max_N (u(y) - eps |y - x|))``, the discrete
  ``min{|grad u| - eps, Lap_inf u} = 0``

With a non-constant exponent the midpoint is replaced by a semi-implicit
step that adds the upwinded drift ``ln|grad u| <grad u, grad ln p>`` of the
normalized equation. For a constant exponent the drift step is skipped and
results are bit-identical to the constant-exponent solvers.
"""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from nodetool.infinity_laplace.domain import (
    BoundaryData,
    ExponentField,
    Grid,
    ScalarField,
    interior_centered_gradient,
    transfinite_interpolation,
)
from nodetool.infinity_laplace.operators import (
    infinity_laplacian_field,
    infinity_x_laplacian_field,
)

log = logging.getLogger(__name__)

SchemeKind = Literal["harmonic", "upper", "lower"]


class SolveConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(
        default=0.0, ge=0.0, description="Gradient threshold of the auxiliary equations"
    )
    tolerance: float | None = Field(
        default=None,
        gt=0.0,
        description="Sup-norm update threshold; default 1e-9 * (max f - min f + 1)",
    )
    max_iterations: int = Field(default=500_000, ge=1, description="Jacobi sweep cap")
    gradient_floor: float | None = Field(
        default=None, gt=0.0, description="Floor for |grad u| inside ln; default h"
    )
    relaxation: float = Field(
        default=1.0, gt=0.0, le=1.0, description="Damping weight of each sweep"
    )

    def resolved_tolerance(self, f: BoundaryData) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return 1e-9 * (f.hi - f.lo + 1.0)


class SolveResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: ScalarField
    iterations: int
    residual: float
    converged: bool
    final_update: float


class Sandwich(BaseModel):
    """Lower, plain and upper solutions iterated in lockstep."""

    model_config = ConfigDict(frozen=True)

    lower: SolveResult
    middle: SolveResult
    upper: SolveResult

    @property
    def converged(self) -> bool:
        return self.lower.converged and self.middle.converged and self.upper.converged

    def ordered(self) -> bool:
        lo, mid, hi = (r.field.values for r in (self.lower, self.middle, self.upper))
        return bool(np.all(lo <= mid) and np.all(mid <= hi))

    def width(self) -> float:
        return float(np.max(self.upper.field.values - self.lower.field.values))


def _neighbor_offsets(dim: int) -> list[tuple[int, ...]]:
    return [o for o in itertools.product((-1, 0, 1), repeat=dim) if any(o)]


class Stencil:
    """Neighbor tables of the interior nodes: 2 neighbors in 1D, 8 in 2D."""

    def __init__(self, grid: Grid):
        self.grid = grid
        self.spacing = grid.spacing
        self.interior = grid.interior_indices()
        # interior nodes as a slice in 1D, where they are contiguous
        self.take: slice | np.ndarray = slice(1, grid.n - 1) if grid.dim == 1 else self.interior
        index = np.unravel_index(self.interior, grid.shape)

        def flat(offset: tuple[int, ...]) -> np.ndarray:
            return np.ravel_multi_index(
                tuple(index[a] + offset[a] for a in range(grid.dim)), grid.shape
            )

        offsets = _neighbor_offsets(grid.dim)
        self.neighbors = np.stack([flat(o) for o in offsets], axis=1)
        self.distances = np.array(
            [float(np.linalg.norm(np.multiply(o, self.spacing))) for o in offsets]
        )
        axes = [tuple(1 if a == b else 0 for b in range(grid.dim)) for a in range(grid.dim)]
        self.plus = np.stack([flat(e) for e in axes], axis=1)
        self.minus = np.stack([flat(tuple(-c for c in e)) for e in axes], axis=1)


@lru_cache(maxsize=32)
def stencil_for(grid: Grid) -> Stencil:
    return Stencil(grid)


class MonotoneScheme:
    """Pointwise update rule; ``update`` maps nodal values to new interior values."""

    def __init__(
        self,
        grid: Grid,
        kind: SchemeKind = "harmonic",
        epsilon: float = 0.0,
        pfield: ExponentField | None = None,
        gradient_floor: float | None = None,
    ):
        if kind not in ("harmonic", "upper", "lower"):
            raise ValueError(f"unknown scheme kind {kind!r}")
        if epsilon < 0:
            raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
        if pfield is not None and pfield.grid != grid:
            raise ValueError("exponent field lives on a different grid")
        self.grid = grid
        self.kind = kind
        self.epsilon = float(epsilon)
        self.stencil = stencil_for(grid)
        self.floor = float(gradient_floor) if gradient_floor else float(np.min(grid.spacing))
        self._drift: np.ndarray | None = None
        if pfield is not None and not pfield.is_constant():
            self._drift = pfield.grad_ln_p[self.stencil.interior]
        self._line = grid.dim == 1
        if self._line:
            h = float(grid.spacing[0])
            self._h = h
            self._reach = self.epsilon * h
            self._weight = 0.5 * h
            if self._drift is not None:
                self._drift = np.ascontiguousarray(self._drift[:, 0])

    @property
    def has_drift(self) -> bool:
        return self._drift is not None

    def _update_line(self, u: np.ndarray) -> np.ndarray:
        """1D update on slices; both neighbors sit at distance ``h``."""
        left = u[:-2]
        right = u[2:]
        base = 0.5 * (left + right)
        if self._drift is not None:
            grad = (right - left) / (2.0 * self._h)
            b = np.log(np.maximum(np.abs(grad), self.floor)) * self._drift
            c = self._weight * np.abs(b)
            upwind = np.where(b >= 0.0, right, left)
            base = (base + c * upwind) / (1.0 + c)
        if self.kind == "upper":
            return np.maximum(base, np.minimum(left, right) + self._reach)
        if self.kind == "lower":
            return np.minimum(base, np.maximum(left, right) - self._reach)
        return base

    def _drift_step(self, u: np.ndarray, mid: np.ndarray, d: np.ndarray) -> np.ndarray:
        st = self.stencil
        assert self._drift is not None
        up = u[st.plus]
        down = u[st.minus]
        grad = (up - down) / (2.0 * st.spacing)
        speed = np.maximum(np.linalg.norm(grad, axis=1), self.floor)
        b = np.log(speed)[:, None] * self._drift
        c = 0.5 * d[:, None] ** 2 * np.abs(b) / st.spacing
        upwind = np.where(b >= 0.0, up, down)
        return (mid + np.sum(c * upwind, axis=1)) / (1.0 + np.sum(c, axis=1))

    def update(self, u: np.ndarray) -> np.ndarray:
        if self._line:
            return self._update_line(u)
        st = self.stencil
        vals = u[st.neighbors]
        hi = vals.max(axis=1)
        lo = vals.min(axis=1)
        base = 0.5 * (hi + lo)
        if self._drift is not None:
            d = 0.5 * (st.distances[vals.argmax(axis=1)] + st.distances[vals.argmin(axis=1)])
            base = self._drift_step(u, base, d)
        if self.kind == "upper":
            return np.maximum(base, np.min(vals + self.epsilon * st.distances, axis=1))
        if self.kind == "lower":
            return np.minimum(base, np.max(vals - self.epsilon * st.distances, axis=1))
        return base


def _residual(field: ScalarField, scheme: MonotoneScheme, pfield: ExponentField | None) -> float:
    if scheme.has_drift and pfield is not None:
        operator = infinity_x_laplacian_field(field, pfield)
    else:
        operator = infinity_laplacian_field(field)
    if scheme.kind != "harmonic":
        speed = np.linalg.norm(interior_centered_gradient(field.values, field.grid), axis=1)
        if scheme.kind == "upper":
            operator = np.maximum(scheme.epsilon - speed, operator)
        else:
            operator = np.minimum(speed - scheme.epsilon, operator)
    return float(np.max(np.abs(operator)))


def _iterate(
    schemes: Sequence[MonotoneScheme], f: BoundaryData, cfg: SolveConfig
) -> tuple[list[np.ndarray], int, bool, list[float]]:
    tol = cfg.resolved_tolerance(f)
    start = transfinite_interpolation(f).values
    states = [np.array(start) for _ in schemes]
    interior = schemes[0].stencil.take
    omega = cfg.relaxation
    changes = [np.inf] * len(schemes)
    for sweep in range(1, cfg.max_iterations + 1):
        for k, (scheme, u) in enumerate(zip(schemes, states)):
            new = scheme.update(u)
            old = u[interior]
            if omega < 1.0:
                new = (1.0 - omega) * old + omega * new
            changes[k] = float(np.max(np.abs(new - old)))
            u[interior] = new
        if sweep % 10_000 == 0:
            log.debug("sweep %d: update %.3e (tolerance %.3e)", sweep, max(changes), tol)
        if max(changes) < tol:
            log.info("converged after %d sweeps (update %.3e)", sweep, max(changes))
            return states, sweep, True, changes
    log.warning(
        "no convergence within %d sweeps: update %.3e above tolerance %.3e",
        cfg.max_iterations,
        max(changes),
        tol,
    )
    return states, cfg.max_iterations, False, changes


def _check_inputs(grid: Grid, f: BoundaryData, pfield: ExponentField | None = None) -> None:
    if f.grid != grid:
        raise ValueError("boundary data belongs to a different grid")
    if pfield is not None and pfield.grid != grid:
        raise ValueError("exponent field lives on a different grid")


def _solve(
    grid: Grid,
    f: BoundaryData,
    cfg: SolveConfig,
    kinds: Sequence[SchemeKind],
    pfield: ExponentField | None = None,
) -> list[SolveResult]:
    _check_inputs(grid, f, pfield)
    epsilon = cfg.epsilon
    schemes = [
        MonotoneScheme(
            grid,
            kind,
            epsilon=epsilon if kind != "harmonic" else 0.0,
            pfield=pfield,
            gradient_floor=cfg.gradient_floor,
        )
        for kind in kinds
    ]
    states, sweeps, converged, changes = _iterate(schemes, f, cfg)
    results = []
    for scheme, values, change in zip(schemes, states, changes):
        field = ScalarField(grid=grid, values=values)
        results.append(
            SolveResult(
                field=field,
                iterations=sweeps,
                residual=_residual(field, scheme, pfield),
                converged=converged,
                final_update=change,
            )
        )
    return results


def solve_infinity_harmonic(grid: Grid, f: BoundaryData, cfg: SolveConfig) -> SolveResult:
    return _solve(grid, f, cfg, ["harmonic"])[0]


def solve_infinity_x(
    grid: Grid, f: BoundaryData, pfield: ExponentField, cfg: SolveConfig
) -> SolveResult:
    return _solve(grid, f, cfg, ["harmonic"], pfield)[0]


def solve_upper(grid: Grid, f: BoundaryData, cfg: SolveConfig) -> SolveResult:
    return _solve(grid, f, cfg, ["upper"])[0]


def solve_lower(grid: Grid, f: BoundaryData, cfg: SolveConfig) -> SolveResult:
    return _solve(grid, f, cfg, ["lower"])[0]


def solve_upper_x(
    grid: Grid, f: BoundaryData, pfield: ExponentField, cfg: SolveConfig
) -> SolveResult:
    return _solve(grid, f, cfg, ["upper"], pfield)[0]


def solve_lower_x(
    grid: Grid, f: BoundaryData, pfield: ExponentField, cfg: SolveConfig
) -> SolveResult:
    return _solve(grid, f, cfg, ["lower"], pfield)[0]


def solve_sandwich(
    grid: Grid, f: BoundaryData, cfg: SolveConfig, pfield: ExponentField | None = None
) -> Sandwich:
    """
    Solve the lower, plain and upper problems together.

    All three share the start value and the sweep count. For a constant
    exponent the updates are monotone, which keeps ``lower <= middle <= upper``
    at every node after every sweep. The drift step depends on the local
    gradient, so with a variable exponent the ordering holds only up to the
    discretization error.
    """
    lower, middle, upper = _solve(grid, f, cfg, ["lower", "harmonic", "upper"], pfield)
    return Sandwich(lower=lower, middle=middle, upper=upper)
