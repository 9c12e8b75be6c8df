"""
JSON experiment configuration.

A config file is one :class:`ExperimentConfig`; the grid, exponent and
boundary blocks are small specs that build the corresponding domain objects.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from nodetool.infinity_laplace.domain import (
    BoundaryData,
    ExponentField,
    Grid,
    make_affine_exponent,
    make_constant_exponent,
    make_exponential_exponent,
    make_tabulated_exponent,
)
from nodetool.infinity_laplace.solvers import SolveConfig

ExperimentKind = Literal[
    "solve",
    "aux",
    "oracle1d",
    "stability-thm1",
    "stability-two-exp",
    "doubling",
    "transform-check",
    "convergence",
]

# name -> (minimum dimension, function of the (m, dim) point array)
BOUNDARY_EXPRESSIONS: dict[str, tuple[int, Callable[[np.ndarray], np.ndarray]]] = {
    "zero": (1, lambda x: np.zeros(x.shape[0])),
    "x": (1, lambda x: x[:, 0]),
    "half-x": (1, lambda x: 0.5 * x[:, 0]),
    "half-reversed": (1, lambda x: 0.5 * (1.0 - x[:, 0])),
    "abs-x": (1, lambda x: np.abs(x[:, 0] - 0.5)),
    "x+2y": (2, lambda x: x[:, 0] + 2.0 * x[:, 1]),
    "x2-y2": (2, lambda x: x[:, 0] ** 2 - x[:, 1] ** 2),
}


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    dim: Literal[1, 2] = 1
    lower: list[float] | None = Field(default=None, description="Defaults to the origin")
    upper: list[float] | None = Field(default=None, description="Defaults to all ones")
    n: int = Field(default=33, ge=3)

    def build(self, n: int | None = None) -> Grid:
        return Grid(
            dim=self.dim,
            lower=tuple(self.lower or [0.0] * self.dim),
            upper=tuple(self.upper or [1.0] * self.dim),
            n=n or self.n,
        )


class ExponentSpec(BaseModel):
    """
    ``constant`` p0; ``exponential`` p0 * exp(<delta, x>); ``affine``
    p0 + <delta, x>; ``table`` explicit nodal values and log gradients.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["constant", "exponential", "affine", "table"] = "constant"
    p0: float = Field(default=2.0, gt=0.0)
    delta: list[float] = Field(default_factory=lambda: [0.0])
    table: list[float] | None = None
    grad_table: list[list[float]] | list[float] | None = None

    @model_validator(mode="after")
    def _check_table(self) -> "ExponentSpec":
        if self.kind == "table" and (self.table is None or self.grad_table is None):
            raise ValueError("a table exponent needs both table and grad_table")
        return self

    def _vector(self, dim: int) -> np.ndarray:
        vector = np.asarray(self.delta, dtype=float)
        if vector.size == 1 and dim > 1:
            vector = np.concatenate([vector, np.zeros(dim - 1)])
        if vector.size != dim:
            raise ValueError(f"exponent delta has {vector.size} components for a {dim}D grid")
        return vector

    def with_size(self, size: float) -> "ExponentSpec":
        """Same direction, ``|delta| = size``; an all-zero direction means the first axis."""
        if self.kind in ("constant", "table"):
            raise ValueError(f"a {self.kind} exponent has no perturbation direction")
        vector = np.asarray(self.delta, dtype=float)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            vector = np.zeros(max(vector.size, 1))
            vector[0] = 1.0
            norm = 1.0
        return self.model_copy(update={"delta": [float(c) for c in size * vector / norm]})

    def build(self, grid: Grid) -> ExponentField:
        if self.kind == "constant":
            return make_constant_exponent(grid, self.p0)
        if self.kind == "exponential":
            return make_exponential_exponent(grid, self.p0, self._vector(grid.dim))
        if self.kind == "affine":
            return make_affine_exponent(grid, self.p0, self._vector(grid.dim))
        return make_tabulated_exponent(grid, self.table, self.grad_table)

    def function(self, grid: Grid) -> Callable[[np.ndarray], np.ndarray]:
        """The exponent as a function of the first coordinate (1D oracle use)."""
        if grid.dim != 1:
            raise ValueError("exponent functions are only defined in 1D")
        p0 = self.p0
        if self.kind == "constant":
            return lambda x: np.full(np.shape(x), p0)
        if self.kind == "table":
            nodes = grid.axes()[0]
            table = np.asarray(self.table, dtype=float)
            return lambda x: np.interp(x, nodes, table)
        slope = float(self._vector(1)[0])
        if self.kind == "exponential":
            return lambda x: p0 * np.exp(slope * np.asarray(x))
        return lambda x: p0 + slope * np.asarray(x)


class BoundarySpec(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    kind: Literal["values", "expression"] = "values"
    values: list[float] | None = None
    expression: str | None = Field(default=None, alias="expression-id")
    scale: float = 1.0
    offset: float = 0.0

    @model_validator(mode="after")
    def _check(self) -> "BoundarySpec":
        if self.kind == "values" and self.values is None:
            raise ValueError("boundary kind 'values' needs a values list")
        if self.kind == "expression":
            if self.expression not in BOUNDARY_EXPRESSIONS:
                raise ValueError(
                    f"unknown boundary expression {self.expression!r}; "
                    f"known: {sorted(BOUNDARY_EXPRESSIONS)}"
                )
        return self

    def build(self, grid: Grid) -> BoundaryData:
        if self.kind == "values":
            values = np.asarray(self.values, dtype=float)
            return BoundaryData.from_values(grid, self.scale * values + self.offset)
        min_dim, fn = BOUNDARY_EXPRESSIONS[self.expression or ""]
        if grid.dim < min_dim:
            raise ValueError(f"boundary expression {self.expression!r} needs a {min_dim}D grid")
        return BoundaryData.from_function(grid, lambda x: self.scale * fn(x) + self.offset)


class TransformSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    A: float = Field(default=1.5, ge=1.0)
    alpha: float | None = Field(
        default=None, gt=0.0, description="Defaults to 1 / sup of the transformed field"
    )


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    experiment: ExperimentKind
    grid: GridSpec = Field(default_factory=GridSpec)
    exponent: ExponentSpec = Field(default_factory=ExponentSpec)
    exponent2: ExponentSpec | None = None
    boundary: BoundarySpec = Field(
        default_factory=lambda: BoundarySpec(kind="values", values=[0.0, 0.5])
    )
    solver: SolveConfig = Field(default_factory=SolveConfig)
    sweep: list[float] = Field(default_factory=list, description="delta or epsilon values")
    grid_sizes: list[int] = Field(default_factory=lambda: [65, 129, 257])
    transform: TransformSpec = Field(default_factory=TransformSpec)
    doubling_j: list[float] = Field(default_factory=lambda: [1.0, 10.0, 1e2, 1e3, 1e4])
    calibration_safety: float = Field(default=2.0, ge=1.0)
    constants_file: str | None = None
    seed: int = 0
    output: str | None = None

    @field_validator("sweep")
    @classmethod
    def _check_sweep(cls, sweep: list[float]) -> list[float]:
        if any(v <= 0 for v in sweep):
            raise ValueError("sweep values must be positive")
        if any(b >= a for a, b in zip(sweep, sweep[1:])):
            raise ValueError("sweep values must be strictly decreasing")
        return sweep

    @field_validator("doubling_j")
    @classmethod
    def _check_j(cls, js: list[float]) -> list[float]:
        if not js or any(j <= 0 for j in js):
            raise ValueError("doubling_j must list positive penalties")
        if any(b <= a for a, b in zip(js, js[1:])):
            raise ValueError("doubling_j must be strictly increasing")
        return js

    @field_validator("grid_sizes")
    @classmethod
    def _check_sizes(cls, sizes: list[int]) -> list[int]:
        if any(n < 3 for n in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("grid_sizes must be increasing and at least 3")
        return sizes

    @model_validator(mode="after")
    def _check_experiment(self) -> "ExperimentConfig":
        if self.experiment == "stability-two-exp" and self.exponent2 is None:
            raise ValueError("stability-two-exp needs exponent2")
        if self.experiment in ("stability-thm1", "stability-two-exp") and not self.sweep:
            raise ValueError(f"{self.experiment} needs a sweep")
        return self

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ValueError(f"cannot read config {path}: {e}") from e
        return cls.model_validate_json(text)

    def config_hash(self) -> str:
        canonical = json.dumps(
            self.model_dump(mode="json", by_alias=True), sort_keys=True, separators=(",", ":")
        )
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]
