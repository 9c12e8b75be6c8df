from enum import Enum
from typing import Any

from pydantic import Field

from nodetool.infinity_laplace.config import BoundarySpec, ExponentSpec, GridSpec
from nodetool.infinity_laplace.solvers import (
    SolveConfig,
    SolveResult,
    solve_infinity_harmonic,
    solve_infinity_x,
    solve_lower,
    solve_upper,
)
from nodetool.workflows.base_node import BaseNode
from nodetool.workflows.processing_context import ProcessingContext


class SolveDirichlet(BaseNode):
    """
    Solve the infinity-Laplace or infinity(x)-Laplace Dirichlet problem on the unit interval or square.
    pde, infinity laplacian, variable exponent, finite differences

    Use cases:
    - Compute an absolutely minimizing Lipschitz extension of boundary data
    - Compare solutions for a constant and a variable exponent
    - Produce the gradient-constrained upper and lower solutions
    """

    class Equation(str, Enum):
        HARMONIC = "harmonic"
        VARIABLE_EXPONENT = "variable_exponent"
        UPPER = "upper"
        LOWER = "lower"

    equation: Equation = Field(
        default=Equation.VARIABLE_EXPONENT,
        description="Which discrete equation to solve",
    )
    dim: int = Field(default=1, ge=1, le=2, description="Spatial dimension")
    n: int = Field(default=33, ge=3, description="Nodes per axis")
    p0: float = Field(default=2.0, gt=0.0, description="Exponent scale p0")
    delta: list[float] = Field(
        default_factory=lambda: [1.0],
        description="Exponent perturbation, p = p0 * exp(<delta, x>)",
    )
    boundary_expression: str = Field(
        default="half-x",
        description="Named boundary expression, e.g. half-x or x+2y",
    )
    epsilon: float = Field(
        default=0.1,
        ge=0.0,
        description="Gradient threshold for the upper and lower equations",
    )
    max_iterations: int = Field(default=500_000, ge=1, description="Sweep cap")

    @classmethod
    def get_basic_fields(cls) -> list[str]:
        return ["equation", "n", "p0", "delta", "boundary_expression"]

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    @staticmethod
    def _summarize(result: SolveResult) -> dict[str, Any]:
        return {
            "values": result.field.values.tolist(),
            "points": result.field.grid.points().tolist(),
            "iterations": result.iterations,
            "residual": result.residual,
            "converged": result.converged,
        }

    def _run(self) -> SolveResult:
        grid = GridSpec(dim=self.dim, n=self.n).build()
        f = BoundarySpec(kind="expression", expression=self.boundary_expression).build(grid)
        cfg = SolveConfig(epsilon=self.epsilon, max_iterations=self.max_iterations)
        if self.equation == self.Equation.UPPER:
            return solve_upper(grid, f, cfg)
        if self.equation == self.Equation.LOWER:
            return solve_lower(grid, f, cfg)
        if self.equation == self.Equation.HARMONIC:
            return solve_infinity_harmonic(grid, f, cfg)
        pfield = ExponentSpec(kind="exponential", p0=self.p0, delta=self.delta).build(grid)
        return solve_infinity_x(grid, f, pfield, cfg)

    async def process(self, context: ProcessingContext) -> dict[str, Any]:
        try:
            result = self._run()
        except ValueError as e:
            raise ValueError(f"Invalid solver input: {e}") from e
        if not result.converged:
            raise RuntimeError(
                f"Solver did not converge within {self.max_iterations} sweeps"
            )
        return self._summarize(result)
