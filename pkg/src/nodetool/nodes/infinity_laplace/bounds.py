from enum import Enum
from typing import Any

from pydantic import Field

from nodetool.infinity_laplace.config import ExponentSpec, GridSpec
from nodetool.infinity_laplace.errors import BracketError, QuadratureError
from nodetool.infinity_laplace.estimates import (
    BoundParams,
    choose_epsilon_sec5,
    choose_epsilon_thm1,
    theorem1_bound,
    theorem2_bound,
)
from nodetool.infinity_laplace.oracle1d import solve_first_integral
from nodetool.infinity_laplace.transform import TransformParams, g_values
from nodetool.workflows.base_node import BaseNode
from nodetool.workflows.processing_context import ProcessingContext


class Theorem1Bound(BaseNode):
    """
    Stability bound between the infinity(x)-harmonic and the infinity-harmonic solution.
    pde, estimate, stability, variable exponent

    Use cases:
    - Predict how far a perturbed exponent moves the solution
    - Pick the balancing epsilon for a given gradient of ln p
    """

    grad_ln_p_sup: float = Field(default=0.1, ge=0.0, description="Sup norm of grad ln p")
    C: float = Field(default=1.0, gt=0.0, description="Generic constant")
    a: float = Field(default=1.0, gt=0.0, description="Domain-size coefficient")
    thm1_scale: float = Field(default=1.0, gt=0.0, description="Calibrated scale factor")

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    async def process(self, context: ProcessingContext) -> dict[str, Any]:
        params = BoundParams(C=self.C, a=self.a, thm1_scale=self.thm1_scale)
        if self.grad_ln_p_sup == 0:
            return {"epsilon": None, "bound": 0.0}
        epsilon, _ = choose_epsilon_thm1(self.grad_ln_p_sup, self.a, self.C)
        return {"epsilon": epsilon, "bound": theorem1_bound(self.grad_ln_p_sup, params)}


class TwoExponentBound(BaseNode):
    """
    Logarithmic stability bound Const / |ln delta|^kappa for two variable exponents.
    pde, estimate, stability, variable exponent
    """

    delta_grad: float = Field(
        default=0.1, gt=0.0, lt=1.0, description="|grad ln p1 - grad ln p2| sup norm"
    )
    const: float = Field(default=1.0, gt=0.0, description="Calibrated constant")
    kappa: float = Field(default=1.0, gt=0.0, description="Sandwich exponent")

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    async def process(self, context: ProcessingContext) -> float:
        return theorem2_bound(self.delta_grad, BoundParams(const=self.const, kappa=self.kappa))


class ChooseEpsilonSection5(BaseNode):
    """
    Epsilon balancing the transform error against the sandwich width for two exponents.
    pde, estimate, epsilon, bisection
    """

    delta_grad: float = Field(default=1e-3, gt=0.0, lt=1.0, description="Perturbation size")
    grad_ln_p2_sup: float = Field(default=0.0, ge=0.0, description="Sup norm of grad ln p2")
    v2_sup: float = Field(default=1.0, ge=0.0, description="Sup norm of the shifted solution")
    kappa: float = Field(default=1.0, gt=0.0, description="Sandwich exponent")

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    async def process(self, context: ProcessingContext) -> float:
        try:
            return choose_epsilon_sec5(
                self.delta_grad, self.grad_ln_p2_sup, self.v2_sup, self.kappa
            )
        except BracketError as e:
            raise RuntimeError(f"No balancing epsilon: {e}") from e


class ApproximateIdentity(BaseNode):
    """
    Evaluate g(t) = ln(1 + A (exp(alpha t) - 1)) / alpha on nonnegative samples.
    transform, approximation, identity
    """

    t: list[float] = Field(
        default_factory=lambda: [0.0, 0.5, 1.0], description="Nonnegative sample points"
    )
    A: float = Field(default=1.5, ge=1.0, description="Slope at zero")
    alpha: float = Field(default=1.0, gt=0.0, description="Rate")

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    async def process(self, context: ProcessingContext) -> list[float]:
        return g_values(self.t, TransformParams(A=self.A, alpha=self.alpha)).tolist()


class FirstIntegralOracle(BaseNode):
    """
    Exact 1D infinity(x)-harmonic profile from |u'|^p(x) = C.
    pde, oracle, quadrature, one-dimensional

    Use cases:
    - Reference values for checking a numerical solver
    - Exact stability differences between two exponents
    """

    class ExponentKind(str, Enum):
        CONSTANT = "constant"
        EXPONENTIAL = "exponential"
        AFFINE = "affine"

    kind: ExponentKind = Field(default=ExponentKind.AFFINE, description="Exponent family")
    p0: float = Field(default=2.0, gt=0.0, description="Exponent scale")
    slope: float = Field(default=1.0, description="Exponent slope delta")
    fa: float = Field(default=0.0, description="Value at x = 0")
    fb: float = Field(default=0.5, description="Value at x = 1")
    n: int = Field(default=33, ge=3, description="Number of nodes")

    @classmethod
    def get_basic_fields(cls) -> list[str]:
        return ["kind", "p0", "slope", "fa", "fb"]

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    async def process(self, context: ProcessingContext) -> dict[str, Any]:
        grid = GridSpec(dim=1, n=self.n).build()
        spec = ExponentSpec(kind=self.kind.value, p0=self.p0, delta=[self.slope])
        try:
            solution = solve_first_integral(spec.function(grid), self.fa, self.fb, self.n)
        except (BracketError, QuadratureError) as e:
            raise RuntimeError(f"First-integral oracle failed: {e}") from e
        return {
            "C": solution.C,
            "x": solution.nodes.tolist(),
            "u": solution.values.tolist(),
        }
