# This file is auto-generated by nodetool.dsl.codegen.
# Please do not edit this file manually.

# Instead, edit the node class in the source module and run the following commands to regenerate the DSL:
# nodetool package scan
# nodetool codegen

from pydantic import BaseModel, Field
import typing
from typing import Any
import nodetool.metadata.types
import nodetool.metadata.types as types
from nodetool.dsl.graph import GraphNode, SingleOutputGraphNode

import typing
from pydantic import Field
from nodetool.dsl.handles import OutputHandle, OutputsProxy, connect_field
import nodetool.nodes.infinity_laplace.bounds
from nodetool.workflows.base_node import BaseNode


class ApproximateIdentity(SingleOutputGraphNode[list[float]], GraphNode[list[float]]):
    """

    Evaluate g(t) = ln(1 + A (exp(alpha t) - 1)) / alpha on nonnegative samples.
    transform, approximation, identity
    """

    t: list[float] | OutputHandle[list[float]] = connect_field(
        default=[0.0, 0.5, 1.0], description="Nonnegative sample points"
    )
    A: float | OutputHandle[float] = connect_field(default=1.5, description="Slope at zero")
    alpha: float | OutputHandle[float] = connect_field(default=1.0, description="Rate")

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.bounds.ApproximateIdentity

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()


import typing
from pydantic import Field
from nodetool.dsl.handles import OutputHandle, OutputsProxy, connect_field
import nodetool.nodes.infinity_laplace.bounds
from nodetool.workflows.base_node import BaseNode


class ChooseEpsilonSection5(SingleOutputGraphNode[float], GraphNode[float]):
    """

    Epsilon balancing the transform error against the sandwich width for two exponents.
    pde, estimate, epsilon, bisection
    """

    delta_grad: float | OutputHandle[float] = connect_field(
        default=0.001, description="Perturbation size"
    )
    grad_ln_p2_sup: float | OutputHandle[float] = connect_field(
        default=0.0, description="Sup norm of grad ln p2"
    )
    v2_sup: float | OutputHandle[float] = connect_field(
        default=1.0, description="Sup norm of the shifted solution"
    )
    kappa: float | OutputHandle[float] = connect_field(
        default=1.0, description="Sandwich exponent"
    )

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.bounds.ChooseEpsilonSection5

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()


import typing
from pydantic import Field
from nodetool.dsl.handles import OutputHandle, OutputsProxy, connect_field
import nodetool.nodes.infinity_laplace.bounds
from nodetool.workflows.base_node import BaseNode


class FirstIntegralOracle(
    SingleOutputGraphNode[dict[str, Any]], GraphNode[dict[str, Any]]
):
    """

    Exact 1D infinity(x)-harmonic profile from |u'|^p(x) = C.
    pde, oracle, quadrature, one-dimensional

    Use cases:
    - Reference values for checking a numerical solver
    - Exact stability differences between two exponents
    """

    ExponentKind: typing.ClassVar[type] = (
        nodetool.nodes.infinity_laplace.bounds.FirstIntegralOracle.ExponentKind
    )

    kind: nodetool.nodes.infinity_laplace.bounds.FirstIntegralOracle.ExponentKind = Field(
        default=nodetool.nodes.infinity_laplace.bounds.FirstIntegralOracle.ExponentKind.AFFINE,
        description="Exponent family",
    )
    p0: float | OutputHandle[float] = connect_field(
        default=2.0, description="Exponent scale"
    )
    slope: float | OutputHandle[float] = connect_field(
        default=1.0, description="Exponent slope delta"
    )
    fa: float | OutputHandle[float] = connect_field(default=0.0, description="Value at x = 0")
    fb: float | OutputHandle[float] = connect_field(default=0.5, description="Value at x = 1")
    n: int | OutputHandle[int] = connect_field(default=33, description="Number of nodes")

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.bounds.FirstIntegralOracle

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()


import typing
from pydantic import Field
from nodetool.dsl.handles import OutputHandle, OutputsProxy, connect_field
import nodetool.nodes.infinity_laplace.bounds
from nodetool.workflows.base_node import BaseNode


class Theorem1Bound(SingleOutputGraphNode[dict[str, Any]], GraphNode[dict[str, Any]]):
    """

    Stability bound between the infinity(x)-harmonic and the infinity-harmonic solution.
    pde, estimate, stability, variable exponent

    Use cases:
    - Predict how far a perturbed exponent moves the solution
    - Pick the balancing epsilon for a given gradient of ln p
    """

    grad_ln_p_sup: float | OutputHandle[float] = connect_field(
        default=0.1, description="Sup norm of grad ln p"
    )
    C: float | OutputHandle[float] = connect_field(default=1.0, description="Generic constant")
    a: float | OutputHandle[float] = connect_field(
        default=1.0, description="Domain-size coefficient"
    )
    thm1_scale: float | OutputHandle[float] = connect_field(
        default=1.0, description="Calibrated scale factor"
    )

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.bounds.Theorem1Bound

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()


import typing
from pydantic import Field
from nodetool.dsl.handles import OutputHandle, OutputsProxy, connect_field
import nodetool.nodes.infinity_laplace.bounds
from nodetool.workflows.base_node import BaseNode


class TwoExponentBound(SingleOutputGraphNode[float], GraphNode[float]):
    """

    Logarithmic stability bound Const / |ln delta|^kappa for two variable exponents.
    pde, estimate, stability, variable exponent
    """

    delta_grad: float | OutputHandle[float] = connect_field(
        default=0.1, description="|grad ln p1 - grad ln p2| sup norm"
    )
    const: float | OutputHandle[float] = connect_field(
        default=1.0, description="Calibrated constant"
    )
    kappa: float | OutputHandle[float] = connect_field(
        default=1.0, description="Sandwich exponent"
    )

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.bounds.TwoExponentBound

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()
