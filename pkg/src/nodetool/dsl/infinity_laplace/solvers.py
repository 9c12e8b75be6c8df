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
import nodetool.nodes.infinity_laplace.solvers
from nodetool.workflows.base_node import BaseNode


class SolveDirichlet(
    SingleOutputGraphNode[dict[str, Any]], GraphNode[dict[str, Any]]
):
    """

    Solve the infinity-Laplace or infinity(x)-Laplace Dirichlet problem on the unit interval or square.
    pde, infinity laplacian, variable exponent, finite differences

    Use cases:
    - Compute an absolutely minimizing Lipschitz extension of boundary data
    - Compare solutions for a constant and a variable exponent
    - Produce the gradient-constrained upper and lower solutions
    """

    Equation: typing.ClassVar[type] = (
        nodetool.nodes.infinity_laplace.solvers.SolveDirichlet.Equation
    )

    equation: nodetool.nodes.infinity_laplace.solvers.SolveDirichlet.Equation = Field(
        default=nodetool.nodes.infinity_laplace.solvers.SolveDirichlet.Equation.VARIABLE_EXPONENT,
        description="Which discrete equation to solve",
    )
    dim: int | OutputHandle[int] = connect_field(
        default=1, description="Spatial dimension"
    )
    n: int | OutputHandle[int] = connect_field(default=33, description="Nodes per axis")
    p0: float | OutputHandle[float] = connect_field(
        default=2.0, description="Exponent scale p0"
    )
    delta: list[float] | OutputHandle[list[float]] = connect_field(
        default=[1.0],
        description="Exponent perturbation, p = p0 * exp(<delta, x>)",
    )
    boundary_expression: str | OutputHandle[str] = connect_field(
        default="half-x",
        description="Named boundary expression, e.g. half-x or x+2y",
    )
    epsilon: float | OutputHandle[float] = connect_field(
        default=0.1,
        description="Gradient threshold for the upper and lower equations",
    )
    max_iterations: int | OutputHandle[int] = connect_field(
        default=500000, description="Sweep cap"
    )

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.solvers.SolveDirichlet

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()
