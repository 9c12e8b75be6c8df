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
import nodetool.nodes.infinity_laplace.experiments
from nodetool.workflows.base_node import BaseNode


class RunExperiment(
    SingleOutputGraphNode[dict[str, Any]], GraphNode[dict[str, Any]]
):
    """

    Run one lab experiment from a JSON config and return its report.
    pde, experiment, stability, convergence, report

    Use cases:
    - Sweep exponent perturbations and compare against the stability bounds
    - Check first-order convergence against the exact 1D solution
    - Feed report rows into tables or charts
    """

    config_json: str | OutputHandle[str] = connect_field(
        default='{"experiment": "oracle1d"}', description="Experiment config as JSON"
    )
    constants_json: str | OutputHandle[str] = connect_field(
        default="",
        description="Calibrated bound constants as JSON; empty for the defaults",
    )

    @classmethod
    def get_node_class(cls) -> type[BaseNode]:
        return nodetool.nodes.infinity_laplace.experiments.RunExperiment

    @classmethod
    def get_node_type(cls):
        return cls.get_node_class().get_node_type()
