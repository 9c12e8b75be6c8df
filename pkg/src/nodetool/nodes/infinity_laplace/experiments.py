import json
from typing import Any

from pydantic import Field, ValidationError

from nodetool.infinity_laplace.config import ExperimentConfig
from nodetool.infinity_laplace.estimates import BoundParams
from nodetool.infinity_laplace.harness import run_experiment
from nodetool.workflows.base_node import BaseNode
from nodetool.workflows.processing_context import ProcessingContext


class RunExperiment(BaseNode):
    """
    Run one lab experiment from a JSON config and return its report.
    pde, experiment, stability, convergence, report

    Use cases:
    - Sweep exponent perturbations and compare against the stability bounds
    - Check first-order convergence against the exact 1D solution
    - Feed report rows into tables or charts
    """

    config_json: str = Field(
        default='{"experiment": "oracle1d"}',
        description="Experiment config as JSON",
    )
    constants_json: str = Field(
        default="",
        description="Calibrated bound constants as JSON; empty for the defaults",
    )

    @classmethod
    def get_basic_fields(cls) -> list[str]:
        return ["config_json"]

    @classmethod
    def is_cacheable(cls) -> bool:
        return True

    @staticmethod
    def _parse(
        config_json: str, constants_json: str
    ) -> tuple[ExperimentConfig, BoundParams | None]:
        try:
            cfg = ExperimentConfig.model_validate_json(config_json)
            constants = (
                BoundParams.model_validate_json(constants_json) if constants_json.strip() else None
            )
        except ValidationError as e:
            raise ValueError(f"Invalid experiment input: {e}") from e
        return cfg, constants

    async def process(self, context: ProcessingContext) -> dict[str, Any]:
        cfg, constants = self._parse(self.config_json, self.constants_json)
        report = run_experiment(cfg, constants)
        payload = json.loads(report.model_dump_json())
        payload["passed"] = report.passed
        return payload
