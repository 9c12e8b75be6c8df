"""
Report rows and their CSV / JSON emission.

Column order is the field order of each row model, followed by
``config_hash``. Floats are written with 17 significant digits so a rerun
with the same config produces byte-identical files.
"""

from __future__ import annotations

import csv
import json
from typing import Any, TextIO

from pydantic import BaseModel, ConfigDict, Field, SerializeAsAny


class SolutionRow(BaseModel):
    index: int
    x: float
    y: float | None
    u: float


class OracleRow(BaseModel):
    index: int
    x: float
    exact: float
    numerical: float
    error: float


class StabilityRow(BaseModel):
    delta: float
    delta_grad: float
    sup_difference: float
    bound_value: float | None
    epsilon_used: float | None
    oracle_difference: float | None
    iterations: int
    converged: bool


class SandwichRow(BaseModel):
    epsilon: float
    width: float
    bound: float
    ordered: bool
    lower_min: float
    upper_max: float
    iterations: int
    converged: bool


class DoublingRow(BaseModel):
    j: float
    m_j: float
    sigma: float
    x_index: int
    y_index: int
    separation: float
    j_separation: float
    above_epsilon: bool
    within_upper_bound: bool


class TransformRow(BaseModel):
    check: str
    A: float
    alpha: float
    value: float
    threshold: float
    passed: bool


class ConvergenceRow(BaseModel):
    n: int
    h: float
    error: float
    ratio: float | None
    iterations: int
    converged: bool


class Report(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    experiment: str
    config_hash: str
    columns: list[str]
    rows: list[SerializeAsAny[BaseModel]] = Field(default_factory=list)
    summary: dict[str, float | int | bool | str | None] = Field(default_factory=dict)
    checks: dict[str, bool] = Field(default_factory=dict)

    @classmethod
    def build(
        cls,
        experiment: str,
        config_hash: str,
        row_type: type[BaseModel],
        rows: list[Any],
        **extra: Any,
    ) -> "Report":
        return cls(
            experiment=experiment,
            config_hash=config_hash,
            columns=list(row_type.model_fields),
            rows=rows,
            **extra,
        )

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class StabilityReport(Report):
    fitted_slope: float | None = None
    fitted_constants: dict[str, float] = Field(default_factory=dict)


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(report: Report, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([*report.columns, "config_hash"])
    for row in report.rows:
        data = row.model_dump()
        writer.writerow([*(format_value(data[c]) for c in report.columns), report.config_hash])


def write_json(report: Report, stream: TextIO) -> None:
    payload = report.model_dump(mode="json")
    payload["passed"] = report.passed
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")
