"""
``infx-lab``: run experiments from JSON configs and write CSV or JSON reports.

Exit codes: 0 when every check passes, 1 on invalid input or a numerical
failure, 2 when the experiment ran but a check failed.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Callable, TextIO

import click
from pydantic import ValidationError

from nodetool.infinity_laplace.config import ExperimentConfig
from nodetool.infinity_laplace.estimates import BoundParams
from nodetool.infinity_laplace.harness import calibrate, run_experiment
from nodetool.infinity_laplace.reports import Report, write_csv, write_json

log = logging.getLogger(__name__)

CHECK_FAILED = 2

WRITERS: dict[str, Callable[[Report, TextIO], None]] = {"csv": write_csv, "json": write_json}


def _load_config(path: str) -> ExperimentConfig:
    try:
        return ExperimentConfig.load(path)
    except ValidationError as e:
        raise click.ClickException(f"invalid config {path}:\n{e}") from e
    except ValueError as e:
        raise click.ClickException(str(e)) from e


def _load_constants(path: str | None) -> BoundParams | None:
    if path is None:
        return None
    try:
        return BoundParams.load(path)
    except ValidationError as e:
        raise click.ClickException(f"invalid constants file {path}:\n{e}") from e
    except ValueError as e:
        raise click.ClickException(str(e)) from e


def _emit(report: Report, out: str | None, fmt: str) -> None:
    writer = WRITERS[fmt]
    if out is None:
        writer(report, sys.stdout)
        return
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as stream:
        writer(report, stream)
    log.info("wrote %s report to %s", report.experiment, out)


def _experiment_command(name: str, help_text: str) -> click.Command:
    @click.command(name=name, help=help_text)
    @click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False))
    @click.option("--out", type=click.Path(dir_okay=False), default=None, help="Defaults to stdout")
    @click.option("--format", "fmt", type=click.Choice(sorted(WRITERS)), default="csv")
    @click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)
    @click.option("--constants", type=click.Path(dir_okay=False), default=None)
    def command(
        config_path: str, out: str | None, fmt: str, threads: int, constants: str | None
    ) -> None:
        cfg = _load_config(config_path)
        if cfg.experiment != name:
            raise click.ClickException(
                f"config {config_path} describes a {cfg.experiment!r} experiment, not {name!r}"
            )
        try:
            report = run_experiment(cfg, _load_constants(constants), threads=threads)
        except (ValueError, RuntimeError) as e:
            raise click.ClickException(f"{name} failed: {e}") from e
        _emit(report, out or cfg.output, fmt)
        failed = [check for check, ok in report.checks.items() if not ok]
        if failed:
            log.error("%s: failed checks %s", name, ", ".join(failed))
            sys.exit(CHECK_FAILED)

    return command


EXPERIMENTS = {
    "solve": "Solve one Dirichlet problem and list the nodal values.",
    "aux": "Sandwich the solution between the lower and upper gradient-constrained solutions.",
    "oracle1d": "Compare the 1D solver against the first-integral solution.",
    "stability-thm1": "Perturb a constant exponent and compare with the infinity-harmonic one.",
    "stability-two-exp": "Compare the solutions for two variable exponents.",
    "doubling": "Probe the doubling-of-variables maxima against a transformed upper solution.",
    "transform-check": "Check the approximate-identity transform and its strict supersolution.",
    "convergence": "Measure the 1D error against the oracle under grid refinement.",
}


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
)
def cli(log_level: str) -> None:
    """Numerical lab for the infinity(x)-Laplace equation."""
    logging.basicConfig(
        level=log_level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


for _name, _help in EXPERIMENTS.items():
    cli.add_command(_experiment_command(_name, _help))


@cli.command(name="calibrate")
@click.option(
    "--config",
    "config_paths",
    required=True,
    multiple=True,
    type=click.Path(dir_okay=False),
    help="stability-thm1 or stability-two-exp configs; repeatable",
)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--constants", type=click.Path(dir_okay=False), default=None, help="Starting values")
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)
def calibrate_command(
    config_paths: tuple[str, ...], out: str, constants: str | None, threads: int
) -> None:
    """Fit the bound scale factors to measured differences and save them."""
    configs = [_load_config(path) for path in config_paths]
    try:
        params = calibrate(configs, _load_constants(constants), threads=threads)
    except (ValueError, RuntimeError) as e:
        raise click.ClickException(f"calibration failed: {e}") from e
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    params.save(out)
    click.echo(params.to_json(), nl=False)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
