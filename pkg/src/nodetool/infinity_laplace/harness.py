"""
Experiment runners behind the ``infx-lab`` subcommands.

Every runner takes a validated :class:`ExperimentConfig` and returns a
report whose ``checks`` encode the acceptance rule of that experiment.
Sweep rows are independent solves; they may run on a thread pool and are
emitted in sweep order.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

import numpy as np

from nodetool.infinity_laplace.config import ExperimentConfig
from nodetool.infinity_laplace.domain import (
    BoundaryData,
    ExponentField,
    Grid,
    ScalarField,
    grad_ln_p_gap,
    sup_difference,
)
from nodetool.infinity_laplace.errors import BracketError
from nodetool.infinity_laplace.estimates import (
    BoundParams,
    choose_epsilon_sec5,
    choose_epsilon_thm1,
    doubling_probe,
    fit_power_law,
    split_terms,
    theorem1_bound,
    theorem2_bound,
)
from nodetool.infinity_laplace.oracle1d import solve_first_integral, stability_1d_exact
from nodetool.infinity_laplace.reports import (
    ConvergenceRow,
    DoublingRow,
    OracleRow,
    Report,
    SandwichRow,
    SolutionRow,
    StabilityReport,
    StabilityRow,
    TransformRow,
)
from nodetool.infinity_laplace.solvers import (
    SolveConfig,
    SolveResult,
    solve_infinity_harmonic,
    solve_infinity_x,
    solve_sandwich,
    solve_upper,
)
from nodetool.infinity_laplace.transform import (
    TransformParams,
    g_apply,
    g_values,
    identity_residual,
    inequality_violations,
    mu_section4,
    strict_supersolution_check,
)

log = logging.getLogger(__name__)

ORACLE_AGREEMENT = 5e-3
CONVERGENCE_BAND = (1.5, 2.5)
TRANSFORM_SAMPLES = np.linspace(0.0, 10.0, 201)
RANDOM_TRANSFORM_SAMPLES = 64
TRANSFORM_BOX = [(A, alpha) for A in (1.1, 2.0) for alpha in (0.5, 1.0, 2.0)]
IDENTITY_TOLERANCE = 1e-9

T = TypeVar("T")
R = TypeVar("R")


def _map(fn: Callable[[T], R], items: Iterable[T], threads: int) -> list[R]:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _endpoints(f: BoundaryData) -> tuple[float, float]:
    if f.grid.dim != 1:
        raise ValueError("1D oracle comparisons need a 1D grid")
    return float(f.values[0]), float(f.values[-1])


def _interval(grid: Grid) -> tuple[float, float]:
    return grid.lower[0], grid.upper[0]


def _tolerance(cfg: ExperimentConfig, f: BoundaryData) -> float:
    return cfg.solver.resolved_tolerance(f)


def _fit_slope(xs: list[float], ys: list[float]) -> tuple[float | None, float | None]:
    pairs = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pairs) < 2:
        return None, None
    prefactor, slope = fit_power_law(*zip(*pairs))
    return prefactor, slope


def _strictly_decreasing(values: list[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def run_solve(cfg: ExperimentConfig) -> Report:
    grid = cfg.grid.build()
    f = cfg.boundary.build(grid)
    pfield = cfg.exponent.build(grid)
    if pfield.is_constant():
        result = solve_infinity_harmonic(grid, f, cfg.solver)
    else:
        result = solve_infinity_x(grid, f, pfield, cfg.solver)
    points = grid.points()
    rows = [
        SolutionRow(
            index=i,
            x=float(points[i, 0]),
            y=float(points[i, 1]) if grid.dim == 2 else None,
            u=float(result.field.values[i]),
        )
        for i in range(grid.node_count)
    ]
    return Report.build(
        cfg.experiment,
        cfg.config_hash(),
        SolutionRow,
        rows,
        summary={
            "iterations": result.iterations,
            "residual": result.residual,
            "final_update": result.final_update,
        },
        checks={"converged": result.converged},
    )


def run_oracle1d(cfg: ExperimentConfig) -> Report:
    grid = cfg.grid.build()
    if grid.dim != 1:
        raise ValueError("the oracle1d experiment needs a 1D grid")
    f = cfg.boundary.build(grid)
    fa, fb = _endpoints(f)
    exact = solve_first_integral(
        cfg.exponent.function(grid), fa, fb, grid.n, interval=_interval(grid)
    )
    numerical = solve_infinity_x(grid, f, cfg.exponent.build(grid), cfg.solver)
    errors = np.abs(numerical.field.values - exact.values)
    rows = [
        OracleRow(
            index=i,
            x=float(exact.nodes[i]),
            exact=float(exact.values[i]),
            numerical=float(numerical.field.values[i]),
            error=float(errors[i]),
        )
        for i in range(grid.n)
    ]
    return Report.build(
        cfg.experiment,
        cfg.config_hash(),
        OracleRow,
        rows,
        summary={
            "C": exact.C,
            "sign": exact.sign,
            "max_error": float(np.max(errors)),
            "iterations": numerical.iterations,
        },
        checks={
            "converged": numerical.converged,
            "oracle_agreement": bool(np.max(errors) <= ORACLE_AGREEMENT),
        },
    )


def _sandwich_bound(grid: Grid, f: BoundaryData, epsilon: float) -> float:
    h = float(np.max(grid.spacing))
    return epsilon * grid.diameter() + 10.0 * h * (f.lipschitz + epsilon)


def run_sandwich(cfg: ExperimentConfig, threads: int = 1) -> Report:
    """
    Lower, plain and upper solves per epsilon, plus an ``eps = 0`` control row.

    With a constant exponent the width must stay below
    ``eps diam + 10 h (L + eps)``; with a variable exponent ``(B, kappa)`` of
    ``width ~ B eps^kappa`` are fitted instead.
    """
    grid = cfg.grid.build()
    f = cfg.boundary.build(grid)
    pfield = cfg.exponent.build(grid)
    variable = not pfield.is_constant()
    epsilons = list(cfg.sweep or [cfg.solver.epsilon or 0.1]) + [0.0]
    tol = _tolerance(cfg, f)

    def row(epsilon: float) -> SandwichRow:
        solver = cfg.solver.model_copy(update={"epsilon": epsilon})
        sandwich = solve_sandwich(grid, f, solver, pfield if variable else None)
        return SandwichRow(
            epsilon=epsilon,
            width=sandwich.width(),
            bound=_sandwich_bound(grid, f, epsilon),
            ordered=sandwich.ordered(),
            lower_min=float(np.min(sandwich.lower.field.values)),
            upper_max=float(np.max(sandwich.upper.field.values)),
            iterations=sandwich.middle.iterations,
            converged=sandwich.converged,
        )

    rows = _map(row, epsilons, threads)
    sweep_rows, control = rows[:-1], rows[-1]
    checks = {
        "converged": all(r.converged for r in rows),
        "zero_epsilon_collapses": control.width <= 2.0 * tol,
        "maximum_principle": all(
            f.lo - r.bound <= r.lower_min and r.upper_max <= f.hi + r.bound for r in rows
        ),
    }
    summary: dict[str, float | int | bool | str | None] = {"variable_exponent": variable}
    if variable:
        summary["ordered"] = all(r.ordered for r in rows)
        B, kappa = _fit_slope([r.epsilon for r in sweep_rows], [r.width for r in sweep_rows])
        summary.update({"B": B, "kappa": kappa})
    else:
        checks["ordered"] = all(r.ordered for r in rows)
        checks["width_bound"] = all(r.width <= r.bound for r in rows)
    return Report.build(
        cfg.experiment, cfg.config_hash(), SandwichRow, rows, summary=summary, checks=checks
    )


def _stability_checks(
    rows: list[StabilityRow], tol: float, one_d: bool
) -> dict[str, bool]:
    sweep_rows, control = rows[:-1], rows[-1]
    checks = {
        "converged": all(r.converged for r in rows),
        "control_row": control.sup_difference <= 2.0 * tol,
        "below_bound": all(
            r.bound_value is not None and r.sup_difference <= r.bound_value for r in sweep_rows
        ),
        "decreasing": _strictly_decreasing([r.sup_difference for r in sweep_rows]),
    }
    if one_d:
        checks["oracle_agreement"] = all(
            r.oracle_difference is not None
            and abs(r.sup_difference - r.oracle_difference) <= ORACLE_AGREEMENT
            for r in rows
        )
    return checks


def _stability_report(
    cfg: ExperimentConfig, rows: list[StabilityRow], tol: float, one_d: bool
) -> StabilityReport:
    sweep_rows = rows[:-1]
    prefactor, slope = _fit_slope(
        [r.delta for r in sweep_rows], [r.sup_difference for r in sweep_rows]
    )
    return StabilityReport.build(
        cfg.experiment,
        cfg.config_hash(),
        StabilityRow,
        rows,
        summary={"rows": len(rows), "tolerance": tol},
        checks=_stability_checks(rows, tol, one_d),
        fitted_slope=slope,
        fitted_constants={"prefactor": prefactor} if prefactor is not None else {},
    )


def _thm1_exponent(cfg: ExperimentConfig, grid: Grid, delta: float) -> ExponentField:
    """``p0 exp(<delta e, x>)`` along the unit direction e of the configured exponent."""
    spec = cfg.exponent.model_copy(update={"kind": "exponential"}).with_size(delta)
    return spec.build(grid)


def run_stability_thm1(
    cfg: ExperimentConfig, constants: BoundParams | None = None, threads: int = 1
) -> StabilityReport:
    """
    ``|u_delta - v|`` with ``u_delta`` solving the variable-exponent equation for
    ``p = p0 exp(<delta, x>)`` and ``v`` infinity-harmonic with the same data.
    """
    params = constants or BoundParams()
    grid = cfg.grid.build()
    f = cfg.boundary.build(grid)
    harmonic = solve_infinity_harmonic(grid, f, cfg.solver)
    one_d = grid.dim == 1
    tol = _tolerance(cfg, f)

    def row(delta: float) -> StabilityRow:
        pfield = _thm1_exponent(cfg, grid, delta)
        result = solve_infinity_x(grid, f, pfield, cfg.solver)
        grad = pfield.sup_norm_grad_ln_p()
        oracle = None
        if one_d:
            fa, fb = _endpoints(f)
            p0, slope = cfg.exponent.p0, float(pfield.grad_ln_p[0, 0])
            oracle = stability_1d_exact(
                lambda x: p0 * np.exp(slope * x),
                lambda x: np.full(np.shape(x), p0),
                fa,
                fb,
                grid.n,
                interval=_interval(grid),
            )
        difference = sup_difference(result.field, harmonic.field)
        log.info("delta=%g: sup difference %.3e", delta, difference)
        return StabilityRow(
            delta=delta,
            delta_grad=grad,
            sup_difference=difference,
            bound_value=theorem1_bound(grad, params),
            epsilon_used=choose_epsilon_thm1(grad, params.a, params.C)[0] if grad > 0 else None,
            oracle_difference=oracle,
            iterations=result.iterations,
            converged=result.converged and harmonic.converged,
        )

    rows = _map(row, [*cfg.sweep, 0.0], threads)
    return _stability_report(cfg, rows, tol, one_d)


def run_stability_two_exp(
    cfg: ExperimentConfig, constants: BoundParams | None = None, threads: int = 1
) -> StabilityReport:
    """
    Two variable exponents ``p1`` and ``p2(delta)`` with the same boundary data.

    The bound is evaluated at ``|grad ln p1 - grad ln p2|_inf``. The
    ``delta = 0`` control row solves with ``p2 = p1``.
    """
    params = constants or BoundParams()
    exponent2 = cfg.exponent2
    assert exponent2 is not None
    grid = cfg.grid.build()
    f = cfg.boundary.build(grid)
    p1 = cfg.exponent.build(grid)
    first = solve_infinity_x(grid, f, p1, cfg.solver)
    one_d = grid.dim == 1
    tol = _tolerance(cfg, f)

    def row(delta: float) -> StabilityRow:
        spec2 = exponent2.with_size(delta) if delta > 0 else cfg.exponent
        p2 = spec2.build(grid)
        second = solve_infinity_x(grid, f, p2, cfg.solver)
        gap = grad_ln_p_gap(p1, p2)
        bound = theorem2_bound(gap, params) if 0.0 < gap < 1.0 else (0.0 if gap == 0.0 else None)
        epsilon = None
        if 0.0 < gap < 1.0:
            v2_sup = float(np.max(second.field.values) - f.lo)
            try:
                epsilon = choose_epsilon_sec5(gap, p2.sup_norm_grad_ln_p(), v2_sup, params.kappa)
            except BracketError as e:
                log.info("no epsilon for delta=%g: %s", delta, e)
        oracle = None
        if one_d:
            fa, fb = _endpoints(f)
            oracle = stability_1d_exact(
                cfg.exponent.function(grid),
                spec2.function(grid),
                fa,
                fb,
                grid.n,
                interval=_interval(grid),
            )
        return StabilityRow(
            delta=delta,
            delta_grad=gap,
            sup_difference=sup_difference(first.field, second.field),
            bound_value=bound,
            epsilon_used=epsilon,
            oracle_difference=oracle,
            iterations=second.iterations,
            converged=first.converged and second.converged,
        )

    rows = _map(row, [*cfg.sweep, 0.0], threads)
    return _stability_report(cfg, rows, tol, one_d)


def _shifted_upper(
    grid: Grid, f: BoundaryData, solver: SolveConfig
) -> tuple[SolveResult, ScalarField, float]:
    """Upper solution and its nonnegative shift ``u+ - min u+``."""
    upper = solve_upper(grid, f, solver)
    shift = float(np.min(upper.field.values))
    return upper, upper.field.shifted(-shift), shift


def _transform_samples(seed: int) -> np.ndarray:
    """The fixed sample grid plus uniform draws on the same range, seeded by the config."""
    rng = np.random.default_rng(seed)
    drawn = rng.uniform(TRANSFORM_SAMPLES[0], TRANSFORM_SAMPLES[-1], RANDOM_TRANSFORM_SAMPLES)
    return np.sort(np.concatenate([TRANSFORM_SAMPLES, drawn]))


def run_transform_check(cfg: ExperimentConfig) -> Report:
    samples = _transform_samples(cfg.seed)
    rows: list[TransformRow] = []
    for A, alpha in TRANSFORM_BOX:
        prm = TransformParams(A=A, alpha=alpha)
        residual = float(np.max(identity_residual(samples, prm)))
        rows.append(
            TransformRow(
                check="identity",
                A=A,
                alpha=alpha,
                value=residual,
                threshold=IDENTITY_TOLERANCE,
                passed=residual <= IDENTITY_TOLERANCE,
            )
        )
        violations = float(np.count_nonzero(inequality_violations(samples, prm)))
        rows.append(
            TransformRow(
                check="inequalities",
                A=A,
                alpha=alpha,
                value=violations,
                threshold=0.0,
                passed=violations == 0.0,
            )
        )
    identity = TransformParams(A=1.0, alpha=1.0)
    drift = float(np.max(np.abs(g_values(samples, identity) - samples)))
    rows.append(
        TransformRow(
            check="identity-map",
            A=1.0,
            alpha=1.0,
            value=drift,
            threshold=0.0,
            passed=drift == 0.0,
        )
    )

    epsilon = cfg.solver.epsilon
    if epsilon <= 0:
        raise ValueError("transform-check needs solver.epsilon > 0 for the strict supersolution")
    grid = cfg.grid.build()
    f = cfg.boundary.build(grid)
    upper, v, _ = _shifted_upper(grid, f, cfg.solver)
    v_sup = v.sup_norm()
    alpha = cfg.transform.alpha or 1.0 / v_sup
    prm = TransformParams(A=cfg.transform.A, alpha=alpha)
    mu = mu_section4(prm, epsilon, v_sup, alpha_from_sup=cfg.transform.alpha is None)
    strict = strict_supersolution_check(g_apply(v, prm), mu, slack=mu / 2.0)
    rows.append(
        TransformRow(
            check="strict-supersolution",
            A=prm.A,
            alpha=alpha,
            value=strict.max_value,
            threshold=strict.threshold,
            passed=strict.passed,
        )
    )
    plain = strict_supersolution_check(v, mu, slack=mu / 2.0)
    rows.append(
        TransformRow(
            check="identity-has-no-margin",
            A=1.0,
            alpha=alpha,
            value=plain.max_value,
            threshold=plain.threshold,
            passed=not plain.passed,
        )
    )
    return Report.build(
        cfg.experiment,
        cfg.config_hash(),
        TransformRow,
        rows,
        summary={
            "mu": mu,
            "v_sup": v_sup,
            "upper_iterations": upper.iterations,
            "samples": int(samples.size),
            "seed": cfg.seed,
        },
        checks={r.check + f"[A={r.A:g},alpha={r.alpha:g}]": r.passed for r in rows},
    )


def run_doubling(cfg: ExperimentConfig) -> Report:
    """
    Probe ``u1(x) - w2(y) - (j/2)|x - y|^2`` with ``u1`` the variable-exponent
    solution and ``w2 = g(u2+)`` the transformed upper solution of the
    constant-exponent problem.
    """
    grid = cfg.grid.build()
    f = cfg.boundary.build(grid)
    epsilon = cfg.solver.epsilon
    u1 = solve_infinity_x(grid, f, cfg.exponent.build(grid), cfg.solver)
    u2 = solve_infinity_harmonic(grid, f, cfg.solver)
    upper, v2, shift = _shifted_upper(grid, f, cfg.solver)
    alpha = cfg.transform.alpha or 1.0 / max(v2.sup_norm(), np.finfo(float).tiny)
    prm = TransformParams(A=cfg.transform.A, alpha=alpha)
    w2 = g_apply(v2, prm)
    u1_shifted = u1.field.shifted(-shift)
    cap = 2.0 * (f.lipschitz + epsilon)

    rows = []
    for j in cfg.doubling_j:
        probe = doubling_probe(u1_shifted, w2, j)
        rows.append(
            DoublingRow(
                j=j,
                m_j=probe.M_j,
                sigma=probe.sigma,
                x_index=probe.x_index,
                y_index=probe.y_index,
                separation=probe.separation,
                j_separation=probe.j_separation,
                above_epsilon=probe.j_separation >= epsilon,
                within_upper_bound=probe.j_separation <= cap,
            )
        )
    split = split_terms(u1.field, u2.field, upper.field, prm, epsilon, grid.diameter())
    m_values = [r.m_j for r in rows]
    separations = [r.separation for r in rows]
    # once j h exceeds 2 (L + eps) the maximizer sits on the diagonal and
    # j |x_j - y_j| = 0, so the lower bound is only checked off the diagonal
    off_diagonal = [r for r in rows if r.separation > 0.0]
    return Report.build(
        cfg.experiment,
        cfg.config_hash(),
        DoublingRow,
        rows,
        summary={
            "sigma": rows[0].sigma,
            "A": prm.A,
            "alpha": alpha,
            "split_total": split.total,
            "split_to_transform": split.to_transform,
            "split_transform_gap": split.transform_gap,
            "split_sandwich_gap": split.sandwich_gap,
            "split_transform_cap": split.transform_cap,
            "split_sandwich_cap": split.sandwich_cap,
            "off_diagonal_rows": len(off_diagonal),
        },
        checks={
            "converged": u1.converged and u2.converged and upper.converged,
            "sigma_positive": rows[0].sigma > 0.0,
            "m_j_above_sigma": all(r.m_j >= r.sigma for r in rows),
            "m_j_nonincreasing": all(b <= a for a, b in zip(m_values, m_values[1:])),
            "separation_nonincreasing": all(b <= a for a, b in zip(separations, separations[1:])),
            "above_epsilon_off_diagonal": all(r.above_epsilon for r in off_diagonal),
            "upper_bound_at_largest_j": rows[-1].within_upper_bound,
            "split_holds": split.holds,
        },
    )


def run_convergence(cfg: ExperimentConfig, threads: int = 1) -> Report:
    """Sup error against the first-integral oracle on each of ``grid_sizes``."""
    if cfg.grid.dim != 1:
        raise ValueError("the convergence study needs a 1D grid")

    def measure(n: int) -> tuple[int, float, float, SolveResult]:
        grid = cfg.grid.build(n)
        f = cfg.boundary.build(grid)
        fa, fb = _endpoints(f)
        numerical = solve_infinity_x(grid, f, cfg.exponent.build(grid), cfg.solver)
        exact = solve_first_integral(
            cfg.exponent.function(grid), fa, fb, n, interval=_interval(grid)
        )
        error = float(np.max(np.abs(numerical.field.values - exact.values)))
        return n, float(grid.spacing[0]), error, numerical

    measured = _map(measure, cfg.grid_sizes, threads)
    rows = []
    previous = None
    for n, h, error, numerical in measured:
        ratio = previous / error if previous is not None and error > 0 else None
        rows.append(
            ConvergenceRow(
                n=n,
                h=h,
                error=error,
                ratio=ratio,
                iterations=numerical.iterations,
                converged=numerical.converged,
            )
        )
        previous = error
    low, high = CONVERGENCE_BAND
    ratios = [r.ratio for r in rows[1:]]
    return Report.build(
        cfg.experiment,
        cfg.config_hash(),
        ConvergenceRow,
        rows,
        summary={"finest_error": rows[-1].error},
        checks={
            "converged": all(r.converged for r in rows),
            "first_order": bool(ratios) and all(r is not None and low <= r <= high for r in ratios),
        },
    )


def calibrate(
    configs: list[ExperimentConfig], base: BoundParams | None = None, threads: int = 1
) -> BoundParams:
    """
    Scale factors that put each calibrated bound at ``calibration_safety``
    times the difference measured at the first sweep value.

    ``aux`` configs with a variable exponent contribute the fitted sandwich
    constants ``(B, kappa)``; they are processed first so the two-exponent
    constant uses the fitted ``kappa``.
    """
    params = base or BoundParams()
    updates: dict[str, float] = {}
    ordered = sorted(configs, key=lambda c: c.experiment != "aux")
    for cfg in ordered:
        if cfg.experiment == "aux":
            summary = run_sandwich(cfg, threads).summary
            if summary.get("kappa") is None:
                raise ValueError("sandwich calibration needs a variable exponent and two epsilons")
            updates["B"] = float(summary["B"])  # type: ignore[arg-type]
            updates["kappa"] = float(summary["kappa"])  # type: ignore[arg-type]
            log.info("calibrated from aux: B=%g kappa=%g", updates["B"], updates["kappa"])
            continue
        if cfg.experiment not in ("stability-thm1", "stability-two-exp"):
            raise ValueError(f"cannot calibrate from a {cfg.experiment} config")
        head = cfg.model_copy(update={"sweep": cfg.sweep[:1]})
        grid = cfg.grid.build()
        f = cfg.boundary.build(grid)
        geometry = {"a": grid.diameter(), "f_sup": f.sup_norm(), "f_lip": f.lipschitz}
        if cfg.experiment == "stability-thm1":
            report = run_stability_thm1(head, params.model_copy(update=geometry), threads)
            row = report.rows[0]
            assert isinstance(row, StabilityRow)
            unit = params.model_copy(update={**geometry, "thm1_scale": 1.0})
            unscaled = theorem1_bound(row.delta_grad, unit)
            if row.sup_difference <= 0:
                raise ValueError("calibration difference vanished; use non-constant data")
            updates.update(geometry)
            updates["thm1_scale"] = float(cfg.calibration_safety * row.sup_difference / unscaled)
        else:
            report = run_stability_two_exp(head, params, threads)
            row = report.rows[0]
            assert isinstance(row, StabilityRow)
            if row.sup_difference <= 0 or not 0 < row.delta_grad < 1:
                raise ValueError("calibration needs a positive difference and 0 < delta < 1")
            updates["const"] = float(
                cfg.calibration_safety
                * row.sup_difference
                * abs(np.log(row.delta_grad)) ** updates.get("kappa", params.kappa)
            )
        log.info("calibrated from %s: %s", cfg.experiment, updates)
    return params.model_copy(update=updates)


def run_experiment(
    cfg: ExperimentConfig, constants: BoundParams | None = None, threads: int = 1
) -> Report:
    if constants is None and cfg.constants_file:
        constants = BoundParams.load(cfg.constants_file)
    kind = cfg.experiment
    if kind == "solve":
        return run_solve(cfg)
    if kind == "aux":
        return run_sandwich(cfg, threads)
    if kind == "oracle1d":
        return run_oracle1d(cfg)
    if kind == "stability-thm1":
        return run_stability_thm1(cfg, constants, threads)
    if kind == "stability-two-exp":
        return run_stability_two_exp(cfg, constants, threads)
    if kind == "doubling":
        return run_doubling(cfg)
    if kind == "transform-check":
        return run_transform_check(cfg)
    return run_convergence(cfg, threads)
