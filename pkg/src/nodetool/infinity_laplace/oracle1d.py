"""
Exact 1D solutions through the first integral ``|u'(x)|^p(x) = C``.

On an interval the solution of the infinity(x)-Laplace equation is monotone
with ``|u'| = C^(1/p)``. ``C`` is fixed by the boundary jump and found by
bisection; the profile is a cumulative Simpson integral.
"""

from __future__ import annotations

import logging
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.integrate import simpson
from scipy.optimize import bisect

from nodetool.infinity_laplace.domain import Grid, ScalarField
from nodetool.infinity_laplace.errors import BracketError, QuadratureError

log = logging.getLogger(__name__)

ExponentFunction = Callable[[np.ndarray], Any]

MAX_PANELS = 2**20
MAX_WIDENINGS = 200


def _vectorized(p: ExponentFunction) -> Callable[[np.ndarray], np.ndarray]:
    def wrapped(t: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.asarray(p(t), dtype=float), np.shape(t))

    return wrapped


def simpson_integral(
    fn: Callable[[np.ndarray], np.ndarray], a: float, b: float, quad_tol: float = 1e-12
) -> float:
    """Composite Simpson, doubling the panel count until successive values agree."""
    panels = 8
    x = np.linspace(a, b, panels + 1)
    previous = float(simpson(fn(x), x=x))
    while panels < MAX_PANELS:
        panels *= 2
        x = np.linspace(a, b, panels + 1)
        current = float(simpson(fn(x), x=x))
        if abs(current - previous) < quad_tol:
            return current
        previous = current
    raise QuadratureError(f"Simpson refinement on [{a}, {b}] did not reach {quad_tol:g}")


def first_integral_quadrature(
    p: ExponentFunction, a: float, b: float, C: float, quad_tol: float = 1e-12
) -> float:
    """``int_a^b C^(1/p(t)) dt``."""
    pv = _vectorized(p)
    return simpson_integral(lambda t: C ** (1.0 / pv(t)), a, b, quad_tol)


def _cumulative(
    integrand: Callable[[np.ndarray], np.ndarray], nodes: np.ndarray, quad_tol: float
) -> np.ndarray:
    """Running integral from ``nodes[0]`` to every node, one Simpson rule per interval."""
    left = nodes[:-1, None]
    width = np.diff(nodes)[:, None]
    panels = 8
    previous = None
    while panels <= MAX_PANELS:
        t = left + width * np.linspace(0.0, 1.0, panels + 1)[None, :]
        pieces = simpson(integrand(t), x=t, axis=1)
        running = np.concatenate([[0.0], np.cumsum(pieces)])
        if previous is not None and np.max(np.abs(running - previous)) < quad_tol:
            return running
        previous = running
        panels *= 2
    raise QuadratureError(f"cumulative Simpson integral did not reach {quad_tol:g}")


class FirstIntegralSolution(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    C: float
    sign: int
    nodes: np.ndarray
    values: np.ndarray
    field: ScalarField

    @field_validator("nodes", "values", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=float)
        array.setflags(write=False)
        return array


def _exponent_range(
    p: Callable[[np.ndarray], np.ndarray], a: float, b: float
) -> tuple[float, float]:
    samples = p(np.linspace(a, b, 1025))
    if not np.all(np.isfinite(samples)) or np.any(samples <= 0.0):
        raise ValueError("the exponent must be finite and positive on the interval")
    return float(np.min(samples)), float(np.max(samples))


def _stream_line_constant(
    p: Callable[[np.ndarray], np.ndarray], a: float, b: float, jump: float, quad_tol: float
) -> float:
    slope = jump / (b - a)
    if slope == 1.0:
        return 1.0
    p_min, p_max = _exponent_range(p, a, b)

    def excess(C: float) -> float:
        return first_integral_quadrature(p, a, b, C, quad_tol) - jump

    lo, hi = sorted((slope**p_min, slope**p_max))
    for _ in range(MAX_WIDENINGS):
        if excess(lo) < 0.0:
            break
        lo /= 2.0
    else:
        raise BracketError("could not bracket the stream-line constant from below")
    for _ in range(MAX_WIDENINGS):
        if excess(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise BracketError("could not bracket the stream-line constant from above")
    try:
        return float(bisect(excess, lo, hi, xtol=1e-300, rtol=1e-14, maxiter=200))
    except RuntimeError as e:
        raise BracketError(f"bisection for the stream-line constant failed: {e}") from e


def solve_first_integral(
    p: ExponentFunction,
    fa: float,
    fb: float,
    n_nodes: int,
    quad_tol: float = 1e-12,
    interval: tuple[float, float] = (0.0, 1.0),
) -> FirstIntegralSolution:
    a, b = interval
    if not a < b:
        raise ValueError(f"need a < b, got interval {interval}")
    grid = Grid(dim=1, lower=(a,), upper=(b,), n=n_nodes)
    nodes = grid.axes()[0]
    pv = _vectorized(p)
    if fa == fb:
        _exponent_range(pv, a, b)
        values = np.full(n_nodes, float(fa))
        return FirstIntegralSolution(
            C=0.0, sign=0, nodes=nodes, values=values, field=ScalarField(grid=grid, values=values)
        )

    sign = 1 if fb > fa else -1
    jump = abs(fb - fa)
    C = _stream_line_constant(pv, a, b, jump, quad_tol)
    if C == 1.0:
        running = nodes - a
    else:
        running = _cumulative(lambda t: C ** (1.0 / pv(t)), nodes, quad_tol)
    values = fa + sign * running
    values[-1] = fb
    log.debug("first integral: C = %.17g on [%g, %g]", C, a, b)
    return FirstIntegralSolution(
        C=C, sign=sign, nodes=nodes, values=values, field=ScalarField(grid=grid, values=values)
    )


def stability_1d_exact(
    p1: ExponentFunction,
    p2: ExponentFunction,
    fa: float,
    fb: float,
    samples: int,
    quad_tol: float = 1e-12,
    interval: tuple[float, float] = (0.0, 1.0),
) -> float:
    """Exact ``|u1 - u2|_inf`` on ``samples`` equispaced nodes."""
    u1 = solve_first_integral(p1, fa, fb, samples, quad_tol, interval)
    u2 = solve_first_integral(p2, fa, fb, samples, quad_tol, interval)
    return float(np.max(np.abs(u1.values - u2.values)))
