"""
The approximation of the identity ``g(t) = ln(1 + A (e^{alpha t} - 1)) / alpha``.

``g`` turns a supersolution into a strict one: for ``A > 1`` the composition
``g(v)`` has ``Lap_inf g(v) <= -mu`` wherever ``|grad v| >= eps``. This
module evaluates ``g``, its derivatives, the two margins ``mu`` and a
discrete check of the strict inequality.

The two inequalities asserted for ``g`` are

* ``0 < g(t) - t < ln(A) / alpha <= (A - 1) / alpha``
* ``(A - 1) e^{-alpha t} / A < g'(t) - 1 <= A - 1``

for ``A > 1`` and ``t > 0``.
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from nodetool.infinity_laplace.domain import ExponentField, ScalarField
from nodetool.infinity_laplace.operators import (
    infinity_laplacian_field,
    infinity_x_laplacian_field,
)

log = logging.getLogger(__name__)

# Above this value of alpha * t the shifted form avoids overflow in e^{alpha t}.
SHIFT_THRESHOLD = 30.0


class TransformParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    A: float = Field(default=1.0, ge=1.0, description="Slope of g at 0; 1 is the identity")
    alpha: float = Field(default=1.0, gt=0.0, description="Exponential rate")

    @property
    def is_identity(self) -> bool:
        return self.A == 1.0


def _check_nonnegative(t: np.ndarray) -> None:
    if np.any(t < 0.0):
        raise ValueError(
            "g is defined for nonnegative arguments; shift the field by a constant first"
        )


def g_gap(t: Any, prm: TransformParams) -> np.ndarray:
    """``g(t) - t`` in a form that stays accurate for small and large ``t``."""
    t = np.asarray(t, dtype=float)
    _check_nonnegative(t)
    if prm.is_identity:
        return np.zeros_like(t)
    return np.log1p((prm.A - 1.0) * -np.expm1(-prm.alpha * t)) / prm.alpha


def g_values(t: Any, prm: TransformParams) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    _check_nonnegative(t)
    if prm.is_identity:
        return t.copy()
    at = prm.alpha * t
    direct = np.log1p(prm.A * np.expm1(np.minimum(at, SHIFT_THRESHOLD))) / prm.alpha
    shifted = t + np.log(prm.A + (1.0 - prm.A) * np.exp(-at)) / prm.alpha
    return np.where(at > SHIFT_THRESHOLD, shifted, direct)


def g_eval(t: float, prm: TransformParams) -> float:
    return float(g_values(t, prm))


def _derivatives(t: np.ndarray, prm: TransformParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    decay = np.exp(-prm.alpha * t)
    denom = prm.A + (1.0 - prm.A) * decay
    g1 = prm.A / denom
    g1_minus_one = (prm.A - 1.0) * decay / denom
    g2 = -prm.A * prm.alpha * (prm.A - 1.0) * decay / denom**2
    return g1, g2, g1_minus_one


def g_derivatives(t: float, prm: TransformParams) -> tuple[float, float]:
    """``(g'(t), g''(t))`` in closed form."""
    t_arr = np.asarray(t, dtype=float)
    _check_nonnegative(t_arr)
    g1, g2, _ = _derivatives(t_arr, prm)
    return float(g1), float(g2)


def identity_residual(t: Any, prm: TransformParams) -> np.ndarray:
    """Relative residual of ``g''/g' = -alpha (g' - 1)``."""
    t = np.asarray(t, dtype=float)
    _check_nonnegative(t)
    g1, g2, g1_minus_one = _derivatives(t, prm)
    target = prm.alpha * g1_minus_one
    scale = np.maximum(np.abs(target), np.finfo(float).tiny)
    return np.abs(g2 / g1 + target) / scale


def inequality_violations(t: Any, prm: TransformParams) -> np.ndarray:
    """Mask of samples ``t > 0`` where either asserted inequality fails (``A > 1`` only)."""
    t = np.asarray(t, dtype=float)
    _check_nonnegative(t)
    if prm.A <= 1.0:
        raise ValueError("the strict inequalities need A > 1")
    gap = g_gap(t, prm)
    log_cap = np.log(prm.A) / prm.alpha
    linear_cap = (prm.A - 1.0) / prm.alpha
    _, _, slope_excess = _derivatives(t, prm)
    slope_floor = (prm.A - 1.0) * np.exp(-prm.alpha * t) / prm.A
    first = (gap > 0.0) & (gap < log_cap) & (log_cap <= linear_cap)
    second = (slope_floor < slope_excess) & (slope_excess <= prm.A - 1.0)
    return (t > 0.0) & ~(first & second)


def g_apply(v: ScalarField, prm: TransformParams) -> ScalarField:
    if np.any(v.values < 0.0):
        raise ValueError(
            f"g needs a nonnegative field (min {float(np.min(v.values))}); "
            "shift the field by a constant first"
        )
    return v.with_values(g_values(v.values, prm))


def _check_margin_inputs(A: float, epsilon: float) -> None:
    if A <= 1.0:
        raise ValueError(f"A must exceed 1 for a strict supersolution, got {A}")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if A > 2.0:
        log.warning("A = %g exceeds 2; the margin estimates assume A <= 2", A)


def mu_section4(
    prm: TransformParams, epsilon: float, v_sup: float, alpha_from_sup: bool = False
) -> float:
    """
    Margin ``alpha (A-1)/A e^{-alpha |v|} eps^4``.

    With ``alpha_from_sup`` the rate is fixed to ``1 / v_sup`` and the value
    becomes ``(A-1) eps^4 / (A e v_sup)``.
    """
    _check_margin_inputs(prm.A, epsilon)
    if v_sup < 0:
        raise ValueError(f"v_sup must be nonnegative, got {v_sup}")
    alpha = prm.alpha
    if alpha_from_sup:
        if v_sup == 0:
            raise ValueError("alpha = 1 / v_sup needs v_sup > 0")
        alpha = 1.0 / v_sup
    return float(alpha * (prm.A - 1.0) / prm.A * np.exp(-alpha * v_sup) * epsilon**4)


def mu_section5(
    A: float, epsilon: float, v_sup: float, grad_ln_p_sup: float
) -> tuple[float, float]:
    """
    Margin and rate for a variable exponent.

    The rate is ``alpha = (1 + |grad ln p|) / eps``; the margin is
    ``eps^3 (A-1)/A exp(-(1 + |grad ln p|) v_sup / eps)``.
    """
    _check_margin_inputs(A, epsilon)
    if v_sup < 0 or grad_ln_p_sup < 0:
        raise ValueError("v_sup and grad_ln_p_sup must be nonnegative")
    alpha = (1.0 + grad_ln_p_sup) / epsilon
    mu = epsilon**3 * (A - 1.0) / A * np.exp(-alpha * v_sup)
    return float(mu), float(alpha)


def choose_A(sigma: float, alpha: float) -> TransformParams:
    """``A`` with ``(A - 1) / alpha = sigma``."""
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    prm = TransformParams(A=1.0 + alpha * sigma, alpha=alpha)
    if prm.A > 2.0:
        log.warning("A = %g exceeds 2 for sigma = %g, alpha = %g", prm.A, sigma, alpha)
    return prm


class SupersolutionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    mu: float
    slack: float
    threshold: float
    max_value: float
    passed: bool
    violations: list[int]


def _report(values: np.ndarray, w: ScalarField, mu: float, slack: float) -> SupersolutionReport:
    threshold = -mu + slack
    interior = w.grid.interior_indices()
    bad = interior[values > threshold]
    return SupersolutionReport(
        mu=mu,
        slack=slack,
        threshold=threshold,
        max_value=float(np.max(values)),
        passed=bad.size == 0,
        violations=[int(i) for i in bad],
    )


def strict_supersolution_check(
    w: ScalarField, mu: float, slack: float = 0.0
) -> SupersolutionReport:
    """Passes iff ``Lap_inf w <= -mu + slack`` at every interior node."""
    return _report(infinity_laplacian_field(w), w, mu, slack)


def strict_supersolution_check_x(
    w: ScalarField, pfield: ExponentField, mu: float, slack: float = 0.0
) -> SupersolutionReport:
    return _report(infinity_x_laplacian_field(w, pfield), w, mu, slack)
