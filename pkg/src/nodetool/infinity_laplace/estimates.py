"""
Bound evaluators, epsilon selection and the doubling-of-variables probe.

The generic constants of the stability estimates are collected in
:class:`BoundParams`. Defaults are placeholders; ``infx-lab calibrate``
replaces the scale factors with values measured on a reference run.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import bisect
from scipy.spatial.distance import cdist

from nodetool.infinity_laplace.domain import ScalarField, max_excess
from nodetool.infinity_laplace.errors import BracketError
from nodetool.infinity_laplace.transform import TransformParams, g_apply

log = logging.getLogger(__name__)

MAX_BISECTION_STEPS = 200
MAX_PROBE_PAIRS = 100_000
# eps = 1 once a <= 32 * grad in choose_epsilon_thm1.
EPSILON_ONE_RATIO = 32.0


class BoundParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    C: float = Field(default=1.0, gt=0.0, description="Generic constant, C_eps = C (1 + eps)")
    a: float = Field(default=1.0, gt=0.0, description="Coefficient of the eps * diam term")
    f_sup: float = Field(default=1.0, ge=0.0, description="Sup norm of the boundary data")
    f_lip: float = Field(default=1.0, ge=0.0, description="Lipschitz constant of the boundary data")
    kappa: float = Field(default=1.0, gt=0.0, description="Sandwich exponent")
    B: float = Field(default=1.0, gt=0.0, description="Sandwich constant")
    thm1_scale: float = Field(default=1.0, gt=0.0, description="Calibrated theorem1_bound factor")
    const: float = Field(default=1.0, gt=0.0, description="Calibrated two-exponent constant")

    @classmethod
    def load(cls, path: str | Path) -> "BoundParams":
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ValueError(f"cannot read constants file {path}: {e}") from e
        return cls.model_validate_json(text)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def _bisect(fn: Callable[[float], float], lo: float, hi: float) -> float:
    try:
        return float(bisect(fn, lo, hi, xtol=1e-300, rtol=1e-14, maxiter=MAX_BISECTION_STEPS))
    except (ValueError, RuntimeError) as e:
        raise BracketError(f"bisection on [{lo}, {hi}] failed: {e}") from e


def lemma2_bound(epsilon: float, C: float, u2plus_sup: float, grad_ln_p_sup: float) -> float:
    """``C_eps^3 |u2+|^2 eps^-4 ln(C_eps / eps) |grad ln p1|`` with ``C_eps = C (1 + eps)``."""
    c_eps = C * (1.0 + epsilon)
    if not 0.0 < epsilon < c_eps:
        raise ValueError(f"need 0 < eps < C_eps, got eps={epsilon}, C_eps={c_eps}")
    return float(c_eps**3 * u2plus_sup**2 * epsilon**-4 * np.log(c_eps / epsilon) * grad_ln_p_sup)


def thm1_majorant(epsilon: float, grad: float, a: float, C: float) -> float:
    """``((C+eps)/eps)^5 ln((C+eps)/eps) grad eps + eps a``."""
    ratio = (C + epsilon) / epsilon
    return float(ratio**5 * np.log(ratio) * grad * epsilon + epsilon * a)


def choose_epsilon_thm1(grad_ln_p_sup: float, a: float, C: float) -> tuple[float, float]:
    """
    Near-optimal epsilon for :func:`thm1_majorant` and the majorant value.

    ``eps = 1`` when ``a <= 32 grad``; otherwise the root of
    ``((C+eps)/eps)^5 grad = a``.
    """
    if grad_ln_p_sup <= 0 or a <= 0 or C <= 0:
        raise ValueError("grad, a and C must be positive")
    if a <= EPSILON_ONE_RATIO * grad_ln_p_sup:
        return 1.0, thm1_majorant(1.0, grad_ln_p_sup, a, C)

    target = np.log(a / grad_ln_p_sup)

    def balance(eps: float) -> float:
        return 5.0 * np.log((C + eps) / eps) - target

    hi = 1.0
    while balance(hi) >= 0.0:
        hi *= 2.0
    lo = hi / 2.0
    while balance(lo) <= 0.0:
        lo /= 2.0
    epsilon = _bisect(balance, lo, hi)
    return epsilon, thm1_majorant(epsilon, grad_ln_p_sup, a, C)


def theorem1_bound(grad_ln_p_sup: float, params: BoundParams) -> float:
    if grad_ln_p_sup < 0:
        raise ValueError(f"grad must be nonnegative, got {grad_ln_p_sup}")
    if grad_ln_p_sup == 0:
        return 0.0
    _, value = choose_epsilon_thm1(grad_ln_p_sup, params.a, params.C)
    return params.thm1_scale * value


def theorem1_constants(params: BoundParams) -> tuple[float, float, float]:
    """
    ``(C1, C2, c)`` with ``theorem1_bound(g) <= C1 g`` on the ``eps = 1`` branch
    and ``<= C2 g^(1/5) |ln(c g)|`` on the other.
    """
    C, a = params.C, params.a
    c1 = (C + 1.0) ** 5 * np.log(C + 1.0) + EPSILON_ONE_RATIO
    c2 = 2.0 * C * a**0.8 / 5.0
    c = 1.0 / (a * np.exp(5.0))
    return params.thm1_scale * c1, params.thm1_scale * c2, c


def theorem2_bound(delta_grad: float, params: BoundParams) -> float:
    """``Const / |ln delta|^kappa``."""
    if not 0.0 < delta_grad < 1.0:
        raise ValueError(f"need 0 < delta < 1 for a positive log, got {delta_grad}")
    return float(params.const / abs(np.log(delta_grad)) ** params.kappa)


def choose_epsilon_sec5(
    delta_grad: float, grad_ln_p2_sup: float, v2_sup: float, kappa: float
) -> float:
    """
    Root in ``(0, 1]`` of ``exp(K/eps) delta = eps^(kappa+2)`` with
    ``K = (1 + grad2) v2_sup``, solved in log form.
    """
    if not 0.0 < delta_grad < 1.0:
        raise ValueError(f"need 0 < delta < 1, got {delta_grad}")
    if kappa <= 0 or grad_ln_p2_sup < 0 or v2_sup < 0:
        raise ValueError("kappa must be positive, grad and v2_sup nonnegative")
    K = (1.0 + grad_ln_p2_sup) * v2_sup
    log_delta = np.log(delta_grad)
    if K + log_delta > 0.0:
        raise BracketError(
            f"no epsilon in (0, 1] balances delta = {delta_grad:.3e} against K = {K:.3g}; "
            f"use a perturbation below exp(-K) = {np.exp(-K):.3e}"
        )
    if K == 0.0:
        return float(delta_grad ** (1.0 / (kappa + 2.0)))

    def balance(eps: float) -> float:
        return K / eps + log_delta - (kappa + 2.0) * np.log(eps)

    if balance(1.0) == 0.0:
        return 1.0
    lo = 0.5
    while balance(lo) <= 0.0:
        lo /= 2.0
    return _bisect(balance, lo, 1.0)


def lemma4_bound(
    epsilon: float, A: float, C: float, v2_sup: float, grad2_sup: float, delta_grad: float
) -> float:
    """``2 eps^-2 A C_eps^3 ln(C_eps/eps) exp((1+grad2) v2_sup / eps) delta``."""
    c_eps = C * (1.0 + epsilon)
    if not 0.0 < epsilon < c_eps:
        raise ValueError(f"need 0 < eps < C_eps, got eps={epsilon}, C_eps={c_eps}")
    return float(
        2.0
        * epsilon**-2
        * A
        * c_eps**3
        * np.log(c_eps / epsilon)
        * np.exp((1.0 + grad2_sup) * v2_sup / epsilon)
        * delta_grad
    )


def two_exponent_majorant(
    epsilon: float,
    A: float,
    C: float,
    v2_sup: float,
    grad2_sup: float,
    delta_grad: float,
    B: float,
    kappa: float,
) -> float:
    """Twice :func:`lemma4_bound` plus the sandwich width ``B eps^kappa``."""
    return 2.0 * lemma4_bound(epsilon, A, C, v2_sup, grad2_sup, delta_grad) + B * epsilon**kappa


class SplitTerms(BaseModel):
    """``u1 - u2 = (u1 - w2) + (w2 - v2) + (v2 - u2)`` measured by maxima."""

    model_config = ConfigDict(frozen=True)

    total: float
    to_transform: float
    transform_gap: float
    sandwich_gap: float
    transform_cap: float
    sandwich_cap: float

    @property
    def holds(self) -> bool:
        return self.total <= self.to_transform + self.transform_gap + self.sandwich_gap + 1e-12


def split_terms(
    u1: ScalarField,
    u2: ScalarField,
    u2plus: ScalarField,
    prm: TransformParams,
    epsilon: float,
    diam: float,
) -> SplitTerms:
    shift = float(np.min(u2plus.values))
    v2 = u2plus.shifted(-shift)
    w2 = g_apply(v2, prm).shifted(shift)
    return SplitTerms(
        total=max_excess(u1, u2),
        to_transform=max_excess(u1, w2),
        transform_gap=max_excess(w2, u2plus),
        sandwich_gap=max_excess(u2plus, u2),
        transform_cap=(prm.A - 1.0) / prm.alpha,
        sandwich_cap=epsilon * diam,
    )


def one_sided_gaps(u1: ScalarField, u2: ScalarField) -> tuple[float, float]:
    """``(max(u1 - u2), max(u2 - u1))``."""
    return max_excess(u1, u2), max_excess(u2, u1)


def fit_power_law(x: Any, y: Any) -> tuple[float, float]:
    """Least-squares ``(B, kappa)`` for ``y = B x^kappa`` on log-log data."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or x.shape != y.shape:
        raise ValueError("a power-law fit needs at least two matching samples")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("a power-law fit needs positive samples")
    slope, intercept = np.polyfit(np.log(x), np.log(y), 1)
    return float(np.exp(intercept)), float(slope)


class DoublingResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: float
    M_j: float
    x_index: int
    y_index: int
    x_j: tuple[float, ...]
    y_j: tuple[float, ...]
    sigma: float
    separation: float
    j_separation: float

    @model_validator(mode="after")
    def _check(self) -> "DoublingResult":
        if self.M_j < self.sigma:
            raise ValueError(f"M_j = {self.M_j} below sigma = {self.sigma}")
        return self


def doubling_probe(u1: ScalarField, w2: ScalarField, j: float) -> DoublingResult:
    """
    Exhaustive ``max_{x,y} u1(x) - w2(y) - (j/2)|x - y|^2`` over node pairs.

    Ties resolve to the lexicographically smallest ``(x, y)`` index pair.
    """
    if u1.grid != w2.grid:
        raise ValueError("fields live on different grids")
    if j <= 0:
        raise ValueError(f"j must be positive, got {j}")
    grid = u1.grid
    if grid.node_count**2 > MAX_PROBE_PAIRS:
        raise ValueError(
            f"{grid.node_count ** 2} node pairs exceed the probe limit of {MAX_PROBE_PAIRS}"
        )
    points = grid.points()
    squared = cdist(points, points, metric="sqeuclidean")
    objective = u1.values[:, None] - w2.values[None, :] - 0.5 * j * squared
    flat = int(np.argmax(objective))
    x_index, y_index = divmod(flat, grid.node_count)
    separation = float(np.sqrt(squared[x_index, y_index]))
    return DoublingResult(
        j=j,
        M_j=float(objective[x_index, y_index]),
        x_index=x_index,
        y_index=y_index,
        x_j=tuple(float(c) for c in points[x_index]),
        y_j=tuple(float(c) for c in points[y_index]),
        sigma=max_excess(u1, w2),
        separation=separation,
        j_separation=j * separation,
    )
