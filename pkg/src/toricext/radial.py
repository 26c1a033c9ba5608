"""Radial (U(n)-invariant) toric metrics through their t-potentials.

A radial symplectic potential on the polytope interior has the form

    g(x) = (1/2) * (sum_i x_i ln x_i + F(t)),    t = sum_i x_i,

so everything is driven by the profile F on an interval (t_min, t_max).  The
metric is well defined exactly where 1 + t*F''(t) > 0, and its scalar
curvature collapses to a one-variable expression

    S(t) = t^(1-n) * u''(t),    u(t) = t^(n+1) * F''(t) / (1 + t*F''(t)),

which this module evaluates either analytically (when F''' and F'''' are
supplied) or by central differences on u.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    DegenerateMetric,
    DomainViolation,
    InvalidParameters,
    NonInteriorPoint,
)
from .numdiff import STEP_SECOND, central_second, richardson_second

# 1 + t*F'' at or below this is treated as a degenerate metric: the rank-one
# inverse divides by it, and anything this small is cancellation noise anyway
DEGENERACY_TOL = 1e-14

ScalarFn = Callable[[float], float]


@dataclass(frozen=True)
class TPotential:
    """Radial profile F on (t_min, t_max), stored through its derivatives.

    Only F'' is required: affine additions to the potential never touch the
    Hessian, so F itself is kept optional and used solely by the Kahler-side
    round trips.  When d3F and d4F are present the curvature pipeline uses
    them; otherwise it falls back to finite differences.
    """

    n: int
    t_min: float
    t_max: float
    d2F: ScalarFn
    d3F: Optional[ScalarFn] = None
    d4F: Optional[ScalarFn] = None
    F: Optional[ScalarFn] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameters("n must be >= 1")
        if self.t_min < 0.0:
            raise InvalidParameters("t_min must be >= 0")
        if not self.t_max > self.t_min:
            raise InvalidParameters("need t_min < t_max")

    def has_analytic_derivatives(self) -> bool:
        return self.d3F is not None and self.d4F is not None


@dataclass(frozen=True)
class ValidityResult:
    """Outcome of sampling 1 + t*F'' on a grid."""

    passed: bool
    minimum: float
    t_at_minimum: float


def _check_interior(x: np.ndarray) -> None:
    if np.any(x <= 0.0):
        raise NonInteriorPoint(f"point {x} has a nonpositive coordinate")


def radial_hessian(x, d2F_value: float) -> np.ndarray:
    """Hessian of the radial potential at x: G_ij = (delta_ij/x_i + F'')/2.

    Positive definite exactly when 1 + t*F'' > 0 (with t = sum x).
    """
    x = np.asarray(x, dtype=float)
    _check_interior(x)
    n = x.size
    return 0.5 * np.diag(1.0 / x) + 0.5 * d2F_value * np.ones((n, n))


def radial_hessian_inverse(x, d2F_value: float) -> np.ndarray:
    """Closed-form inverse of radial_hessian via a rank-one update.

    G = (D + F'' e e^T)/2 with D = diag(1/x), so Sherman-Morrison gives
    G^{-1} = 2*(diag(x) - F'' x x^T / (1 + t*F'')).
    """
    x = np.asarray(x, dtype=float)
    _check_interior(x)
    t = float(np.sum(x))
    den = 1.0 + t * d2F_value
    if den <= DEGENERACY_TOL:
        raise DegenerateMetric(f"1 + t*F'' = {den:.3e} at t = {t}")
    return 2.0 * (np.diag(x) - d2F_value * np.outer(x, x) / den)


def _w(T: TPotential, t: float) -> float:
    """W = F''/(1 + t*F''), guarded against the degenerate locus."""
    f2 = T.d2F(t)
    den = 1.0 + t * f2
    if den <= DEGENERACY_TOL:
        raise DegenerateMetric(f"1 + t*F'' = {den:.3e} at t = {t}")
    return f2 / den


def _check_domain(T: TPotential, t: float) -> None:
    if not T.t_min < t < T.t_max:
        raise DomainViolation(
            f"t = {t} outside ({T.t_min}, {T.t_max})"
        )


def radial_scalar_curvature(
    T: TPotential,
    t: float,
    method: str = "auto",
    step: Optional[float] = None,
    use_richardson: bool = True,
) -> float:
    """Scalar curvature S(t) = t^(1-n) * u''(t) of the radial metric.

    method="analytic" differentiates u symbolically through F''..F'''' and
    requires d3F/d4F on the potential; method="fd" runs central differences
    on u with step ``step or eps^(1/4)*max(1,|t|)`` (shrunk to fit the
    domain), plus one Richardson level unless ``use_richardson`` is off.
    "auto" picks analytic when the derivatives are available.
    """
    _check_domain(T, t)
    if method == "auto":
        method = "analytic" if T.has_analytic_derivatives() else "fd"
    if method == "analytic":
        if not T.has_analytic_derivatives():
            raise InvalidParameters("analytic path requires d3F and d4F")
        return _curvature_analytic(T, t)
    if method == "fd":
        return _curvature_fd(T, t, step, use_richardson)
    raise InvalidParameters(f"unknown method {method!r}")


def _curvature_analytic(T: TPotential, t: float) -> float:
    f2 = T.d2F(t)
    f3 = T.d3F(t)
    f4 = T.d4F(t)
    den = 1.0 + t * f2
    if den <= DEGENERACY_TOL:
        raise DegenerateMetric(f"1 + t*F'' = {den:.3e} at t = {t}")
    # W = F''/den and its t-derivatives; den' = F'' + t*F'''
    dden = f2 + t * f3
    w = f2 / den
    w1 = (f3 - f2 * f2) / den**2
    w2 = ((f4 - 2.0 * f2 * f3) * den - 2.0 * (f3 - f2 * f2) * dden) / den**3
    # t^(1-n) * d^2/dt^2 [t^(n+1) W] with the power prefactors cancelled
    n = T.n
    return n * (n + 1) * w + 2.0 * (n + 1) * t * w1 + t * t * w2


def _curvature_fd(
    T: TPotential, t: float, step: Optional[float], use_richardson: bool
) -> float:
    h = step if step is not None else STEP_SECOND * max(1.0, abs(t))
    room = min(t - T.t_min, T.t_max - t)
    h = min(h, 0.5 * room)
    if h <= 16.0 * np.finfo(float).eps * max(1.0, abs(t)):
        raise DomainViolation(
            f"no room for a difference stencil at t = {t}"
        )

    def u(tau: float) -> float:
        return tau ** (T.n + 1) * _w(T, tau)

    diff = richardson_second if use_richardson else central_second
    return t ** (1 - T.n) * diff(u, t, h)


def validity_check(T: TPotential, samples: int) -> ValidityResult:
    """Evaluate 1 + t*F'' on a uniform interior grid; report the minimum."""
    if samples < 1:
        raise InvalidParameters("samples must be >= 1")
    ts = T.t_min + (T.t_max - T.t_min) * (np.arange(samples) + 1.0) / (samples + 1.0)
    values = np.array([1.0 + t * T.d2F(t) for t in ts])
    k = int(np.argmin(values))
    return ValidityResult(
        passed=bool(values[k] > 0.0),
        minimum=float(values[k]),
        t_at_minimum=float(ts[k]),
    )
