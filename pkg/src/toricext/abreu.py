"""Scalar curvature of a general toric metric from its symplectic potential.

The curvature of the metric defined by a potential g with Hessian G is

    S(x) = -(1/2) * sum_ij  d^2 G^{ij} / dx_i dx_j,

with G^{ij} the entries of the inverse Hessian.  Here the inner layer
(Hessian, then dense inversion) is exact up to rounding whenever an analytic
Hessian oracle is available, and the outer second derivatives are always
central finite differences on the polytope interior.  Extremality of a metric
means S is affine in x; ``extremality_residual`` measures the distance to
that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DegeneratePointSet,
    InvalidParameters,
    NonInteriorPoint,
    SingularHessian,
    StencilExitsDomain,
)
from .numdiff import STEP_SECOND
from .polytope import MomentPolytope, interior_distance
from .radial import TPotential, radial_hessian

# dense direct inversion is plenty for the sizes this family produces;
# refuse anything bigger so a misuse fails loudly instead of slowly
MAX_DIMENSION = 16


@dataclass(frozen=True)
class SymplecticPotential:
    """A potential on a polytope, exposed through its Hessian oracle."""

    polytope: MomentPolytope
    hessian_oracle: Callable[[np.ndarray], np.ndarray]

    @classmethod
    def from_radial(cls, polytope: MomentPolytope, T: TPotential) -> "SymplecticPotential":
        """Analytic Hessian of the radial potential with profile T."""

        def oracle(x: np.ndarray) -> np.ndarray:
            t = float(np.sum(x))
            return radial_hessian(x, T.d2F(t))

        return cls(polytope=polytope, hessian_oracle=oracle)

    @classmethod
    def from_value_oracle(
        cls,
        polytope: MomentPolytope,
        g: Callable[[np.ndarray], float],
        h: float,
    ) -> "SymplecticPotential":
        """Finite-difference Hessian over a value oracle with inner step h."""

        def oracle(x: np.ndarray) -> np.ndarray:
            return numeric_hessian(g, x, h, polytope=polytope)

        return cls(polytope=polytope, hessian_oracle=oracle)


@dataclass(frozen=True)
class ScalarCurvatureSample:
    x: tuple
    S: float


@dataclass(frozen=True)
class AffineFit:
    """Least-squares affine model S(x) ~ <gradient, x> + constant."""

    gradient: tuple
    constant: float
    max_residual: float
    samples: tuple


def _max_normal_entry(P: MomentPolytope) -> float:
    return max(max(abs(v) for v in f.normal) for f in P.facets)


def numeric_hessian(
    value_oracle: Callable[[np.ndarray], float],
    x,
    h: float,
    polytope: Optional[MomentPolytope] = None,
) -> np.ndarray:
    """Symmetric FD Hessian: central diagonal stencils, 4-point cross mixed.

    When a polytope is supplied, refuses stencils whose corners could leave
    the interior (worst-case facet-value drop is 2h per unit normal entry).
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if polytope is not None:
        reach = 2.0 * h * _max_normal_entry(polytope)
        if interior_distance(polytope, x) < reach:
            raise StencilExitsDomain(
                f"inner stencil (reach {reach:.3e}) exits the domain at {x}"
            )

    H = np.empty((n, n))
    g0 = value_oracle(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        H[i, i] = (value_oracle(x + ei) - 2.0 * g0 + value_oracle(x - ei)) / (h * h)
    for i in range(n):
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h
            ej[j] = h
            mixed = (
                value_oracle(x + ei + ej)
                - value_oracle(x + ei - ej)
                - value_oracle(x - ei + ej)
                + value_oracle(x - ei - ej)
            ) / (4.0 * h * h)
            H[i, j] = mixed
            H[j, i] = mixed
    return H


def _inverse_hessian(P: SymplecticPotential, x: np.ndarray) -> np.ndarray:
    H = P.hessian_oracle(x)
    try:
        return np.linalg.inv(H)
    except np.linalg.LinAlgError as exc:
        raise SingularHessian(f"Hessian not invertible at {x}") from exc


def abreu_scalar_curvature(
    P: SymplecticPotential, x, h: Optional[float] = None
) -> float:
    """S(x) = -(1/2) sum_ij d^2 G^{ij}/dx_i dx_j by central differences.

    Default step: eps^(1/4)*max(1, |x|_inf), clamped to a third of the
    distance to the nearest facet and to 1e-3 outright.  The clamp keeps the
    stencil interior; the floor-free scale keeps rounding noise (which grows
    like 1/h^2 through the inversion) from swamping the estimate near the
    boundary.
    """
    x = np.asarray(x, dtype=float)
    n = P.polytope.dimension
    if n > MAX_DIMENSION:
        raise InvalidParameters(
            f"dense inversion limited to n <= {MAX_DIMENSION}, got {n}"
        )
    if x.shape != (n,):
        raise InvalidParameters(f"point shape {x.shape} != ({n},)")

    dmin = interior_distance(P.polytope, x)
    if dmin <= 0.0:
        raise NonInteriorPoint(f"{x} is not interior (min facet value {dmin})")
    if h is None:
        h = min(STEP_SECOND * max(1.0, float(np.max(np.abs(x)))), dmin / 3.0, 1e-3)
    if dmin < 3.0 * h * _max_normal_entry(P.polytope):
        raise StencilExitsDomain(
            f"outer stencil with step {h:.3e} exits the domain at {x}"
        )

    center = _inverse_hessian(P, x)
    total = 0.0
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        plus = _inverse_hessian(P, x + ei)
        minus = _inverse_hessian(P, x - ei)
        total += (plus[i, i] - 2.0 * center[i, i] + minus[i, i]) / (h * h)
    for i in range(n):
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h
            ej[j] = h
            mixed = (
                _inverse_hessian(P, x + ei + ej)[i, j]
                - _inverse_hessian(P, x + ei - ej)[i, j]
                - _inverse_hessian(P, x - ei + ej)[i, j]
                + _inverse_hessian(P, x - ei - ej)[i, j]
            ) / (4.0 * h * h)
            total += 2.0 * mixed  # (i,j) and (j,i) contribute equally
    return float(-0.5 * total)


def extremality_residual(
    P: SymplecticPotential,
    points: Sequence,
    h: Optional[float] = None,
) -> AffineFit:
    """Fit S(x) by an affine function over the points; report the worst miss.

    Ordinary least squares on the column-scaled design [X | 1]; needs at
    least n+1 affinely independent points.
    """
    pts = np.asarray(points, dtype=float)
    n = P.polytope.dimension
    if pts.ndim != 2 or pts.shape[1] != n:
        raise InvalidParameters(f"points must be (m, {n}), got {pts.shape}")
    m = pts.shape[0]
    if m < n + 1:
        raise DegeneratePointSet(f"need >= {n + 1} points, got {m}")

    S = np.array([abreu_scalar_curvature(P, x, h) for x in pts])
    design = np.hstack([pts, np.ones((m, 1))])
    col_scale = np.max(np.abs(design), axis=0)
    col_scale[col_scale == 0.0] = 1.0
    coef, _, rank, _ = np.linalg.lstsq(design / col_scale, S, rcond=None)
    if rank < n + 1:
        raise DegeneratePointSet(
            f"affine fit underdetermined: design rank {rank} < {n + 1}"
        )
    coef = coef / col_scale
    predicted = design @ coef
    samples = tuple(
        ScalarCurvatureSample(x=tuple(float(v) for v in x), S=float(s))
        for x, s in zip(pts, S)
    )
    return AffineFit(
        gradient=tuple(float(v) for v in coef[:n]),
        constant=float(coef[n]),
        max_residual=float(np.max(np.abs(S - predicted))),
        samples=samples,
    )
