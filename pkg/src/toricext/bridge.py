"""Legendre bridge between Kahler potentials f(s) and t-potentials F(t).

For a U(n)-invariant metric with Kahler potential f(s) the moment coordinate
and the symplectic-side profile are

    t = 2*s*f'(s),        F(t) = t*ln(s(t)/t) - 2*f(s(t)),

and with s~ = ln s the curvature has Calabi's one-variable form.  Writing
t(s~) for the moment coordinate and t'(s~) for its s~-derivative (both must
be positive),

    v(s~) = n*s~ - (n-1)*ln t(s~) - ln t'(s~),
    S = (n-1)*v'(s~)/t(s~) + v''(s~)/t'(s~),

which this module evaluates as a third, symplectic-free curvature oracle.
The flat and Fubini-Study model potentials are built in as named presets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DomainViolation,
    NonpositiveDerivative,
    NotInvertible,
    OutOfRange,
)
from .numdiff import EPS, STEP_FIRST, richardson_first, richardson_second
from .radial import TPotential, radial_scalar_curvature

# base step (in s~) for the v and t' difference stencils: these functions are
# smooth on logarithmic scale, so a fat step plus one Richardson level beats
# a rounding-limited fine step by several digits
_LOG_STEP = 2.0**-6

_MAX_BRACKET_DOUBLINGS = 200


@dataclass(frozen=True)
class KahlerPotential:
    """Radial Kahler potential f(s) on s > 0, with optional derivatives."""

    n: int
    f: Callable[[float], float]
    df: Optional[Callable[[float], float]] = None
    d2f: Optional[Callable[[float], float]] = None
    label: str = ""


def flat_potential(n: int) -> KahlerPotential:
    """f = s/2: the flat model (t = s, F'' = 0)."""
    return KahlerPotential(
        n=n, f=lambda s: 0.5 * s, df=lambda s: 0.5, d2f=lambda s: 0.0, label="flat"
    )


def fubini_study_potential(n: int) -> KahlerPotential:
    """f = ln(1+s)/2: Fubini-Study type (t = s/(1+s), S = n(n+1))."""
    return KahlerPotential(
        n=n,
        f=lambda s: 0.5 * math.log1p(s),
        df=lambda s: 0.5 / (1.0 + s),
        d2f=lambda s: -0.5 / (1.0 + s) ** 2,
        label="fubini-study",
    )


PRESETS: dict[str, Callable[[int], KahlerPotential]] = {
    "flat": flat_potential,
    "fubini-study": fubini_study_potential,
}


def _df(K: KahlerPotential, s: float) -> float:
    if K.df is not None:
        return K.df(s)
    h = STEP_FIRST * max(1.0, abs(s))
    h = min(h, 0.5 * s)  # keep the stencil on s > 0
    return richardson_first(K.f, s, h)


def _d2f(K: KahlerPotential, s: float) -> float:
    if K.d2f is not None:
        return K.d2f(s)
    h = EPS**0.25 * max(1.0, abs(s))
    h = min(h, 0.5 * s)
    return richardson_second(K.f, s, h)


def t_of_s(K: KahlerPotential, s: float) -> float:
    """Moment coordinate t = 2*s*f'(s)."""
    if not s > 0.0:
        raise DomainViolation(f"s must be positive, got {s}")
    return 2.0 * s * _df(K, s)


def _moment_rate(K: KahlerPotential, s: float) -> float:
    """dt/ds~ = 2*(s*f' + s^2*f''), the s~-derivative of the moment map."""
    return 2.0 * (s * _df(K, s) + s * s * _d2f(K, s))


def s_of_t(K: KahlerPotential, t: float) -> float:
    """Invert the moment map: the s > 0 with 2*s*f'(s) = t.

    Brackets by geometric expansion from the initial guess s = t, then runs
    a bracketed hybrid root-find to ~4 ulp relative.  Raises out-of-range
    when the expansion cannot straddle t, not-invertible when the moment map
    is not increasing on the bracket.
    """
    if not t > 0.0:
        raise OutOfRange(f"t must be positive, got {t}")

    def residual(s: float) -> float:
        return t_of_s(K, s) - t

    lo = hi = float(t)
    r0 = residual(lo)
    if r0 == 0.0:
        return lo
    if r0 < 0.0:
        for _ in range(_MAX_BRACKET_DOUBLINGS):
            hi *= 2.0
            if residual(hi) >= 0.0:
                break
        else:
            raise OutOfRange(f"t = {t} not reached by the moment map")
        lo = hi / 2.0
    else:
        for _ in range(_MAX_BRACKET_DOUBLINGS):
            lo *= 0.5
            if residual(lo) <= 0.0:
                break
        else:
            raise OutOfRange(f"t = {t} below the image of the moment map")
        hi = lo * 2.0

    for end in (lo, hi):
        if _moment_rate(K, end) / end <= 0.0:  # dt/ds = (dt/ds~)/s
            raise NotInvertible(
                f"moment map not increasing at s = {end}; bracket invalid"
            )
    root = float(brentq(residual, lo, hi, xtol=1e-300, rtol=4.0 * EPS))
    if abs(residual(root)) > 1e-12 * max(1.0, abs(t)):
        raise NotInvertible(f"root finding stalled inverting t = {t}")
    return root


def F_of_t(K: KahlerPotential, t: float) -> float:
    """t-potential value F(t) = t*ln(s(t)/t) - 2*f(s(t))."""
    s = s_of_t(K, t)
    return t * math.log(s / t) - 2.0 * K.f(s)


def _v(K: KahlerPotential, st: float) -> float:
    s = math.exp(st)
    u1 = t_of_s(K, s)
    u2 = _moment_rate(K, s)
    if u1 <= 0.0 or u2 <= 0.0:
        raise NonpositiveDerivative(
            f"moment data not positive at s~ = {st}: t = {u1}, dt/ds~ = {u2}"
        )
    return K.n * st - (K.n - 1) * math.log(u1) - math.log(u2)


def calabi_scalar_curvature(K: KahlerPotential, s: float) -> float:
    """Curvature from the Kahler side: S = (n-1)*v'/t + v''/t'.

    v', v'' are Richardson-extrapolated central differences in s~ = ln s.
    """
    if not s > 0.0:
        raise DomainViolation(f"s must be positive, got {s}")
    st = math.log(s)
    h = _LOG_STEP * max(1.0, abs(st))
    v1 = richardson_first(lambda z: _v(K, z), st, h)
    v2 = richardson_second(lambda z: _v(K, z), st, h)
    u1 = t_of_s(K, s)
    u2 = _moment_rate(K, s)
    if u1 <= 0.0 or u2 <= 0.0:
        raise NonpositiveDerivative(
            f"moment data not positive at s = {s}: t = {u1}, dt/ds~ = {u2}"
        )
    return (K.n - 1) * v1 / u1 + v2 / u2


def induced_t_potential(
    K: KahlerPotential, t_min: float, t_max: float
) -> TPotential:
    """The TPotential the bridge induces on (t_min, t_max).

    F'' comes from the exact Legendre relation F''(t) = 1/t'(s~) - 1/t
    (differentiating F'(t) = ln s - ln t - 1); the third and fourth
    derivatives then need only s~-derivatives of t'(s~), taken by Richardson
    differences.  Evaluating the relation exactly instead of differencing
    F values keeps the induced profile at analytic accuracy, which the
    downstream curvature formula needs.
    """

    def rate_at(t: float) -> tuple[float, float]:
        st = math.log(s_of_t(K, t))
        u2 = _moment_rate(K, math.exp(st))
        if u2 <= 0.0:
            raise NonpositiveDerivative(f"dt/ds~ = {u2} at t = {t}")
        return st, u2

    def d2F(t: float) -> float:
        _, u2 = rate_at(t)
        return 1.0 / u2 - 1.0 / t

    def d3F(t: float) -> float:
        st, u2 = rate_at(t)
        h = _LOG_STEP * max(1.0, abs(st))
        du2 = richardson_first(lambda z: _moment_rate(K, math.exp(z)), st, h)
        return -du2 / u2**3 + 1.0 / t**2

    def d4F(t: float) -> float:
        st, u2 = rate_at(t)
        h = _LOG_STEP * max(1.0, abs(st))
        du2 = richardson_first(lambda z: _moment_rate(K, math.exp(z)), st, h)
        ddu2 = richardson_second(lambda z: _moment_rate(K, math.exp(z)), st, h)
        return -ddu2 / u2**4 + 3.0 * du2**2 / u2**5 - 2.0 / t**3

    return TPotential(
        n=K.n,
        t_min=t_min,
        t_max=t_max,
        d2F=d2F,
        d3F=d3F,
        d4F=d4F,
        F=lambda t: F_of_t(K, t),
    )


@dataclass(frozen=True)
class BridgeSample:
    s: float
    t: float
    kahler_side: float
    polytope_side: float
    difference: float


@dataclass(frozen=True)
class BridgeCheckReport:
    preset: str
    n: int
    samples: tuple
    max_discrepancy: float


def bridge_cross_check(
    K: KahlerPotential, s_samples: Sequence[float]
) -> BridgeCheckReport:
    """Compare the Kahler-side curvature against the radial pipeline.

    Each sample s is pushed to t = t_of_s(s); the radial formula then runs
    on the induced TPotential at t while Calabi's formula runs at s.
    """
    s_values = [float(s) for s in s_samples]
    if not s_values:
        raise DomainViolation("need at least one sample")
    ts = [t_of_s(K, s) for s in s_values]
    T = induced_t_potential(K, 0.0, 2.0 * max(ts) + 1.0)

    rows = []
    worst = 0.0
    for s, t in zip(s_values, ts):
        kah = calabi_scalar_curvature(K, s)
        rad = radial_scalar_curvature(T, t)
        diff = abs(kah - rad)
        worst = max(worst, diff)
        rows.append(
            BridgeSample(
                s=s, t=t, kahler_side=kah, polytope_side=rad, difference=diff
            )
        )
    return BridgeCheckReport(
        preset=K.label, n=K.n, samples=tuple(rows), max_discrepancy=worst
    )
