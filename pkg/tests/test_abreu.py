import numpy as np
import pytest

from toricext import (
    AffineFacet,
    DegeneratePointSet,
    InvalidParameters,
    MomentPolytope,
    StencilExitsDomain,
    SymplecticPotential,
    TPotential,
    abreu_scalar_curvature,
    build_blowup_polytope,
    build_extremal_metric,
    extremal_F_second,
    extremality_residual,
    numeric_hessian,
    sample_interior,
)
from util import cpn_profile, flat_profile, simplex_polytope


def _log_potential(x):
    return 0.5 * float(np.sum(x * np.log(x)))


def test_numeric_hessian_log_potential():
    x = np.array([1.0, 1.0])
    H = numeric_hessian(_log_potential, x, 1e-4)
    np.testing.assert_allclose(H, 0.5 * np.eye(2), atol=1e-7)


def test_numeric_hessian_bilinear():
    H = numeric_hessian(lambda x: float(x[0] * x[1]), np.array([0.7, 0.2]), 1e-4)
    np.testing.assert_allclose(H, [[0.0, 1.0], [1.0, 0.0]], atol=1e-7)


def test_numeric_hessian_quadratic():
    Q = np.array([[2.0, 0.5], [0.5, 1.0]])
    f = lambda x: 0.5 * float(x @ Q @ x)
    H = numeric_hessian(f, np.array([0.3, -0.4]), 1e-4)
    np.testing.assert_allclose(H, Q, atol=1e-7)


def test_numeric_hessian_affine_part_is_invisible():
    # adding <m,x> + c must not change any second difference
    x = np.array([0.3, 0.4])
    g_aff = lambda x: _log_potential(x) + 3.0 * x[0] - 2.0 * x[1] + 7.0
    H0 = numeric_hessian(_log_potential, x, 1e-3)
    H1 = numeric_hessian(g_aff, x, 1e-3)
    assert np.max(np.abs(H0 - H1)) <= 1e-8
    assert np.max(np.abs(H0 - np.diag(0.5 / x))) <= 1e-5


def test_numeric_hessian_stencil_reach_is_checked():
    P = build_blowup_polytope(2, 0.5, 1.0)
    with pytest.raises(StencilExitsDomain):
        numeric_hessian(_log_potential, np.array([0.3, 0.4]), 0.2, polytope=P)


def test_flat_curvature_default_step():
    P = build_blowup_polytope(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(P, flat_profile(2))
    for x in ([0.3, 0.4], [0.2, 0.5], [0.45, 0.35]):
        assert abs(abreu_scalar_curvature(S, np.array(x))) <= 1e-7


def test_flat_curvature_coarse_step_is_cleaner():
    # h=1e-3 sits at the flat-profile noise/truncation sweet spot
    P = build_blowup_polytope(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(P, flat_profile(2))
    assert abs(abreu_scalar_curvature(S, np.array([0.3, 0.4]), h=1e-3)) <= 1e-9


def test_projective_space_curvature():
    S = SymplecticPotential.from_radial(simplex_polytope(2), cpn_profile(2))
    got = abreu_scalar_curvature(S, np.array([0.2, 0.3]))
    assert got == pytest.approx(6.0, abs=1e-5)


def test_extremal_curvature_is_affine_in_t():
    _, T, E = build_extremal_metric(2, 0.5, 1.0)
    P = build_blowup_polytope(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(P, T)
    for x in ([0.35, 0.40], [0.2, 0.55], [0.6, 0.15]):
        x = np.array(x)
        want = E.A * float(np.sum(x)) + E.B
        assert abreu_scalar_curvature(S, x) == pytest.approx(want, abs=1e-5)


def test_curvature_permutation_invariance():
    _, T, _ = build_extremal_metric(2, 0.5, 1.0)
    P = build_blowup_polytope(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(P, T)
    x = np.array([0.25, 0.45])
    v1 = abreu_scalar_curvature(S, x)
    v2 = abreu_scalar_curvature(S, x[::-1].copy())
    assert abs(v1 - v2) <= 1e-8


def test_value_oracle_roundtrip_is_noisy_but_sane():
    # double differentiation: S needs 4th derivatives of g, so an oracle
    # that only exposes values costs ~5 digits; keep tolerances honest
    P = build_blowup_polytope(2, 0.5, 1.0)
    S = SymplecticPotential.from_value_oracle(P, _log_potential, h=1e-3)
    got = abreu_scalar_curvature(S, np.array([0.3, 0.4]))
    assert abs(got) <= 1e-2


def test_dimension_cap():
    facets = tuple(
        AffineFacet(tuple(1 if j == i else 0 for j in range(17)), 0.0)
        for i in range(17)
    )
    P = MomentPolytope(17, facets, tuple((0.0, 1.0) for _ in range(17)))
    S = SymplecticPotential(P, lambda x: np.eye(17))
    with pytest.raises(InvalidParameters):
        abreu_scalar_curvature(S, np.full(17, 0.5))


def test_explicit_step_must_fit():
    P = build_blowup_polytope(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(P, flat_profile(2))
    with pytest.raises(StencilExitsDomain):
        abreu_scalar_curvature(S, np.array([0.3, 0.4]), h=0.3)


def test_extremality_residual_on_extremal_metric():
    Pm, T, E = build_extremal_metric(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(Pm, T)
    pts = sample_interior(Pm, 30, margin=0.025, seed=11)
    fit = extremality_residual(S, pts)
    # S(x) = A t + B means gradient (A, A) and constant B
    assert fit.gradient[0] == pytest.approx(E.A, abs=1e-4)
    assert fit.gradient[1] == pytest.approx(E.A, abs=1e-4)
    assert fit.constant == pytest.approx(E.B, abs=1e-4)
    assert fit.max_residual <= 1e-5


def test_extremality_residual_detects_non_extremal_metric():
    Pm, T, E = build_extremal_metric(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(Pm, T)
    pts = sample_interior(Pm, 30, margin=0.025, seed=11)
    base = extremality_residual(S, pts).max_residual

    bumped = TPotential(
        n=2, t_min=0.5, t_max=1.0,
        d2F=lambda t: extremal_F_second(E, t) + 0.1 * np.sin(10.0 * t),
    )
    S_bad = SymplecticPotential.from_radial(Pm, bumped)
    assert extremality_residual(S_bad, pts).max_residual > 10.0 * max(base, 1e-6)


def test_extremality_residual_needs_enough_points():
    Pm, T, _ = build_extremal_metric(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(Pm, T)
    with pytest.raises(DegeneratePointSet):
        extremality_residual(S, np.array([[0.3, 0.4], [0.35, 0.45]]))


def test_extremality_residual_rejects_collinear_points():
    Pm, T, _ = build_extremal_metric(2, 0.5, 1.0)
    S = SymplecticPotential.from_radial(Pm, T)
    # all on the segment x1 = x0 + 0.05: affine fit is rank deficient
    pts = np.array([[0.3, 0.35], [0.33, 0.38], [0.36, 0.41], [0.39, 0.44]])
    with pytest.raises(DegeneratePointSet):
        extremality_residual(S, pts)
