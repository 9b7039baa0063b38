import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singular_sources import (
    DegenerateDenominatorError,
    DeltaKind,
    DeltaScheme,
    InvalidArgumentError,
    SourceOutOfDomainError,
    SourceTerm,
    bracket_source,
    consistent_rhs,
    gaussian_delta,
    heaviside_samples,
    make_diff_op,
    make_grid,
    project_delta,
    scaling_denominator,
    steady_multi_source,
)
from singular_sources.delta_models import trapezoid_weights

FIG3 = SourceTerm.from_pairs([(0.5, -0.7), (2.0, 0.0), (1.0, 0.3)])


def test_scheme_constructors():
    assert DeltaScheme.direct().kind is DeltaKind.DIRECT
    assert DeltaScheme.consistent().kind is DeltaKind.CONSISTENT
    g = DeltaScheme.gaussian(0.1)
    assert g.kind is DeltaKind.GAUSSIAN and g.sigma == 0.1
    assert DeltaScheme("direct") == DeltaScheme.direct()


@pytest.mark.parametrize("bad", [None, 0.0, -1.0])
def test_gaussian_scheme_needs_sigma(bad):
    with pytest.raises(InvalidArgumentError):
        DeltaScheme(DeltaKind.GAUSSIAN, bad)


def test_sigma_rejected_for_other_schemes():
    with pytest.raises(InvalidArgumentError):
        DeltaScheme(DeltaKind.DIRECT, 0.1)


def test_source_term_from_pairs_sorts():
    src = SourceTerm.from_pairs([(1.0, 0.3), (0.5, -0.7), (2.0, 0.0)])
    assert src.locations == (-0.7, 0.0, 0.3)
    assert src.amplitudes == (0.5, 2.0, 1.0)
    assert list(src) == [(0.5, -0.7), (2.0, 0.0), (1.0, 0.3)]
    assert len(src) == 3


@pytest.mark.parametrize("locs, amps", [
    ((), ()),
    ((0.0, 0.5), (1.0,)),
    ((0.5, 0.0), (1.0, 1.0)),
    ((0.0, 0.0), (1.0, 1.0)),
    ((0.0,), (0.0,)),
    ((0.0,), (-1.0,)),
])
def test_source_term_validation(locs, amps):
    with pytest.raises(InvalidArgumentError):
        SourceTerm(locs, amps)


def test_project_delta_n4(cheb4):
    grid, D = cheb4
    expected = D.matrix @ np.array([0, 0, 1, 1, 1.0])
    assert np.array_equal(project_delta(D, grid, 0.0), expected)


def test_project_delta_same_bracket_identical(cheb64):
    # x_32 = 0 exactly at n = 64, so c = 0 and c = -1e-12 share the bracket (31, 32)
    grid, D = cheb64
    assert bracket_source(grid, 0.0) == bracket_source(grid, -1e-12) == (31, 32)
    assert np.array_equal(project_delta(D, grid, 0.0), project_delta(D, grid, -1e-12))
    assert not np.array_equal(project_delta(D, grid, 0.0), project_delta(D, grid, 1e-12))


def test_project_delta_rejects_outside():
    grid = make_grid("chebyshev", 8)
    D = make_diff_op(grid, "chebyshev")
    with pytest.raises(SourceOutOfDomainError):
        project_delta(D, grid, 1.0)


def test_linear_steady_state_recovers_heaviside():
    # D u = D H_c with u(x_0) = 0 has H_c as its only solution
    grid = make_grid("chebyshev", 32)
    D = make_diff_op(grid, "chebyshev")
    A = D.matrix.copy()
    rhs = project_delta(D, grid, -0.1)
    A[0, :] = 0.0
    A[0, 0] = 1.0
    rhs[0] = 0.0
    u = np.linalg.solve(A, rhs)
    assert np.abs(u - heaviside_samples(grid, -0.1)).max() < 1e-10


def test_trapezoid_weights_uniform():
    w = trapezoid_weights(np.linspace(-1, 1, 5))
    assert np.allclose(w, [0.25, 0.5, 0.5, 0.5, 0.25])
    assert math.isclose(w.sum(), 2.0)


def test_gaussian_unit_mass_and_symmetry():
    grid = make_grid("uniform", 128)
    g = gaussian_delta(grid, 0.0, 0.02)
    assert abs(trapezoid_weights(grid.points) @ g - 1.0) < 1e-12
    assert np.abs(g - g[::-1]).max() < 1e-12


@settings(max_examples=40, deadline=None)
@given(kind=st.sampled_from(["chebyshev", "uniform"]), n=st.integers(8, 128),
       c=st.floats(-0.9, 0.9), sigma=st.floats(0.01, 0.5))
def test_gaussian_peak_nearest_grid_point(kind, n, c, sigma):
    grid = make_grid(kind, n)
    g = gaussian_delta(grid, c, sigma)
    dist = np.abs(grid.points - c)
    assert dist[np.argmax(g)] == pytest.approx(dist.min(), abs=1e-14)


def test_gaussian_too_narrow():
    grid = make_grid("uniform", 4)
    with pytest.raises(InvalidArgumentError):
        gaussian_delta(grid, 0.25, 1e-4)


def test_denominator_examples():
    den = scaling_denominator(np.array([2.0, 2.0]), (0, 1), 2)
    assert den.value == 4.0 and 2 / den.value == 0.5
    beta, alpha = 2.0, 11 ** (1 / 3)
    den = scaling_denominator(np.array([beta, alpha]), (0, 1), 3)
    assert den.value == pytest.approx(alpha**2 + alpha * beta + beta**2, rel=1e-15)
    assert scaling_denominator(np.array([-3.0, 7.0]), (0, 1), 1).value == 1.0


def test_denominator_degenerate():
    with pytest.raises(DegenerateDenominatorError):
        scaling_denominator(np.array([1.0, -1.0]), (0, 1), 2)
    with pytest.raises(InvalidArgumentError):
        scaling_denominator(np.array([1.0, 1.0]), (0, 1), 0)


@given(alpha=st.floats(0.1, 5.0), beta=st.floats(0.1, 5.0), m=st.integers(1, 10))
def test_denominator_positive_for_positive_bracket(alpha, beta, m):
    assert scaling_denominator(np.array([beta, alpha]), (0, 1), m).value > 0


@given(alpha=st.floats(0.5, 4.0), beta=st.floats(0.5, 4.0), m=st.integers(2, 10))
def test_factorization_identity(alpha, beta, m):
    den = scaling_denominator(np.array([beta, alpha]), (0, 1), m).value
    scale = max(1.0, alpha**m, beta**m)
    assert abs((alpha - beta) * den - (alpha**m - beta**m)) <= 1e-12 * scale


def test_consistent_rhs_constant_state(cheb64):
    grid, D = cheb64
    src = SourceTerm.single(-0.1)
    u = np.full(len(grid), 2.0)
    rhs = consistent_rhs(u, D, grid, src, 2)
    assert np.allclose(rhs, project_delta(D, grid, -0.1), rtol=0, atol=1e-12)


@pytest.mark.parametrize("m", [2, 3, 5, 10])
def test_consistent_rhs_constant_state_multi(cheb64, m):
    grid, D = cheb64
    u = np.full(len(grid), 1.3)
    direct = sum(a * project_delta(D, grid, c) for a, c in FIG3)
    diff = np.abs(consistent_rhs(u, D, grid, FIG3, m) - direct).max()
    assert diff <= 1e-10 * np.abs(direct).max()


def test_consistent_rhs_balances_flux_at_steady_state(cheb64):
    grid, D = cheb64
    beta, alpha = 2.0, math.sqrt(6.0)
    H = heaviside_samples(grid, -0.1)
    u = (alpha - beta) * H + beta
    rhs = consistent_rhs(u, D, grid, SourceTerm.single(-0.1), 2)
    assert np.abs(rhs - u * (D @ u)).max() < 1e-9
    assert np.allclose(rhs, (2 * u / (alpha + beta)) * (D @ H))


def test_consistent_rhs_multi_source_steady_state():
    grid = make_grid("chebyshev", 256)
    D = make_diff_op(grid, "chebyshev")
    u = steady_multi_source(2.0, FIG3)(grid.points)
    rhs = consistent_rhs(u, D, grid, FIG3, 2)
    assert np.abs(u * (D @ u) - rhs).max() < 1e-8


def test_consistent_rhs_reuses_precomputed(cheb64):
    grid, D = cheb64
    u = np.linspace(1.0, 3.0, len(grid))
    projections = [project_delta(D, grid, c) for c in FIG3.locations]
    a = consistent_rhs(u, D, grid, FIG3, 3)
    b = consistent_rhs(u, D, grid, FIG3, 3, projections=projections)
    assert np.array_equal(a, b)


def test_consistent_rhs_requires_nonlinear(cheb4):
    grid, D = cheb4
    with pytest.raises(InvalidArgumentError):
        consistent_rhs(np.ones(5), D, grid, SourceTerm.single(0.0), 1)


def test_consistent_rhs_reports_source_index(cheb64):
    grid, D = cheb64
    src = SourceTerm.from_pairs([(1.0, -0.5), (1.0, 0.5)])
    u = np.ones(len(grid))
    i, k = bracket_source(grid, 0.5)
    u[i], u[k] = 1.0, -1.0
    with pytest.raises(DegenerateDenominatorError) as info:
        consistent_rhs(u, D, grid, src, 2)
    assert info.value.source_index == 1
