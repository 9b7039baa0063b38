"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records a PASS/FAIL line (shown in the terminal summary) and
then asserts the criterion exactly as stated.
"""

import math
import time

import numpy as np
import pytest

from singular_sources import DivergenceError, heaviside_samples, make_grid
from singular_sources.certify import check_diffop, check_factorization, check_positivity, check_prop1
from singular_sources.errors import SolverError
from singular_sources.experiment import reproduce_table1, solve
from singular_sources.presets import PRESETS

C_SRC = -0.1


def test_criterion_1_proposed_exact(criterion):
    t0 = time.perf_counter()
    rep = solve(PRESETS["fig1-proposed"], record_history=False)
    elapsed = time.perf_counter() - t0
    ok = rep.converged and rep.max_error <= 1e-6 and elapsed <= 10.0
    criterion(1, ok, f"max error {rep.max_error:.3g} (<= 1e-6), {rep.steps} steps, "
                     f"{elapsed:.2f} s (<= 10 s)")
    assert rep.converged
    assert rep.max_error <= 1e-6
    assert elapsed <= 10.0


def _sign_changes(v):
    s = np.sign(v[np.abs(v) > 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def test_criterion_2_previous_gibbs(criterion):
    rep = solve(PRESETS["fig1-previous"], record_history=False)
    grid = make_grid("chebyshev", 64)
    i = int(np.searchsorted(grid.points, C_SRC)) - 1
    lo, hi = max(i - 10, 0), min(i + 11, len(grid))
    changes = _sign_changes((rep.field - rep.exact)[lo:hi])
    ok = rep.max_error >= 1e-2 and changes >= 3
    criterion(2, ok, f"max error {rep.max_error:.4g} (>= 1e-2), "
                     f"{changes} sign changes within 10 points of c (>= 3)")
    assert rep.max_error >= 1e-2
    assert changes >= 3


def test_criterion_3_table1_band(criterion):
    t0 = time.perf_counter()
    rows = reproduce_table1()
    elapsed = time.perf_counter() - t0
    bad = [r.degree for r in rows
           if not (r.max_error_new <= 1e-6 and r.max_error_prev >= 1e-2 and r.ratio >= 1e4)]
    table = "; ".join(f"m={r.degree} prev={r.max_error_prev:.3g} new={r.max_error_new:.2g} "
                      f"ratio={r.ratio:.3g}" for r in rows)
    criterion(3, not bad and elapsed <= 120.0,
              f"failing m: {bad or 'none'}; {elapsed:.0f} s (<= 120 s); {table}")
    for r in rows:
        assert r.max_error_new <= 1e-6, r
        assert r.ratio >= 1e4, r
    assert elapsed <= 120.0
    assert all(r.max_error_prev >= 1e-2 for r in rows), [
        (r.degree, r.max_error_prev) for r in rows if r.max_error_prev < 1e-2]


def test_criterion_4_multi_source(criterion):
    rep = solve(PRESETS["fig3-proposed"], record_history=False)
    x = make_grid("chebyshev", 256).points
    expected = (2 + (math.sqrt(5) - 2) * (x >= -0.7) + (3 - math.sqrt(5)) * (x >= 0.0)
                + (math.sqrt(11) - 3) * (x >= 0.3))
    err = float(np.abs(rep.field - expected).max())
    gauss = solve(PRESETS["fig3-gaussian"], record_history=False)
    ok = rep.converged and err <= 1e-6 and gauss.max_error >= 0.05
    criterion(4, ok, f"scaled error {err:.3g} (<= 1e-6); Gaussian sigma=0.02 error "
                     f"{gauss.max_error:.3g} (>= 0.05)")
    assert err <= 1e-6
    assert gauss.max_error >= 0.05


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_criterion_5_2d_nonlinear(criterion):
    rep = solve(PRESETS["fig4c-proposed"], record_history=False)
    x = make_grid("chebyshev", 64).points
    X, Y = np.meshgrid(x, x)
    ray = np.isclose(X, Y) & (X >= 0)
    expected = np.where(ray, math.sqrt(6.0), 2.0)
    err = float(np.abs(rep.field - expected).max())
    try:
        unscaled = solve(PRESETS["fig4b-unscaled"], record_history=False).max_error
        note = "finite"
    except SolverError as exc:
        assert isinstance(exc.__cause__, DivergenceError)
        unscaled, note = math.inf, "diverged"
    damped = solve(PRESETS["fig4b-unscaled-c005"], record_history=False).max_error
    ok = rep.converged and err <= 1e-6 and unscaled >= 1e-2 and damped >= 1e-2
    criterion(5, ok, f"scaled error {err:.3g} (<= 1e-6); unscaled C=0.5 {note} "
                     f"(error {unscaled:.3g}), C=0.05 error {damped:.3g} (>= 1e-2)")
    assert rep.converged and err <= 1e-6
    assert unscaled >= 1e-2 and damped >= 1e-2


def test_criterion_6_finite_difference(criterion):
    rep = solve(PRESETS["fig5c-finite-difference"], record_history=False)
    ga = solve(PRESETS["fig5a-gaussian-advection"], record_history=False).max_error
    gb = solve(PRESETS["fig5b-gaussian-nonlinear"], record_history=False).max_error
    ok = rep.converged and rep.max_error <= 1e-6 and ga >= 0.1 and gb >= 0.1
    criterion(6, ok, f"one-sided difference error {rep.max_error:.3g} (<= 1e-6); Gaussian "
                     f"advection {ga:.3g}, nonlinear {gb:.3g} (>= 0.1)")
    assert rep.converged and rep.max_error <= 1e-6
    assert ga >= 0.1 and gb >= 0.1


def test_criterion_7_positivity(criterion):
    checks = list(check_positivity())
    failed = [c.name for c in checks if not c.passed]
    steps = sum(int(c.value or 0) for c in checks)
    criterion(7, not failed and bool(checks),
              f"{len(checks)} scaled presets at C = min(1/(2||D||), 1/2), {steps} steps "
              f"checked, failures: {failed or 'none'}")
    assert checks and not failed


def test_criterion_8_certification(criterion):
    checks = [*check_diffop((4, 8, 16, 32, 64)), *check_prop1(), *check_factorization()]
    failed = [f"{c.suite}: {c.name}" for c in checks if not c.passed]
    criterion(8, not failed, f"{len(checks)} checks, failures: {failed or 'none'}")
    assert not failed


def test_criterion_9_linear_advection(criterion):
    rep = solve(PRESETS["fig4a-advection"], record_history=False)
    n1 = rep.field.shape[0]
    x = make_grid("chebyshev", n1 - 1).points
    err = np.abs(rep.field - rep.exact)
    on = [i for i in range(n1) if x[i] >= 0]
    neighbours = set()
    for i in on:
        for di, dj in ((0, 1), (0, -1), (1, 0), (-1, 0)):
            p, q = i + di, i + dj
            if 0 <= p < n1 and 0 <= q < n1 and not (x[p] == x[q] and x[p] >= 0):
                neighbours.add((p, q))
    overshoot = max(err[p, q] for p, q in neighbours)
    jump = min(rep.field[i, i] - (rep.exact[i, i] - 1.0) for i in on)
    ok = rep.max_error <= 1e-2 and overshoot < 0.1
    criterion(9, ok, f"max error {rep.max_error:.3g} (<= 1e-2) at t={rep.t_reached:g}; "
                     f"off-ray neighbour deviation {overshoot:.3g} (< 0.1); "
                     f"smallest on-ray jump {jump:.4f}")
    assert rep.max_error <= 1e-2
    assert overshoot < 0.1
