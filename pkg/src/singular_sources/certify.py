"""Numerical certification checks, streamed as JSON lines.

Each check produces a :class:`Check` record; a suite passes when every
record passes. Suites:

``diffop``         row sums, monomial exactness and nullity of the operators
``prop1``          quadratic residual of the Burgers steady state
``factorization``  ``(alpha - beta) * denominator == alpha^m - beta^m``
``delta``          source representations at constant states, Gaussian mass
``positivity``     bracket positivity for every scaled preset at the provable C
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from .analytic import degree_m_jump, steady_burgers
from .delta_models import (
    SourceTerm,
    consistent_rhs,
    gaussian_delta,
    project_delta,
    scaling_denominator,
    trapezoid_weights,
)
from .errors import SolverError
from .solver1d import steady_quadratic_residual
from .spectral_core import make_diff_op, make_grid

DIFFOP_SIZES = (4, 8, 16, 32, 64)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    value: float | None = None
    tolerance: float | None = None
    detail: str = ""

    def to_json(self) -> str:
        d = asdict(self)
        for k in ("value", "tolerance"):
            if d[k] is not None and not math.isfinite(d[k]):
                d[k] = str(d[k])
        return json.dumps(d, sort_keys=True)


def _le(suite, name, value, tol, detail=""):
    return Check(suite, name, bool(value <= tol), float(value), float(tol), detail)


def check_diffop(sizes=DIFFOP_SIZES) -> Iterator[Check]:
    for n in sizes:
        grid = make_grid("chebyshev", n)
        D = make_diff_op(grid, "chebyshev")
        M, x = D.matrix, grid.points
        yield _le("diffop", f"chebyshev n={n} row sums",
                  np.abs(M.sum(axis=1)).max(), 1e-10 * D.inf_norm)
        worst = 0.0
        for k in range(0, min(n, 10) + 1):
            deriv = k * x ** (k - 1) if k > 0 else np.zeros_like(x)
            worst = max(worst, np.abs(M @ x**k - deriv).max() / max(1, k))
        yield _le("diffop", f"chebyshev n={n} monomial exactness", worst, 1e-8)
        smin = np.linalg.svd(M[1:, 1:], compute_uv=False).min()
        yield Check("diffop", f"chebyshev n={n} interior block nonsingular",
                    bool(smin > 1e-10), float(smin), 1e-10, "smallest singular value")
        rank = np.linalg.matrix_rank(M)
        yield Check("diffop", f"chebyshev n={n} rank", rank == n, float(rank), float(n))
        ugrid = make_grid("uniform", n)
        for kind in ("forward", "backward"):
            F = make_diff_op(ugrid, kind)
            yield _le("diffop", f"{kind} n={n} row sums",
                      np.abs(F.matrix.sum(axis=1)).max(), 1e-10 * F.inf_norm)
            rank = np.linalg.matrix_rank(F.matrix)
            yield Check("diffop", f"{kind} n={n} rank", rank == n, float(rank), float(n))


def check_prop1(n: int = 64, c: float = -0.1, beta: float = 2.0) -> Iterator[Check]:
    grid = make_grid("chebyshev", n)
    D = make_diff_op(grid, "chebyshev")
    u = steady_burgers(beta, c)(grid.points)
    yield _le("prop1", "positive branch residual", steady_quadratic_residual(u, D, c, beta), 1e-12)
    flipped = np.where(grid.points >= c, -u, u)
    yield _le("prop1", "negative branch residual",
              steady_quadratic_residual(flipped, D, c, beta), 1e-12)
    # solutions of D(u^2/2) = D H_c: the quadratic relation recovers H_c exactly
    recovered = 0.5 * (u * u - beta**2)
    yield _le("prop1", "recovered Heaviside",
              np.abs(recovered - (grid.points >= c)).max(), 1e-12)


def check_factorization(samples: int = 200, seed: int = 0) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        alpha, beta = rng.uniform(0.5, 4.0, size=2)
        m = int(rng.integers(2, 11))
        den = scaling_denominator(np.array([beta, alpha]), (0, 1), m).value
        scale = max(1.0, alpha**m, beta**m)
        worst = max(worst, abs((alpha - beta) * den - (alpha**m - beta**m)) / scale)
    yield _le("factorization", f"{samples} random (alpha, beta, m)", worst, 1e-12,
              "relative to max(1, alpha^m, beta^m)")
    for m in range(2, 11):
        beta = 2.0
        alpha = degree_m_jump(beta, m)
        den = scaling_denominator(np.array([beta, alpha]), (0, 1), m).value
        yield _le("factorization", f"steady jump m={m}", abs((alpha - beta) * den - m), 1e-12 * 2**m)


def check_delta(n: int = 64) -> Iterator[Check]:
    grid = make_grid("chebyshev", n)
    D = make_diff_op(grid, "chebyshev")
    src = SourceTerm.from_pairs([(0.5, -0.7), (2.0, 0.0), (1.0, 0.3)])
    direct = sum(a * project_delta(D, grid, c) for a, c in src)
    for m in (2, 3, 5, 10):
        u = np.full(len(grid), 1.7)
        diff = np.abs(consistent_rhs(u, D, grid, src, m) - direct).max()
        yield _le("delta", f"constant state m={m}", diff, 1e-10 * max(1.0, np.abs(direct).max()))
    ugrid = make_grid("uniform", 128)
    g = gaussian_delta(ugrid, 0.0, 0.02)
    yield _le("delta", "gaussian unit mass", abs(trapezoid_weights(ugrid.points) @ g - 1.0), 1e-12)
    H = (grid.points >= -0.1).astype(float)
    u = np.linalg.solve(_pinned(D.matrix), _pinned_rhs(D.matrix @ H))
    yield _le("delta", "linear steady state recovers H_c", np.abs(u - H).max(), 1e-10)


def _pinned(M):
    A = M.copy()
    A[0, :] = 0.0
    A[0, 0] = 1.0
    return A


def _pinned_rhs(b, value=0.0):
    r = b.copy()
    r[0] = value
    return r


def check_positivity(max_steps: int = 2000) -> Iterator[Check]:
    """Run each scaled preset at ``C = min(1/(2||D||), 1/2)``, strictly."""
    from .experiment import build_problem
    from .presets import PRESETS
    from .solver1d import ProblemSpec1D, run_to_steady
    from .solver2d import run_2d

    for name, cfg in PRESETS.items():
        if cfg.scheme != "consistent":
            continue
        problem = build_problem(cfg, max_steps=max_steps)
        problem = build_problem(cfg, max_steps=max_steps, cfl=problem.cfl_bound)
        problem.strict_positivity = True
        try:
            if isinstance(problem, ProblemSpec1D):
                rep = run_to_steady(problem, record_history=False)
            else:
                rep = run_2d(problem, oracle=False, record_history=False)
        except SolverError as exc:
            yield Check("positivity", name, False, detail=f"{type(exc).__name__}: {exc}")
            continue
        yield Check("positivity", name, not rep.positivity_violated, float(rep.steps),
                    None, f"C={problem.cfl:.6g}, steps checked")


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "diffop": check_diffop,
    "prop1": check_prop1,
    "factorization": check_factorization,
    "delta": check_delta,
    "positivity": check_positivity,
}


def certify(suite: str = "all", emit: Callable[[str], None] | None = None) -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    results = []
    for name in names:
        for check in SUITES[name]():
            results.append(check)
            if emit is not None:
                emit(check.to_json())
    return results
