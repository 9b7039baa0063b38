"""Two-dimensional point-source problems on tensor grids over [-1, 1]^2.

Fields are ``(n+1, n+1)`` arrays with ``u[i, j] = u(x_j, y_i)``: the row
index runs over ``y`` and the column index over ``x``. With this layout
``u @ D.T`` differentiates in ``x`` and ``D @ u`` in ``y``.

The point source at the origin is represented through the 0/1 indicator
``T`` of the characteristic ray ``b x = a y, x >= 0``, differentiated along
the transport direction: ``a T D^t + b D T``.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .analytic import exact_2d_advection, on_ray, steady_2d_nonlinear
from .delta_models import DeltaKind, DeltaScheme, trapezoid_weights
from .errors import (
    DegenerateDenominatorError,
    DegenerateTimestepError,
    DivergenceError,
    InvalidArgumentError,
    PositivityViolation,
    UnsupportedRegimeError,
)
from .solver1d import DEFAULT_MAX_STEPS, DEFAULT_STEADY_TOL, SolveReport, _history_arrays
from .spectral_core import DiffOp, Grid1D, bracket_source

log = logging.getLogger(__name__)


class Equation2D(enum.Enum):
    ADVECTION = "advection"   # u_t + a u_x + b u_y = delta
    NONLINEAR = "nonlinear"   # u_t + u u_x + u u_y = delta


@dataclass(frozen=True, eq=False)
class TestMatrix:
    values: np.ndarray
    a: float = 1.0
    b: float = 1.0

    __test__ = False  # not a pytest class


def ray_indicator(grid: Grid1D, a: float = 1.0, b: float = 1.0) -> TestMatrix:
    """Grid indicator of the ray ``b x = a y, x >= 0`` through the origin."""
    if not (a > 0 and b > 0):
        raise InvalidArgumentError("advection speeds a, b must be positive")
    X, Y = np.meshgrid(grid.points, grid.points)
    T = on_ray(X, Y, a, b).astype(float)
    if not T.any():
        raise InvalidArgumentError(
            f"ray b*x = a*y (a={a}, b={b}) contains no grid points; "
            "the point source cannot be represented"
        )
    return TestMatrix(T, float(a), float(b))


def _values(T):
    return T.values if isinstance(T, TestMatrix) else np.asarray(T, dtype=float)


def delta2d_projection(T, D: DiffOp, a: float = 1.0, b: float = 1.0) -> np.ndarray:
    """``a T D^t + b D T``: the discrete directional derivative of ``T``."""
    Tv = _values(T)
    M = D.matrix if isinstance(D, DiffOp) else np.asarray(D)
    if Tv.shape != (M.shape[0], M.shape[0]):
        raise InvalidArgumentError(f"test matrix shape {Tv.shape} does not match D {M.shape}")
    return a * (Tv @ M.T) + b * (M @ Tv)


def gaussian_delta_2d(grid: Grid1D, sigma: float) -> np.ndarray:
    """Isotropic Gaussian at the origin with unit tensor-trapezoid mass."""
    if not sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma!r}")
    X, Y = np.meshgrid(grid.points, grid.points)
    g = np.exp(-(X**2 + Y**2) / (2.0 * sigma**2))
    w = trapezoid_weights(grid.points)
    return g / (w @ g @ w)


def advection_boundary(u: np.ndarray, x: np.ndarray, t: float) -> None:
    """Impose the exact inflow data on the ``x = -1`` column and ``y = -1`` row."""
    s = math.sin(math.pi * (-1.0 - t))
    u[:, 0] = s * np.sin(np.pi * (x - t))
    u[0, :] = s * np.sin(np.pi * (x - t))


def step_2d_advection(u, T, D: DiffOp, a: float, b: float, dt: float, t: float,
                      source: np.ndarray | None = None) -> np.ndarray:
    """Euler step for ``u_t + a u_x + b u_y = delta`` ending at time ``t + dt``.

    ``source`` overrides the default ``a T D^t + b D T`` (pass zeros to
    switch the source off, or a Gaussian kernel).
    """
    M = D.matrix
    if source is None:
        source = delta2d_projection(T, D, a, b)
    nxt = u + dt * (source - a * (u @ M.T) - b * (M @ u))
    advection_boundary(nxt, D.grid.points, t + dt)
    return nxt


def step_2d_nonlinear(u, T, D: DiffOp, bracket: tuple[int, int], dt: float,
                      beta: float | None = None, scaled: bool = True,
                      source: np.ndarray | None = None) -> np.ndarray:
    """Euler step for ``u_t + u u_x + u u_y = delta``, Dirichlet ``beta`` inflow.

    With ``scaled`` the projected source is multiplied by
    ``2u / (u[i, i] + u[i+1, i+1])`` using the two diagonal points that
    straddle the origin. ``beta`` defaults to the current corner value.
    """
    M = D.matrix
    if beta is None:
        beta = float(u[0, 0])
    if source is None:
        source = delta2d_projection(T, D, 1.0, 1.0)
    if scaled:
        i, k = bracket
        denom = u[i, i] + u[k, k]
        if denom == 0.0:
            raise DegenerateDenominatorError(
                f"diagonal bracket values sum to zero at {bracket}")
        source = (2.0 / denom) * u * source
    nxt = u + dt * (source - u * (u @ M.T) - u * (M @ u))
    nxt[:, 0] = beta
    nxt[0, :] = beta
    return nxt


def advection_dt(grid: Grid1D, a: float, b: float, cfl: float) -> float:
    return cfl * grid.min_spacing / max(a, b)


def nonlinear_dt(u: np.ndarray, grid: Grid1D, cfl: float) -> float:
    scale = float(np.max(np.abs(u)))
    if scale == 0.0:
        raise DegenerateTimestepError("zero field gives an unbounded time step")
    return cfl * grid.min_spacing / scale


@dataclass
class Problem2D:
    """Configuration of a two-dimensional run.

    ``scheme`` selects the source representation: direct means the plain
    ``T D^t + D T`` projection, consistent its scaled variant (nonlinear
    equation only; identical to direct for the linear one), Gaussian an
    isotropic kernel. ``initial="oracle"`` starts the advection problem
    from the exact solution at ``t = 0``; ``"sine"`` starts from
    ``sin(pi x) sin(pi y)`` alone.
    """

    equation: Equation2D
    scheme: DeltaScheme
    diff: DiffOp
    beta: float = 2.0
    a: float = 1.0
    b: float = 1.0
    cfl: float = 0.5
    t_final: float | None = None
    steady_tol: float = DEFAULT_STEADY_TOL
    max_steps: int = DEFAULT_MAX_STEPS
    initial: str = "oracle"
    with_source: bool = True
    strict_positivity: bool | None = None

    def __post_init__(self):
        if not isinstance(self.equation, Equation2D):
            self.equation = Equation2D(self.equation)
        if not self.cfl > 0:
            raise InvalidArgumentError(f"cfl must be positive, got {self.cfl!r}")
        if self.t_final is not None and not self.t_final > 0:
            raise InvalidArgumentError("t_final must be positive")
        if self.equation is Equation2D.NONLINEAR:
            if not self.beta > 0:
                raise UnsupportedRegimeError(f"only beta > 0 is supported, got {self.beta!r}")
            if self.a != 1.0 or self.b != 1.0:
                raise InvalidArgumentError("the nonlinear problem transports along (1, 1)")
        else:
            if self.t_final is None:
                raise InvalidArgumentError("advection runs need t_final (no steady state)")
            if self.initial not in ("oracle", "sine"):
                raise InvalidArgumentError(f"initial must be 'oracle' or 'sine', got {self.initial!r}")
        if self.strict_positivity is None:
            self.strict_positivity = (
                self.equation is Equation2D.NONLINEAR
                and self.scheme.kind is DeltaKind.CONSISTENT
                and self.cfl <= self.cfl_bound
            )

    @property
    def grid(self) -> Grid1D:
        return self.diff.grid

    @property
    def cfl_bound(self) -> float:
        return self.diff.positivity_cfl

    def oracle(self, t: float) -> np.ndarray:
        X, Y = np.meshgrid(self.grid.points, self.grid.points)
        if self.equation is Equation2D.ADVECTION:
            return exact_2d_advection(X, Y, t, self.a, self.b)
        return steady_2d_nonlinear(X, Y, self.beta)


def _source_matrix(problem: Problem2D, T: TestMatrix) -> np.ndarray:
    n1 = len(problem.grid)
    if not problem.with_source:
        return np.zeros((n1, n1))
    if problem.scheme.kind is DeltaKind.GAUSSIAN:
        return gaussian_delta_2d(problem.grid, problem.scheme.sigma)
    return delta2d_projection(T, problem.diff, problem.a, problem.b)


def initial_field(problem: Problem2D, T: TestMatrix) -> np.ndarray:
    X, Y = np.meshgrid(problem.grid.points, problem.grid.points)
    if problem.equation is Equation2D.NONLINEAR:
        return np.full(X.shape, float(problem.beta))
    u = np.sin(np.pi * X) * np.sin(np.pi * Y)
    if problem.initial == "oracle" and problem.with_source:
        u = u + T.values
    return u


def run_2d(problem: Problem2D, oracle: bool = True, record_history: bool = True,
           history_stride: int = 1) -> SolveReport:
    """Integrate a 2D problem to ``t_final`` or, for the nonlinear equation,
    until ``||u_{n+1} - u_n||_inf / dt < steady_tol``."""
    grid, D = problem.grid, problem.diff
    T = ray_indicator(grid, problem.a, problem.b)
    S = _source_matrix(problem, T)
    bracket = bracket_source(grid, 0.0)
    i, k = bracket
    nonlinear = problem.equation is Equation2D.NONLINEAR
    scaled = nonlinear and problem.scheme.kind is DeltaKind.CONSISTENT and problem.with_source
    u = initial_field(problem, T)
    if not nonlinear:
        dt_fixed = advection_dt(grid, problem.a, problem.b, problem.cfl)

    hist = [] if record_history else None
    t = 0.0
    steps = 0
    dts = []
    rate = np.inf
    converged = violated = False
    while steps < problem.max_steps:
        dt = nonlinear_dt(u, grid, problem.cfl) if nonlinear else dt_fixed
        if problem.t_final is not None and t + dt >= problem.t_final:
            dt = problem.t_final - t
        if nonlinear:
            nxt = step_2d_nonlinear(u, T, D, bracket, dt, problem.beta, scaled=scaled, source=S)
        else:
            nxt = step_2d_advection(u, T, D, problem.a, problem.b, dt, t, source=S)
        steps += 1
        if not np.all(np.isfinite(nxt)):
            raise DivergenceError(f"non-finite values at step {steps} (t={t:.6g})", steps, t)
        rate = float(np.max(np.abs(nxt - u))) / dt
        u = nxt
        t += dt
        dts.append(dt)
        left, right = float(u[i, i]), float(u[k, k])
        if scaled and not (left > 0 and right > 0):
            violated = True
            if problem.strict_positivity:
                raise PositivityViolation(
                    f"diagonal bracket values {left!r}, {right!r} at step {steps}", steps)
        if hist is not None and steps % history_stride == 0:
            hist.append((steps, t, dt, rate, left, right))
        if nonlinear and rate < problem.steady_tol:
            converged = True
            break
        if problem.t_final is not None and t >= problem.t_final:
            break

    exact = problem.oracle(t) if oracle else None
    return SolveReport(
        field=u,
        t_reached=t,
        steps=steps,
        dt_first=dts[0] if dts else 0.0,
        dt_min=min(dts) if dts else 0.0,
        dt_max=max(dts) if dts else 0.0,
        converged=converged,
        positivity_violated=violated,
        final_rate=rate,
        cfl=problem.cfl,
        cfl_bound=problem.cfl_bound,
        max_error=None if exact is None else float(np.max(np.abs(u - exact))),
        exact=exact,
        history=_history_arrays(hist),
    )
