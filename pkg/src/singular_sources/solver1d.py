"""Explicit Euler method of lines for ``u_t + (u^m/m)_x = sum a_i delta(x - c_i)``.

The transport term is discretized in non-conservative form,
``u^{m-1} * (D @ u)``, with the left Dirichlet value ``u[0] = beta``
re-imposed after every step. The time step adapts to the field,
``dt = C * min(dx) / ||u^{m-1}||_inf``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .delta_models import (
    DeltaKind,
    DeltaScheme,
    SourceTerm,
    gaussian_delta,
    scaling_denominator,
)
from .errors import (
    DegenerateDenominatorError,
    DegenerateTimestepError,
    DivergenceError,
    InvalidArgumentError,
    PositivityViolation,
    UnsupportedRegimeError,
)
from .spectral_core import DiffOp, Grid1D, bracket_source, heaviside_samples

log = logging.getLogger(__name__)

DEFAULT_STEADY_TOL = 1e-10
DEFAULT_MAX_STEPS = 10_000_000
HISTORY_FIELDS = ("step", "t", "dt", "max_residual_rate", "bracket_u_left", "bracket_u_right")


@dataclass
class ProblemSpec1D:
    """Problem and discretization parameters for a one-dimensional solve.

    ``t_final=None`` runs until the steady-state rate criterion
    ``||u_{n+1} - u_n||_inf / dt_n < steady_tol`` holds (or ``max_steps``
    is exhausted).
    """

    degree: int
    source: SourceTerm
    beta: float
    scheme: DeltaScheme
    diff: DiffOp
    cfl: float = 0.5
    t_final: float | None = None
    steady_tol: float = DEFAULT_STEADY_TOL
    max_steps: int = DEFAULT_MAX_STEPS
    strict_positivity: bool | None = None

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise InvalidArgumentError(f"degree must be an integer >= 1, got {self.degree!r}")
        self.degree = int(self.degree)
        if not self.beta > 0:
            raise UnsupportedRegimeError(f"only beta > 0 is supported, got {self.beta!r}")
        if not self.cfl > 0:
            raise InvalidArgumentError(f"cfl must be positive, got {self.cfl!r}")
        if not self.steady_tol > 0:
            raise InvalidArgumentError("steady_tol must be positive")
        if self.t_final is not None and not self.t_final > 0:
            raise InvalidArgumentError("t_final must be positive")
        if self.max_steps < 0:
            raise InvalidArgumentError("max_steps must be >= 0")
        for c in self.source.locations:
            bracket_source(self.grid, c)
        if self.strict_positivity is None:
            self.strict_positivity = (
                self.scheme.kind is DeltaKind.CONSISTENT and self.cfl <= self.cfl_bound
            )

    @property
    def grid(self) -> Grid1D:
        return self.diff.grid

    @property
    def cfl_bound(self) -> float:
        return self.diff.positivity_cfl


@dataclass
class SolveReport:
    field: np.ndarray
    t_reached: float
    steps: int
    dt_first: float
    dt_min: float
    dt_max: float
    converged: bool
    positivity_violated: bool
    final_rate: float
    cfl: float
    cfl_bound: float
    max_error: float | None = None
    exact: np.ndarray | None = None
    history: dict[str, np.ndarray] | None = field(default=None, repr=False)

    @property
    def cfl_exceeds_bound(self) -> bool:
        return self.cfl > self.cfl_bound


def adaptive_dt(u: np.ndarray, grid: Grid1D, m: int, cfl: float) -> float:
    """``C * min(dx) / max|u|^(m-1)``; the denominator is 1 for ``m = 1``."""
    if m == 1:
        scale = 1.0
    else:
        scale = float(np.max(np.abs(u))) ** (m - 1)
    if scale == 0.0:
        raise DegenerateTimestepError("zero field gives an unbounded time step")
    if not np.isfinite(scale):
        raise DivergenceError("non-finite field in time-step selection", step=None)
    return cfl * grid.min_spacing / scale


class _Integrator:
    """Precomputed per-problem data for the Euler loop."""

    def __init__(self, spec: ProblemSpec1D):
        self.spec = spec
        self.m = spec.degree
        self.D = spec.diff.matrix
        grid = spec.grid
        self.brackets = [bracket_source(grid, c) for c in spec.source.locations]
        self.amps = np.array(spec.source.amplitudes)
        kind = spec.scheme.kind
        if kind is DeltaKind.CONSISTENT and self.m == 1:
            # u^0 / 1 == 1: identical to the direct projection
            kind = DeltaKind.DIRECT
        self.kind = kind
        if kind is DeltaKind.GAUSSIAN:
            self.vectors = [gaussian_delta(grid, c, spec.scheme.sigma)
                            for c in spec.source.locations]
        else:
            self.vectors = [spec.diff.matrix @ heaviside_samples(grid, c)
                            for c in spec.source.locations]
        if kind is DeltaKind.CONSISTENT:
            self.fixed = None
        else:
            self.fixed = sum(a * v for a, v in zip(self.amps, self.vectors))

    def source(self, u: np.ndarray) -> np.ndarray:
        if self.fixed is not None:
            return self.fixed
        m = self.m
        weight = m * u ** (m - 1)
        out = np.zeros_like(u)
        for k, (a, v, br) in enumerate(zip(self.amps, self.vectors, self.brackets)):
            try:
                denom = scaling_denominator(u, br, m).value
            except DegenerateDenominatorError as exc:
                raise DegenerateDenominatorError(str(exc), source_index=k) from None
            out += (a / denom) * weight * v
        return out

    def tendency(self, u: np.ndarray) -> np.ndarray:
        m = self.m
        transport = self.D @ u
        if m > 1:
            transport = (u if m == 2 else u ** (m - 1)) * transport
        return self.source(u) - transport

    def step(self, u: np.ndarray, dt: float) -> np.ndarray:
        nxt = u + dt * self.tendency(u)
        nxt[0] = self.spec.beta
        return nxt

    def bracket_values(self, u):
        left = min(u[i] for i, _ in self.brackets)
        right = min(u[k] for _, k in self.brackets)
        return left, right


def euler_step(u: np.ndarray, spec: ProblemSpec1D, dt: float | None = None) -> np.ndarray:
    """One explicit Euler step of the selected scheme.

    ``dt`` defaults to :func:`adaptive_dt` evaluated on ``u``. The boundary
    value ``u[0] = beta`` is written after the update.
    """
    u = np.asarray(u, dtype=float)
    if dt is None:
        dt = adaptive_dt(u, spec.grid, spec.degree, spec.cfl)
    nxt = _Integrator(spec).step(u, dt)
    if not np.all(np.isfinite(nxt)):
        raise DivergenceError("non-finite values after Euler step", step=0)
    return nxt


def _oracle_values(oracle, grid):
    if oracle is None:
        return None
    if callable(oracle):
        return np.asarray(oracle(grid.points), dtype=float)
    return np.asarray(oracle, dtype=float)


def run_to_steady(
    spec: ProblemSpec1D,
    oracle: Callable | np.ndarray | None = None,
    record_history: bool = True,
    history_stride: int = 1,
    u0: np.ndarray | None = None,
) -> SolveReport:
    """Integrate from ``u0`` (default ``beta`` everywhere) until steady or ``t_final``.

    Exhausting ``max_steps`` returns a report with ``converged=False``.
    Non-finite values raise :class:`DivergenceError`.
    """
    integ = _Integrator(spec)
    grid = spec.grid
    m, cfl, beta = spec.degree, spec.cfl, spec.beta
    u = np.full(len(grid), float(beta)) if u0 is None else np.array(u0, dtype=float)
    u[0] = beta

    hist = [] if record_history else None
    t = 0.0
    steps = 0
    dt_first = dt_min = dt_max = None
    rate = np.inf
    converged = False
    violated = False
    while steps < spec.max_steps:
        dt = adaptive_dt(u, grid, m, cfl)
        if spec.t_final is not None and t + dt >= spec.t_final:
            dt = spec.t_final - t
        nxt = integ.step(u, dt)
        steps += 1
        if not np.all(np.isfinite(nxt)):
            raise DivergenceError(f"non-finite values at step {steps} (t={t:.6g})", steps, t)
        rate = float(np.max(np.abs(nxt - u))) / dt
        u = nxt
        t += dt
        if dt_first is None:
            dt_first = dt_min = dt_max = dt
        else:
            dt_min = min(dt_min, dt)
            dt_max = max(dt_max, dt)
        left, right = integ.bracket_values(u)
        if not (left > 0 and right > 0):
            if not violated:
                log.warning("bracket positivity lost at step %d: %g, %g", steps, left, right)
            violated = True
            if spec.strict_positivity:
                raise PositivityViolation(
                    f"bracket values {left!r}, {right!r} at step {steps}", steps)
        if hist is not None and (steps % history_stride == 0):
            hist.append((steps, t, dt, rate, left, right))
        if rate < spec.steady_tol:
            converged = True
            break
        if spec.t_final is not None and t >= spec.t_final:
            break

    if steps == spec.max_steps and not converged:
        log.info("step budget %d exhausted at t=%g (rate %g)", steps, t, rate)
    exact = _oracle_values(oracle, grid)
    return SolveReport(
        field=u,
        t_reached=t,
        steps=steps,
        dt_first=dt_first or 0.0,
        dt_min=dt_min or 0.0,
        dt_max=dt_max or 0.0,
        converged=converged,
        positivity_violated=violated,
        final_rate=rate,
        cfl=cfl,
        cfl_bound=spec.cfl_bound,
        max_error=None if exact is None else float(np.max(np.abs(u - exact))),
        exact=exact,
        history=_history_arrays(hist),
    )


def _history_arrays(hist):
    if hist is None:
        return None
    arr = np.array(hist, dtype=float).reshape(-1, len(HISTORY_FIELDS))
    out = {name: arr[:, k] for k, name in enumerate(HISTORY_FIELDS)}
    out["step"] = out["step"].astype(np.int64)
    return out


def steady_quadratic_residual(u: np.ndarray, D: DiffOp, c: float, beta: float) -> float:
    """``||u*u - 2 H_c - beta^2||_inf``.

    Any solution of ``D (u^2 / 2) = D H_c`` with ``u[0] = beta`` makes this
    vanish, whatever the signs of ``u`` past the jump.
    """
    H = heaviside_samples(D.grid, c)
    return float(np.max(np.abs(u * u - 2.0 * H - beta**2)))


def heaviside_error(u: np.ndarray, grid: Grid1D, c: float, beta: float, alpha: float) -> float:
    """``max |H_c - (u - beta)/(alpha - beta)|`` over the grid points."""
    H = heaviside_samples(grid, c)
    return float(np.max(np.abs(H - (u - beta) / (alpha - beta))))
