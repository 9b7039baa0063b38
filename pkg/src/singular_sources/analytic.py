"""Closed-form steady states and exact solutions used as oracles.

All one-dimensional fields are piecewise constant with jumps at the source
locations and use the convention ``H_c(c) = 1``. Only the positive branch
of each root is returned: the explicit Euler integration starting from a
positive constant state stays positive at the source brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .delta_models import SourceTerm
from .errors import UnsupportedRegimeError


def _check_beta(beta):
    if not beta > 0:
        raise UnsupportedRegimeError(f"only beta > 0 is supported, got {beta!r}")


class PiecewiseConstant:
    """Callable step field ``x -> values[k]`` for ``jumps[k-1] <= x < jumps[k]``."""

    def __init__(self, jumps, values):
        self.jumps = np.asarray(jumps, dtype=float)
        self.values = np.asarray(values, dtype=float)
        assert len(self.values) == len(self.jumps) + 1

    def __call__(self, x):
        idx = np.searchsorted(self.jumps, x, side="right")
        out = self.values[idx]
        return float(out) if np.ndim(out) == 0 else out

    def __repr__(self):
        return f"PiecewiseConstant(jumps={self.jumps.tolist()}, values={self.values.tolist()})"


@dataclass(frozen=True)
class SteadyState1D:
    beta: float
    alpha_per_jump: tuple[float, ...]
    source: SourceTerm
    degree: int

    @property
    def field(self) -> PiecewiseConstant:
        return PiecewiseConstant(self.source.locations, (self.beta,) + self.alpha_per_jump)

    def __call__(self, x):
        return self.field(x)


def degree_m_jump(beta: float, m: int, strength: float = 1.0) -> float:
    """Post-jump value ``alpha`` solving ``alpha^m - beta^m = m * strength``."""
    return (m * strength + beta**m) ** (1.0 / m)


def steady_degree_m(beta: float, m: int, c: float, a: float = 1.0) -> SteadyState1D:
    """Steady state ``(alpha - beta) H_c + beta`` of ``u_t + (u^m/m)_x = a delta_c``."""
    _check_beta(beta)
    if m < 1:
        raise UnsupportedRegimeError(f"degree must be >= 1, got {m}")
    src = SourceTerm.single(c, a)
    return SteadyState1D(beta, (degree_m_jump(beta, m, a),), src, m)


def steady_burgers(beta: float, c: float) -> SteadyState1D:
    """Burgers steady state with ``alpha = sqrt(2 + beta^2)``."""
    _check_beta(beta)
    src = SourceTerm.single(c, 1.0)
    return SteadyState1D(beta, (math.sqrt(2.0 + beta**2),), src, 2)


def steady_multi_source(beta: float, source: SourceTerm) -> SteadyState1D:
    """Burgers steady state for several sources.

    With cumulative strengths ``b_i = sum_{j<=i} 2 a_j`` the field takes the
    value ``sqrt(b_i + beta^2)`` just right of ``c_i``.
    """
    _check_beta(beta)
    b = np.cumsum([2.0 * a for a in source.amplitudes])
    return SteadyState1D(beta, tuple(float(math.sqrt(v + beta**2)) for v in b), source, 2)


def on_ray(x, y, a: float = 1.0, b: float = 1.0, atol: float = 1e-12):
    """Indicator of the characteristic ray ``b x = a y`` with ``x >= 0``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.isclose(b * x, a * y, rtol=0.0, atol=atol) & (x >= 0)


def exact_2d_advection(x, y, t, a: float = 1.0, b: float = 1.0):
    """``sin(pi(x - t)) sin(pi(y - t))`` plus one on the ray through the origin."""
    val = np.sin(np.pi * (np.asarray(x) - t)) * np.sin(np.pi * (np.asarray(y) - t))
    val = val + on_ray(x, y, a, b)
    return float(val) if np.ndim(val) == 0 else val


def steady_2d_nonlinear(x, y, beta: float):
    """``sqrt(2 + beta^2)`` on the diagonal ray ``x = y >= 0``, ``beta`` elsewhere."""
    _check_beta(beta)
    val = np.where(on_ray(x, y), math.sqrt(2.0 + beta**2), float(beta))
    return float(val) if np.ndim(val) == 0 else val
