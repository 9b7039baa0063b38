"""Discrete representations of Dirac delta sources.

Three schemes are provided:

* direct projection, ``delta ~ D @ H_c``;
* the consistently scaled projection, where ``D @ H_c`` is multiplied
  elementwise by ``m u^{m-1}`` and divided by the bracket denominator
  ``sum_j u[i]^{m-j} u[i+1]^{j-1}`` so that the source scales with the
  nonlinear transport term ``u^{m-1} D u``;
* a Gaussian kernel normalized to unit trapezoidal mass on the grid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateDenominatorError, InvalidArgumentError
from .spectral_core import DiffOp, Grid1D, bracket_source, heaviside_samples


class DeltaKind(enum.Enum):
    DIRECT = "direct"
    CONSISTENT = "consistent"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class DeltaScheme:
    kind: DeltaKind
    sigma: float | None = None

    def __post_init__(self):
        kind = self.kind if isinstance(self.kind, DeltaKind) else DeltaKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is DeltaKind.GAUSSIAN:
            if self.sigma is None or not self.sigma > 0:
                raise InvalidArgumentError("Gaussian scheme needs sigma > 0")
        elif self.sigma is not None:
            raise InvalidArgumentError(f"sigma only applies to the Gaussian scheme")

    @classmethod
    def direct(cls):
        return cls(DeltaKind.DIRECT)

    @classmethod
    def consistent(cls):
        return cls(DeltaKind.CONSISTENT)

    @classmethod
    def gaussian(cls, sigma: float):
        return cls(DeltaKind.GAUSSIAN, float(sigma))


@dataclass(frozen=True)
class SourceTerm:
    """Point sources ``sum_i a_i delta(x - c_i)``."""

    locations: tuple[float, ...]
    amplitudes: tuple[float, ...]

    def __post_init__(self):
        locs = tuple(float(c) for c in self.locations)
        amps = tuple(float(a) for a in self.amplitudes)
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "amplitudes", amps)
        if not locs:
            raise InvalidArgumentError("at least one source is required")
        if len(locs) != len(amps):
            raise InvalidArgumentError("locations and amplitudes differ in length")
        if any(b <= a for a, b in zip(locs, locs[1:])):
            raise InvalidArgumentError("source locations must be strictly increasing")
        if any(not a > 0 for a in amps):
            raise InvalidArgumentError("source amplitudes must be positive")

    @classmethod
    def single(cls, c: float, a: float = 1.0):
        return cls((c,), (a,))

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, float]]):
        """Build from ``(amplitude, location)`` pairs."""
        pairs = sorted(pairs, key=lambda p: p[1])
        return cls(tuple(c for _, c in pairs), tuple(a for a, _ in pairs))

    def __len__(self):
        return len(self.locations)

    def __iter__(self):
        return iter(zip(self.amplitudes, self.locations))


@dataclass(frozen=True)
class ScalingDenominator:
    value: float
    bracket: tuple[int, int]
    degree: int


def project_delta(D: DiffOp, grid: Grid1D, c: float) -> np.ndarray:
    """Direct projection ``D @ H_c`` of ``delta(x - c)`` onto the grid."""
    return D.matrix @ heaviside_samples(grid, c)


def trapezoid_weights(points: np.ndarray) -> np.ndarray:
    """Composite trapezoidal weights on a possibly nonuniform grid."""
    h = np.diff(points)
    w = np.zeros(len(points))
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    return w


def gaussian_delta(grid: Grid1D, c: float, sigma: float) -> np.ndarray:
    """Gaussian approximation of ``delta(x - c)`` with unit discrete mass.

    The kernel ``exp(-(x - c)^2 / (2 sigma^2))`` is rescaled so that its
    trapezoidal quadrature on the grid is exactly one.
    """
    if not sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma!r}")
    heaviside_samples(grid, c)  # domain check
    x = grid.points
    g = np.exp(-((x - c) ** 2) / (2.0 * sigma**2))
    mass = trapezoid_weights(x) @ g
    if mass == 0.0:
        raise InvalidArgumentError(f"sigma={sigma} too small to resolve on this grid")
    return g / mass


def scaling_denominator(u, bracket: tuple[int, int], m: int) -> ScalingDenominator:
    """Bracket denominator ``sum_{j=1}^m u[i]^(m-j) * u[i+1]^(j-1)``.

    For ``m = 2`` this is ``u[i] + u[i+1]``, twice the bracket average;
    for ``m = 1`` it is 1. It satisfies
    ``(alpha - beta) * value == alpha^m - beta^m`` when
    ``u[i] = beta`` and ``u[i+1] = alpha``.
    """
    if int(m) != m or m < 1:
        raise InvalidArgumentError(f"degree must be an integer >= 1, got {m!r}")
    m = int(m)
    i, k = bracket
    left, right = float(u[i]), float(u[k])
    value = sum(left ** (m - j) * right ** (j - 1) for j in range(1, m + 1))
    if value == 0.0:
        raise DegenerateDenominatorError(
            f"scaling denominator vanished at bracket {bracket} "
            f"(u={left!r}, {right!r}, m={m})"
        )
    return ScalingDenominator(value, (i, k), m)


def consistent_rhs(
    u: np.ndarray, D: DiffOp, grid: Grid1D, source: SourceTerm, m: int,
    projections: Sequence[np.ndarray] | None = None,
    brackets: Sequence[tuple[int, int]] | None = None,
) -> np.ndarray:
    """Consistently scaled source term for ``u_t + (u^m/m)_x = sum a_i delta_i``.

    Each source gets its own bracket and denominator; the scaled terms are
    summed. ``projections`` and ``brackets`` may be passed to reuse the
    per-source ``D @ H_c`` vectors across time steps.
    """
    if m < 2:
        raise InvalidArgumentError("consistent scaling needs degree m >= 2")
    if projections is None:
        projections = [project_delta(D, grid, c) for c in source.locations]
    if brackets is None:
        brackets = [bracket_source(grid, c) for c in source.locations]
    weight = m * u ** (m - 1)
    out = np.zeros_like(u, dtype=float)
    for k, (a, proj, br) in enumerate(zip(source.amplitudes, projections, brackets)):
        try:
            denom = scaling_denominator(u, br, m).value
        except DegenerateDenominatorError as exc:
            raise DegenerateDenominatorError(
                f"source {k} (c={source.locations[k]}): {exc}", source_index=k
            ) from None
        out += (a / denom) * weight * proj
    return out
