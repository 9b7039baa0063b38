"""Collocation grids and dense differentiation operators on [-1, 1].

Points are always stored in ascending order. For the Chebyshev
Gauss-Lobatto grid this means ``x_i = -cos(i*pi/n)``, so the corner
entries of the collocation matrix carry the opposite sign to the usual
descending-order tables: ``D[0, 0] = -(2n^2 + 1)/6`` and
``D[n, n] = +(2n^2 + 1)/6``. Exact differentiation of monomials is the
check that fixes these signs (see ``tests/test_spectral_core.py``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, SourceOutOfDomainError


class GridKind(enum.Enum):
    CHEBYSHEV = "chebyshev"
    UNIFORM = "uniform"


class OperatorKind(enum.Enum):
    CHEBYSHEV = "chebyshev"
    FORWARD = "forward"
    # Upwind one-sided difference for positive transport speeds.
    BACKWARD = "backward"


@dataclass(frozen=True, eq=False)
class Grid1D:
    points: np.ndarray
    kind: GridKind
    n: int
    min_spacing: float = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "min_spacing", float(np.min(np.diff(pts))))

    @property
    def spacing(self) -> np.ndarray:
        return np.diff(self.points)

    def __len__(self):
        return self.n + 1


@dataclass(frozen=True, eq=False)
class DiffOp:
    matrix: np.ndarray
    grid: Grid1D
    kind: OperatorKind
    inf_norm: float = field(init=False)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "inf_norm", float(np.abs(mat).sum(axis=1).max()))

    def __matmul__(self, other):
        return self.matrix @ other

    @property
    def positivity_cfl(self) -> float:
        """Largest Courant constant covered by the positivity argument,
        ``min(1/(2*||D||_inf), 1/2)``."""
        return min(1.0 / (2.0 * self.inf_norm), 0.5)


def _as_grid_kind(kind) -> GridKind:
    try:
        return kind if isinstance(kind, GridKind) else GridKind(kind)
    except ValueError:
        raise InvalidArgumentError(f"unknown grid kind {kind!r}") from None


def _as_operator_kind(kind) -> OperatorKind:
    try:
        return kind if isinstance(kind, OperatorKind) else OperatorKind(kind)
    except ValueError:
        raise InvalidArgumentError(f"unknown operator kind {kind!r}") from None


def make_grid(kind, n: int) -> Grid1D:
    """Build an ascending collocation grid with ``n + 1`` points on [-1, 1].

    Parameters
    ----------
    kind : GridKind or str
        ``"chebyshev"`` for Gauss-Lobatto points ``-cos(i*pi/n)``,
        ``"uniform"`` for ``-1 + 2i/n``.
    n : int
        Polynomial degree (Chebyshev) or number of intervals (uniform),
        at least 2.
    """
    kind = _as_grid_kind(kind)
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise InvalidArgumentError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    i = np.arange(n + 1)
    if kind is GridKind.CHEBYSHEV:
        # -cos(i pi/n) written as a sine: exactly antisymmetric, with x = 0 at i = n/2
        x = np.sin(np.pi * (2 * i - n) / (2 * n))
    else:
        x = -1.0 + 2.0 * i / n
        x = 0.5 * (x - x[::-1])
    x[0], x[-1] = -1.0, 1.0
    return Grid1D(x, kind, n)


def _chebyshev_matrix(x: np.ndarray) -> np.ndarray:
    n = len(x) - 1
    i = np.arange(n + 1)
    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    D = np.outer(c, 1.0 / c) * (-1.0) ** (i[:, None] + i[None, :]) / dx
    # Diagonal from the zero-row-sum condition instead of the closed forms
    # -x_i/(2(1-x_i^2)) and -/+(2n^2+1)/6: the closed forms leave row sums of
    # order 1e-8 at n = 256, the negative sum keeps them near 1e-12.
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def _one_sided_matrix(x: np.ndarray, forward: bool) -> np.ndarray:
    n = len(x) - 1
    inv = 1.0 / np.diff(x)
    D = np.zeros((n + 1, n + 1))
    if forward:
        rows = np.arange(n)
        D[rows, rows] = -inv
        D[rows, rows + 1] = inv
        D[n, n - 1], D[n, n] = -inv[-1], inv[-1]
    else:
        rows = np.arange(1, n + 1)
        D[rows, rows - 1] = -inv
        D[rows, rows] = inv
        D[0, 0], D[0, 1] = -inv[0], inv[0]
    return D


def make_diff_op(grid: Grid1D, kind) -> DiffOp:
    """Dense first-derivative matrix on ``grid``.

    The Chebyshev collocation matrix needs a Chebyshev grid. The one-sided
    difference matrices work on any grid; the forward matrix closes its
    last row with the backward stencil and the backward matrix closes its
    first row with the forward stencil, so both annihilate constants.
    """
    kind = _as_operator_kind(kind)
    if kind is OperatorKind.CHEBYSHEV:
        if grid.kind is not GridKind.CHEBYSHEV:
            raise InvalidArgumentError(
                "Chebyshev collocation requires a Chebyshev Gauss-Lobatto grid"
            )
        mat = _chebyshev_matrix(grid.points)
    else:
        mat = _one_sided_matrix(grid.points, forward=kind is OperatorKind.FORWARD)
    return DiffOp(mat, grid, kind)


def _check_interior(c: float):
    if not (-1.0 < c < 1.0):
        raise SourceOutOfDomainError(f"source location {c!r} outside (-1, 1)")


def heaviside_samples(grid: Grid1D, c: float) -> np.ndarray:
    """Samples of the step ``H_c(x) = [x >= c]`` at the grid points."""
    _check_interior(c)
    return (grid.points >= c).astype(float)


def bracket_source(grid: Grid1D, c: float) -> tuple[int, int]:
    """Return ``(i, i + 1)`` with ``points[i] < c <= points[i + 1]``."""
    x = grid.points
    if not (x[0] < c <= x[-1]):
        raise SourceOutOfDomainError(f"source location {c!r} not in (x_0, x_n]")
    i = int(np.searchsorted(x, c, side="left")) - 1
    return i, i + 1
