"""Collocation solvers for nonlinear conservation laws with Dirac delta sources."""

from .analytic import (
    exact_2d_advection,
    steady_2d_nonlinear,
    steady_burgers,
    steady_degree_m,
    steady_multi_source,
)
from .delta_models import (
    DeltaKind,
    DeltaScheme,
    SourceTerm,
    consistent_rhs,
    gaussian_delta,
    project_delta,
    scaling_denominator,
)
from .errors import (
    ConfigError,
    DegenerateDenominatorError,
    DegenerateTimestepError,
    DivergenceError,
    InvalidArgumentError,
    PositivityViolation,
    SolverError,
    SourceOutOfDomainError,
    UnsupportedRegimeError,
)
from .solver1d import ProblemSpec1D, SolveReport, adaptive_dt, euler_step, run_to_steady
from .solver2d import Equation2D, Problem2D, run_2d
from .spectral_core import (
    DiffOp,
    Grid1D,
    GridKind,
    OperatorKind,
    bracket_source,
    heaviside_samples,
    make_diff_op,
    make_grid,
)

__version__ = "0.1.0"
