"""Run configured experiments and write their CSV outputs."""

from __future__ import annotations

import csv
import io
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analytic import degree_m_jump, steady_degree_m, steady_multi_source
from .config import ExperimentConfig
from .delta_models import DeltaScheme, SourceTerm
from .errors import SolverError
from .solver1d import HISTORY_FIELDS, ProblemSpec1D, SolveReport, heaviside_error, run_to_steady
from .solver2d import Equation2D, Problem2D, run_2d
from .spectral_core import make_diff_op, make_grid

log = logging.getLogger(__name__)

OUT_ENV = "SSS_OUT_DIR"


class ExperimentError(SolverError):
    def __init__(self, experiment_id, cause):
        super().__init__(f"[{experiment_id}] {type(cause).__name__}: {cause}")
        self.experiment_id = experiment_id
        self.cause = cause


def default_out_root() -> Path:
    return Path(os.environ.get(OUT_ENV, "sss-out"))


def fmt(v) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(v), ".17g")


def _scheme(cfg: ExperimentConfig) -> DeltaScheme:
    if cfg.scheme == "gaussian":
        return DeltaScheme.gaussian(cfg.sigma)
    return DeltaScheme(cfg.scheme)


def build_problem(cfg: ExperimentConfig, max_steps: int | None = None, cfl: float | None = None):
    grid = make_grid(cfg.grid, cfg.n)
    diff = make_diff_op(grid, cfg.operator_kind)
    steps = cfg.max_steps if max_steps is None else max_steps
    cfl = cfg.cfl if cfl is None else cfl
    if cfg.dimension == 1:
        return ProblemSpec1D(
            degree=cfg.degree,
            source=SourceTerm.from_pairs(cfg.sources),
            beta=cfg.beta,
            scheme=_scheme(cfg),
            diff=diff,
            cfl=cfl,
            t_final=cfg.t_final,
            steady_tol=cfg.steady_tol,
            max_steps=steps,
        )
    return Problem2D(
        equation=Equation2D(cfg.equation),
        scheme=_scheme(cfg),
        diff=diff,
        beta=cfg.beta,
        a=cfg.a,
        b=cfg.b,
        cfl=cfl,
        t_final=cfg.t_final,
        steady_tol=cfg.steady_tol,
        max_steps=steps,
        initial=cfg.initial,
    )


def oracle_1d(cfg: ExperimentConfig):
    source = SourceTerm.from_pairs(cfg.sources)
    if len(source) == 1:
        return steady_degree_m(cfg.beta, cfg.degree, source.locations[0], source.amplitudes[0])
    if cfg.degree != 2:
        raise ValueError("multi-source oracle is only available for degree 2")
    return steady_multi_source(cfg.beta, source)


def solve(cfg: ExperimentConfig, max_steps: int | None = None, cfl: float | None = None,
          record_history: bool = True) -> SolveReport:
    """Build and run the problem described by ``cfg`` without writing files."""
    try:
        problem = build_problem(cfg, max_steps=max_steps, cfl=cfl)
        if cfg.dimension == 1:
            oracle = oracle_1d(cfg) if cfg.oracle else None
            return run_to_steady(problem, oracle=oracle, record_history=record_history,
                                 history_stride=cfg.diag_stride)
        return run_2d(problem, oracle=cfg.oracle, record_history=record_history,
                      history_stride=cfg.diag_stride)
    except SolverError as exc:
        raise ExperimentError(cfg.id, exc) from exc


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def solution_csv(cfg: ExperimentConfig, report: SolveReport) -> str:
    x = make_grid(cfg.grid, cfg.n).points
    u = report.field
    exact = report.exact
    if cfg.dimension == 1:
        header = ["x", "u", "exact", "abs_err"]
        rows = []
        for k in range(len(x)):
            ex = "" if exact is None else fmt(exact[k])
            err = "" if exact is None else fmt(abs(u[k] - exact[k]))
            rows.append([fmt(x[k]), fmt(u[k]), ex, err])
    else:
        header = ["x", "y", "u", "exact", "abs_err"]
        rows = []
        for i in range(len(x)):
            for j in range(len(x)):
                ex = "" if exact is None else fmt(exact[i, j])
                err = "" if exact is None else fmt(abs(u[i, j] - exact[i, j]))
                rows.append([fmt(x[j]), fmt(x[i]), fmt(u[i, j]), ex, err])
    return _csv_text(header, rows)


def diagnostics_csv(report: SolveReport) -> str:
    h = report.history or {name: np.array([]) for name in HISTORY_FIELDS}
    rows = []
    for k in range(len(h["step"])):
        rows.append([str(int(h["step"][k]))] + [fmt(h[name][k]) for name in HISTORY_FIELDS[1:]])
    return _csv_text(list(HISTORY_FIELDS), rows)


def summary_text(cfg: ExperimentConfig, report: SolveReport) -> str:
    lines = [
        f"experiment: {cfg.id}",
        f"dimension: {cfg.dimension}  equation: {cfg.equation}  scheme: {cfg.scheme}",
        f"grid: {cfg.grid}  operator: {cfg.operator_kind}  n: {cfg.n}",
        f"steps: {report.steps}",
        f"t_reached: {fmt(report.t_reached)}",
        f"dt first/min/max: {fmt(report.dt_first)} / {fmt(report.dt_min)} / {fmt(report.dt_max)}",
        f"final_residual_rate: {fmt(report.final_rate)}",
        f"converged: {str(report.converged).lower()}",
        f"positivity_violated: {str(report.positivity_violated).lower()}",
        f"cfl: {fmt(report.cfl)}  positivity_bound: {fmt(report.cfl_bound)}"
        + ("  (cfl exceeds bound)" if report.cfl_exceeds_bound else ""),
    ]
    if report.max_error is not None:
        lines.append(f"max_abs_err: {fmt(report.max_error)}")
    return "\n".join(lines) + "\n"


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    report: SolveReport
    out_dir: Path
    summary: str


def run_experiment(cfg: ExperimentConfig, out_root=None, max_steps: int | None = None) -> ExperimentResult:
    """Solve ``cfg`` and write ``solution.csv``, ``diagnostics.csv`` and
    ``summary.txt`` into ``<out_root>/<id>/``."""
    out_dir = Path(out_root if out_root is not None else default_out_root()) / cfg.id
    report = solve(cfg, max_steps=max_steps)
    summary = summary_text(cfg, report)
    _atomic_write(out_dir / "solution.csv", solution_csv(cfg, report))
    _atomic_write(out_dir / "diagnostics.csv", diagnostics_csv(report))
    _atomic_write(out_dir / "summary.txt", summary)
    return ExperimentResult(cfg, report, out_dir, summary)


@dataclass(frozen=True)
class ErrorTableRow:
    degree: int
    max_error_prev: float
    max_error_new: float

    @property
    def ratio(self) -> float:
        if self.max_error_new > 0:
            return self.max_error_prev / self.max_error_new
        return float("inf")


TABLE1_DEGREES = tuple(range(2, 11))


def table1_row(m: int, n: int = 64, c: float = -0.1, beta: float = 2.0, cfl: float = 0.5,
               max_steps: int = 10_000_000) -> ErrorTableRow:
    grid = make_grid("chebyshev", n)
    diff = make_diff_op(grid, "chebyshev")
    alpha = degree_m_jump(beta, m)
    errs = {}
    for scheme in (DeltaScheme.direct(), DeltaScheme.consistent()):
        spec = ProblemSpec1D(m, SourceTerm.single(c), beta, scheme, diff, cfl=cfl,
                             max_steps=max_steps)
        try:
            rep = run_to_steady(spec, record_history=False)
        except SolverError as exc:
            raise ExperimentError(f"table1 m={m}", exc) from exc
        errs[scheme.kind.value] = heaviside_error(rep.field, grid, c, beta, alpha)
    return ErrorTableRow(m, errs["direct"], errs["consistent"])


def reproduce_table1(out_root=None, degrees=TABLE1_DEGREES, max_steps: int = 10_000_000):
    """Max-error ratio of the direct vs. scaled projection for each degree.

    The error is ``max |H_c - (u - beta)/(alpha - beta)|`` at the grid
    points, with ``alpha = (m + beta^m)^(1/m)``. Writes ``table1.csv`` when
    ``out_root`` is given.
    """
    rows = [table1_row(m, max_steps=max_steps) for m in degrees]
    if out_root is not None:
        text = _csv_text(
            ["m", "max_error_prev", "max_error_new", "ratio"],
            [[str(r.degree), fmt(r.max_error_prev), fmt(r.max_error_new), fmt(r.ratio)] for r in rows],
        )
        _atomic_write(Path(out_root) / "table1.csv", text)
    return rows
