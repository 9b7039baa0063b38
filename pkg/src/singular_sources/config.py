"""Flat ``key = value`` experiment configuration files.

One key per line, ``#`` starts a comment, blank lines are ignored::

    id = my-run
    dimension = 1          # 1 or 2
    equation = burgers     # 1D: burgers; 2D: nonlinear | advection
    degree = 2             # flux u^m/m (1D only)
    sources = 0.5@-0.7, 2@0, 1@0.3   # amplitude@location (1D only)
    beta = 2
    scheme = consistent    # direct | consistent | gaussian
    sigma = 0.02           # gaussian only
    grid = chebyshev       # chebyshev | uniform
    operator = chebyshev   # chebyshev | forward | backward
    n = 64
    cfl = 0.5
    t_final = steady       # a positive number or "steady"
    steady_tol = 1e-10
    max_steps = 10000000
    a = 1                  # 2D advection speeds
    b = 1
    initial = oracle       # 2D advection: oracle | sine
    oracle = true          # compare against the exact solution
    diag_stride = 1        # write every k-th step to diagnostics.csv
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import ConfigError

N_RANGE = (2, 2048)


@dataclass
class ExperimentConfig:
    id: str
    dimension: int = 1
    equation: str = "burgers"
    degree: int = 2
    sources: tuple[tuple[float, float], ...] = ((1.0, -0.1),)
    beta: float = 2.0
    scheme: str = "consistent"
    sigma: float | None = None
    grid: str = "chebyshev"
    operator: str | None = None
    n: int = 64
    cfl: float = 0.5
    t_final: float | None = None
    steady_tol: float = 1e-10
    max_steps: int = 10_000_000
    a: float = 1.0
    b: float = 1.0
    initial: str = "oracle"
    oracle: bool = True
    diag_stride: int = 1

    def __post_init__(self):
        self.validate()

    @property
    def operator_kind(self) -> str:
        if self.operator is not None:
            return self.operator
        return "chebyshev" if self.grid == "chebyshev" else "backward"

    def validate(self):
        if not isinstance(self.id, str) or not self.id.strip():
            raise ConfigError("id", "must be a nonempty string")
        if self.dimension not in (1, 2):
            raise ConfigError("dimension", f"must be 1 or 2, got {self.dimension!r}")
        allowed = ("burgers",) if self.dimension == 1 else ("nonlinear", "advection")
        if self.equation not in allowed:
            raise ConfigError("equation", f"must be one of {allowed} for dimension {self.dimension}")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ConfigError("degree", f"must be an integer >= 1, got {self.degree!r}")
        if self.dimension == 1:
            if not self.sources:
                raise ConfigError("sources", "at least one source is required")
            for amp, loc in self.sources:
                if not amp > 0:
                    raise ConfigError("sources", f"amplitudes must be positive, got {amp}")
                if not -1.0 < loc < 1.0:
                    raise ConfigError("sources", f"location {loc} outside (-1, 1)")
            locs = [loc for _, loc in self.sources]
            if len(set(locs)) != len(locs):
                raise ConfigError("sources", "locations must be distinct")
        if not self.beta > 0 and not (self.dimension == 2 and self.equation == "advection"):
            raise ConfigError("beta", f"must be positive, got {self.beta!r}")
        if self.scheme not in ("direct", "consistent", "gaussian"):
            raise ConfigError("scheme", f"unknown scheme {self.scheme!r}")
        if self.scheme == "gaussian":
            if self.sigma is None or not self.sigma > 0:
                raise ConfigError("sigma", "gaussian scheme needs sigma > 0")
        elif self.sigma is not None:
            raise ConfigError("sigma", "only valid with scheme = gaussian")
        if self.grid not in ("chebyshev", "uniform"):
            raise ConfigError("grid", f"unknown grid kind {self.grid!r}")
        if self.operator not in (None, "chebyshev", "forward", "backward"):
            raise ConfigError("operator", f"unknown operator kind {self.operator!r}")
        if self.operator_kind == "chebyshev" and self.grid != "chebyshev":
            raise ConfigError("operator", "chebyshev operator requires grid = chebyshev")
        if not isinstance(self.n, int) or not N_RANGE[0] <= self.n <= N_RANGE[1]:
            raise ConfigError("n", f"must be an integer in [{N_RANGE[0]}, {N_RANGE[1]}], got {self.n!r}")
        if not self.cfl > 0:
            raise ConfigError("cfl", f"must be positive, got {self.cfl!r}")
        if self.t_final is not None and not self.t_final > 0:
            raise ConfigError("t_final", "must be positive or 'steady'")
        if self.dimension == 2 and self.equation == "advection" and self.t_final is None:
            raise ConfigError("t_final", "advection has no steady state; give a final time")
        if not self.steady_tol > 0:
            raise ConfigError("steady_tol", "must be positive")
        if not isinstance(self.max_steps, int) or self.max_steps < 1:
            raise ConfigError("max_steps", "must be a positive integer")
        if not (self.a > 0 and self.b > 0):
            raise ConfigError("a" if not self.a > 0 else "b", "advection speeds must be positive")
        if self.initial not in ("oracle", "sine"):
            raise ConfigError("initial", "must be 'oracle' or 'sine'")
        if not isinstance(self.diag_stride, int) or self.diag_stride < 1:
            raise ConfigError("diag_stride", "must be a positive integer")

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


def _parse_sources(text: str):
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "@" not in item:
            raise ConfigError("sources", f"expected amplitude@location, got {item!r}")
        amp, loc = item.split("@", 1)
        try:
            pairs.append((float(amp), float(loc)))
        except ValueError:
            raise ConfigError("sources", f"non-numeric entry {item!r}") from None
    return tuple(sorted(pairs, key=lambda p: p[1]))


def _parse_bool(text: str):
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


def _parse_t_final(text: str):
    return None if text.lower() == "steady" else float(text)


_PARSERS = {
    "id": str,
    "dimension": int,
    "equation": str.lower,
    "degree": int,
    "sources": _parse_sources,
    "beta": float,
    "scheme": str.lower,
    "sigma": float,
    "grid": str.lower,
    "operator": str.lower,
    "n": int,
    "cfl": float,
    "t_final": _parse_t_final,
    "steady_tol": float,
    "max_steps": int,
    "a": float,
    "b": float,
    "initial": str.lower,
    "oracle": _parse_bool,
    "diag_stride": int,
}


def parse_config(text: str) -> ExperimentConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(key, "unknown configuration key")
        if key in values:
            raise ConfigError(key, "given more than once")
        try:
            values[key] = _PARSERS[key](value)
        except ConfigError:
            raise
        except ValueError:
            raise ConfigError(key, f"cannot parse {value!r}") from None
    if "id" not in values:
        raise ConfigError("id", "missing")
    return ExperimentConfig(**values)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(cfg: ExperimentConfig) -> str:
    """Inverse of :func:`parse_config`."""
    lines = []
    for f in dataclasses.fields(cfg):
        val = getattr(cfg, f.name)
        if val is None and f.name != "t_final":
            continue
        if f.name == "sources":
            val = ", ".join(f"{a!r}@{c!r}" for a, c in val)
        elif f.name == "t_final":
            val = "steady" if val is None else repr(val)
        elif isinstance(val, bool):
            val = str(val).lower()
        elif isinstance(val, float):
            val = repr(val)
        lines.append(f"{f.name} = {val}")
    return "\n".join(lines) + "\n"
