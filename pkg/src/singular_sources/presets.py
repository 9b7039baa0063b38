"""Compiled-in experiment presets.

Each preset's comment records the parameter set of the experiment it
reproduces. Runs of the proposed scheme go to the steady state instead of
the display times (t = 1.63 in 1D, t = 1 in 2D): at those times the
Chebyshev runs are still relaxing toward the fixed point.
"""

from __future__ import annotations

from .config import ExperimentConfig

_FIG1 = dict(dimension=1, equation="burgers", degree=2, sources=((1.0, -0.1),),
             beta=2.0, grid="chebyshev", n=64, cfl=0.5)
_FIG3_SOURCES = ((0.5, -0.7), (2.0, 0.0), (1.0, 0.3))

PRESETS: dict[str, ExperimentConfig] = {
    # Burgers, c = -0.1, beta = 2, C = 0.5, N = 64; scaled projection.
    "fig1-proposed": ExperimentConfig(id="fig1-proposed", scheme="consistent", **_FIG1),
    # Same setup with the unscaled projection D H_c (Gibbs oscillations persist).
    "fig1-previous": ExperimentConfig(id="fig1-previous", scheme="direct", **_FIG1),
    # Three sources 0.5 d(x+0.7) + 2 d(x) + d(x-0.3), N = 256, beta = 2, C = 0.5.
    "fig3-proposed": ExperimentConfig(
        id="fig3-proposed", dimension=1, degree=2, sources=_FIG3_SOURCES, beta=2.0,
        scheme="consistent", grid="chebyshev", n=256, cfl=0.5),
    # Same sources, Gaussian sigma = 0.02, t = 1.5.
    "fig3-gaussian": ExperimentConfig(
        id="fig3-gaussian", dimension=1, degree=2, sources=_FIG3_SOURCES, beta=2.0,
        scheme="gaussian", sigma=0.02, grid="chebyshev", n=256, cfl=0.5, t_final=1.5),
    # u_t + u_x + u_y = delta at the origin, a = b = 1, N = 64, C = 0.5, t = 1.
    "fig4a-advection": ExperimentConfig(
        id="fig4a-advection", dimension=2, equation="advection", scheme="direct",
        grid="chebyshev", n=64, cfl=0.5, t_final=1.0),
    # u_t + u u_x + u u_y = delta, unscaled T D^t + D T, beta = 2, C = 0.5, N = 64, t = 1.
    # Diverges near the (1, 1) corner at this C.
    "fig4b-unscaled": ExperimentConfig(
        id="fig4b-unscaled", dimension=2, equation="nonlinear", scheme="direct",
        beta=2.0, grid="chebyshev", n=64, cfl=0.5, t_final=1.0),
    # As fig4b with C = 0.05, where the unscaled run stays bounded to t = 1.
    "fig4b-unscaled-c005": ExperimentConfig(
        id="fig4b-unscaled-c005", dimension=2, equation="nonlinear", scheme="direct",
        beta=2.0, grid="chebyshev", n=64, cfl=0.05, t_final=1.0),
    # Scaled 2D source, beta = 2, C = 0.5, N = 64.
    "fig4c-proposed": ExperimentConfig(
        id="fig4c-proposed", dimension=2, equation="nonlinear", scheme="consistent",
        beta=2.0, grid="chebyshev", n=64, cfl=0.5),
    # Gaussian sigma = 0.1 source, uniform N = 128, one-sided differences, t = 2.
    "fig5a-gaussian-advection": ExperimentConfig(
        id="fig5a-gaussian-advection", dimension=2, equation="advection",
        scheme="gaussian", sigma=0.1, grid="uniform", n=128, cfl=0.5, t_final=2.0),
    "fig5b-gaussian-nonlinear": ExperimentConfig(
        id="fig5b-gaussian-nonlinear", dimension=2, equation="nonlinear",
        scheme="gaussian", sigma=0.1, beta=2.0, grid="uniform", n=128, cfl=0.5, t_final=2.0),
    # Scaled source with one-sided differences on the uniform N = 64 grid.
    "fig5c-finite-difference": ExperimentConfig(
        id="fig5c-finite-difference", dimension=2, equation="nonlinear",
        scheme="consistent", beta=2.0, grid="uniform", n=64, cfl=0.5),
}

for _m in range(2, 11):
    # Degree-m runs behind the error-ratio table: c = -0.1, beta = 2, C = 0.5, N = 64.
    for _scheme, _tag in (("consistent", "proposed"), ("direct", "previous")):
        _name = f"fig2-m{_m}-{_tag}"
        PRESETS[_name] = ExperimentConfig(id=_name, scheme=_scheme, **{**_FIG1, "degree": _m})


def get_preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; see `sss list-presets`") from None
