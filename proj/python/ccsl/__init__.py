"""Colored collapse-noise predictions and exclusion bounds.

Noise arguments accept ``None`` or ``"inf"`` for white noise, a cutoff in
rad/s, an ``"exp:<omega_c>"`` string, or a :class:`NoiseSpec`.
"""

from ._core import (
    CcslError,
    Experiment,
    MassDistribution,
    NoiseSpec,
    cold_atom_bracket,
    default_rc_grid,
    erfcx,
    eta,
    force_psd,
    geometry_factor,
    lambda_eff,
    lambda_max,
    list_bundled,
    load,
    log_grid,
    parse,
    phonon_suppression,
    predict,
    scan,
    spectrum,
    xray_normalized,
)

__all__ = [
    "CcslError",
    "Experiment",
    "MassDistribution",
    "NoiseSpec",
    "cold_atom_bracket",
    "default_rc_grid",
    "erfcx",
    "eta",
    "force_psd",
    "geometry_factor",
    "lambda_eff",
    "lambda_max",
    "list_bundled",
    "load",
    "log_grid",
    "parse",
    "phonon_suppression",
    "predict",
    "scan",
    "spectrum",
    "xray_normalized",
]
