"""Finite ("general-quantized") harmonic oscillator: spectra, uncertainty
bounds, regime estimates, and scale-algebra stability checks.

Everything is computed by the C++ core; this package is a thin re-export.
"""

from ._core import (
    classify,
    closed_ladder,
    constants,
    constants_from_spectral,
    contraction,
    equipartition,
    excitation_interaction,
    flex_report,
    ground_estimate,
    ground_state,
    limit_deviation,
    max_exact_l,
    segal_report,
    spectrum,
    stability_report,
    uncertainty,
    variational_bound,
    zero_point,
    zero_point_sweep,
)

__all__ = [
    "classify",
    "closed_ladder",
    "constants",
    "constants_from_spectral",
    "contraction",
    "equipartition",
    "excitation_interaction",
    "flex_report",
    "ground_estimate",
    "ground_state",
    "limit_deviation",
    "max_exact_l",
    "segal_report",
    "spectrum",
    "stability_report",
    "uncertainty",
    "variational_bound",
    "zero_point",
    "zero_point_sweep",
]
