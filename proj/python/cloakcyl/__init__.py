"""Plane-wave scattering from a dielectric-coated PEC cylinder."""

from ._core import (
    DipoleMoments,
    Geometry,
    ModalSolution,
    StudySetup,
    bare_reference,
    dipole_moments,
    far_amplitude,
    figure_dataset,
    optimal_frequency_ratio,
    optimal_permittivity,
    pattern,
    sigma_norm,
    sigma_norm_moments,
    solve_modes,
    sweep,
    validate,
)

__all__ = [
    "DipoleMoments",
    "Geometry",
    "ModalSolution",
    "StudySetup",
    "bare_reference",
    "dipole_moments",
    "far_amplitude",
    "figure_dataset",
    "optimal_frequency_ratio",
    "optimal_permittivity",
    "pattern",
    "sigma_norm",
    "sigma_norm_moments",
    "solve_modes",
    "sweep",
    "validate",
]
