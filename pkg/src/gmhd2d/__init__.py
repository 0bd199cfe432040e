"""Pseudo-spectral simulator and diagnostics for 2D MHD with fractional dissipation."""

from .diagnostics import DiagnosticsConfig, DiagnosticsRecord, energy_balance_residual, gamma_choice, sample
from .mhd import MhdState, SimParams, curl2d, rhs_velocity_form, rhs_vorticity_form, velocity_from_vorticity
from .regime import classify, region_boundary_table
from .spectral import ScalarField, SpectralGrid, VectorField, get_grid
from .timestepper import StepPolicy, detect_blowup, step

__version__ = "0.1.0"

__all__ = [
    "DiagnosticsConfig",
    "DiagnosticsRecord",
    "MhdState",
    "ScalarField",
    "SimParams",
    "SpectralGrid",
    "StepPolicy",
    "VectorField",
    "classify",
    "curl2d",
    "detect_blowup",
    "energy_balance_residual",
    "gamma_choice",
    "get_grid",
    "region_boundary_table",
    "rhs_velocity_form",
    "rhs_vorticity_form",
    "sample",
    "step",
    "velocity_from_vorticity",
]
