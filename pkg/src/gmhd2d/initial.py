"""Built-in initial conditions.  All are band-limited, hence smooth."""

from __future__ import annotations

import numpy as np

from .config import ICSpec
from .errors import BadSpec
from .mhd import MhdState
from .spectral import AREA, ScalarField, SpectralGrid, VectorField, dealias, hermitian_part, leray_project


def orszag_tang(grid: SpectralGrid):
    """``u = (-sin y, sin x)``, ``b = (-sin y, sin 2x)``."""
    x, y = grid.x
    u = VectorField.from_values(grid, -np.sin(y), np.sin(x))
    b = VectorField.from_values(grid, -np.sin(y), np.sin(2 * x))
    return u, b


def single_mode(grid: SpectralGrid, axis: int, wavenumber: int, amplitude: float):
    """One sine mode in component ``axis``, varying along the other coordinate.

    ``axis=2`` gives ``(0, A sin(k x))``; ``axis=1`` gives ``(A sin(k y), 0)``.
    Both are divergence-free.
    """
    x, y = grid.x
    zero = np.zeros_like(x)
    if axis == 2:
        return VectorField.from_values(grid, zero, amplitude * np.sin(wavenumber * x))
    return VectorField.from_values(grid, amplitude * np.sin(wavenumber * y), zero)


def random_smooth(grid: SpectralGrid, rng: np.random.Generator, slope: float, cutoff: float) -> VectorField:
    """Random-phase divergence-free field with mode amplitude ``|k|^-slope``.

    Modes with ``0 < |k| <= cutoff`` are excited.  The result is scaled to unit
    RMS speed (``||v||_{L^2} = 2 pi``).
    """
    n = grid.n
    band = (grid.kabs > 0) & (grid.kabs <= cutoff)
    amp = np.where(band, grid.kabs, 1.0) ** (-slope) * band
    comps = []
    for _ in range(2):
        phase = np.exp(2j * np.pi * rng.random((n, n)))
        comps.append(ScalarField(grid, hermitian_part(amp * phase)))
    v = leray_project(VectorField(*comps))
    norm = v.l2_norm()
    if norm == 0:
        raise BadSpec("random_smooth produced a zero field; raise the cutoff")
    scale = np.sqrt(AREA) / norm
    return VectorField(v.c1 * scale, v.c2 * scale)


def make_initial_condition(spec: ICSpec, grid: SpectralGrid) -> MhdState:
    kmax = grid.kmax_retained
    if spec.kind == "orszag_tang":
        u, b = orszag_tang(grid)
    elif spec.kind == "zero":
        u, b = VectorField.zeros(grid), VectorField.zeros(grid)
    elif spec.kind == "single_mode":
        if spec.wavenumber > kmax:
            raise BadSpec(f"wavenumber {spec.wavenumber} exceeds the dealiased band (<= {kmax})")
        mode = single_mode(grid, spec.axis, spec.wavenumber, spec.amplitude)
        zero = VectorField.zeros(grid)
        u, b = (mode, zero) if spec.target == "u" else (zero, mode)
    elif spec.kind == "random_smooth":
        if spec.cutoff > kmax:
            raise BadSpec(f"cutoff {spec.cutoff} exceeds the dealiased band (<= {kmax})")
        rng = np.random.default_rng(spec.seed)
        u = random_smooth(grid, rng, spec.spectral_slope, spec.cutoff)
        b = random_smooth(grid, rng, spec.spectral_slope, spec.cutoff)
    else:
        raise BadSpec(f"unknown initial condition {spec.kind!r}")
    state = MhdState.from_velocity(u, b)
    return MhdState(dealias(state.w), dealias(state.j), 0.0)
