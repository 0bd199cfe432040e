"""Integrating-factor RK4 time stepping and blow-up monitoring.

The linear dissipation ``-rate * y`` is integrated exactly through the factors
``exp(-rate * dt)``; classical RK4 advances the nonlinear part in the
transformed variable ``exp(rate * t) y``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NonFiniteState
from .mhd import (
    MhdState,
    SimParams,
    dissipation_rates,
    velocity_nonlinear_half,
    vorticity_nonlinear_half,
)
from .spectral import ScalarField, SpectralGrid, VectorField, to_full, to_half


@dataclass(frozen=True)
class StepPolicy:
    """How the step size is chosen.

    ``dt_mode`` is ``"fixed"`` (every step uses ``dt_fixed``) or ``"cfl"``
    (CFL-limited, capped by ``dt_fixed`` when given).
    """

    dt_mode: str = "fixed"
    dt_fixed: float | None = 1e-3
    cfl_number: float = 0.5
    t_end: float = 5.0
    max_steps: int = 10_000_000

    def __post_init__(self):
        if self.dt_mode not in ("fixed", "cfl"):
            raise ValueError(f"dt_mode must be 'fixed' or 'cfl', got {self.dt_mode!r}")
        if self.dt_mode == "fixed" and not (self.dt_fixed and self.dt_fixed > 0):
            raise ValueError("fixed dt_mode needs dt_fixed > 0")
        if not 0 < self.cfl_number <= 1:
            raise ValueError("cfl_number must be in (0, 1]")
        if self.t_end <= 0:
            raise ValueError("t_end must be > 0")


class BlowupReason(str, enum.Enum):
    SPECTRUM_TAIL = "SpectrumTail"
    NORM_GROWTH = "NormGrowth"
    NON_FINITE = "NonFinite"


@dataclass(frozen=True)
class BlowupThresholds:
    tail_fraction: float = 1.0 / 6.0
    tail_ratio: float = 0.01
    growth_factor: float = 1e6


@dataclass(frozen=True)
class BlowupVerdict:
    triggered: bool = False
    reason: BlowupReason | None = None
    time: float | None = None
    details: dict = field(default_factory=dict)

    def __str__(self):
        if not self.triggered:
            return "none"
        return f"{self.reason.value}@t={self.time:.6g}"


class _Factors:
    """Per-dt cache of the exponential integrating factors."""

    def __init__(self, rates: np.ndarray):
        self.rates = np.asarray(rates)
        self._dt = None

    def get(self, dt: float):
        if dt != self._dt:
            self._full = np.exp(-self.rates * dt)
            self._half = np.exp(-self.rates * (0.5 * dt))
            self._dt = dt
        return self._full, self._half


def ifrk4_step(
    y: np.ndarray,
    nonlinear: Callable[[np.ndarray], np.ndarray],
    factors: _Factors,
    dt: float,
) -> np.ndarray:
    """One integrating-factor RK4 step for ``y' = -rate * y + N(y)``.

    ``y`` stacks all prognostic arrays; ``factors.rates`` has the same shape.
    """
    e, e2 = factors.get(dt)
    h2 = 0.5 * dt
    k1 = nonlinear(y)
    k2 = nonlinear(e2 * (y + h2 * k1))
    ey = e2 * y
    k3 = nonlinear(ey + h2 * k2)
    k4 = nonlinear(e * y + dt * e2 * k3)
    k2 += k3
    k2 *= 2.0 * e2
    k2 += e * k1
    k2 += k4
    k2 *= dt / 6.0
    k2 += e * y
    return k2


class VorticityStepper:
    """Reusable stepper for (w, j); caches the integrating factors."""

    def __init__(self, params: SimParams, linear_only: bool = False):
        self.params = params
        self.grid = params.grid
        # the state is advanced on half-spectrum arrays (real fields)
        self.factors = _Factors(np.stack([to_half(r) for r in dissipation_rates(self.grid, params)]))
        self.linear_only = linear_only

    def _nonlinear(self, y):
        if self.linear_only:
            return np.zeros_like(y)
        return vorticity_nonlinear_half(self.grid, y[0], y[1])

    def step(self, state: MhdState, dt: float) -> MhdState:
        if not dt > 0:
            raise ValueError(f"dt must be > 0, got {dt!r}")
        y = np.stack([to_half(state.w.coeffs), to_half(state.j.coeffs)])
        out = ifrk4_step(y, self._nonlinear, self.factors, dt)
        out[:, 0, 0] = 0.0
        if not np.isfinite(out).all():
            raise NonFiniteState(f"non-finite coefficients after step to t={state.time + dt}")
        w, j = to_full(out, self.grid.n)
        return MhdState(ScalarField(self.grid, w), ScalarField(self.grid, j), state.time + dt)


class VelocityStepper:
    """Same scheme applied to the velocity/magnetic-field form."""

    def __init__(self, params: SimParams):
        self.params = params
        self.grid = params.grid
        rate_u, rate_b = dissipation_rates(self.grid, params)
        rate_u, rate_b = to_half(rate_u), to_half(rate_b)
        self.factors = _Factors(np.stack([rate_u, rate_u, rate_b, rate_b]))

    def _nonlinear(self, y):
        return np.concatenate(velocity_nonlinear_half(self.grid, y[:2], y[2:]))

    def step(self, u: VectorField, b: VectorField, dt: float):
        y = np.stack([to_half(c.coeffs) for c in (u.c1, u.c2, b.c1, b.c2)])
        out = ifrk4_step(y, self._nonlinear, self.factors, dt)
        if not np.isfinite(out).all():
            raise NonFiniteState("non-finite coefficients in velocity-form step")
        g = self.grid
        u1, u2, b1, b2 = to_full(out, g.n)
        return (
            VectorField(ScalarField(g, u1), ScalarField(g, u2)),
            VectorField(ScalarField(g, b1), ScalarField(g, b2)),
        )


def step(state: MhdState, params: SimParams, dt: float) -> MhdState:
    """Advance (w, j) by ``dt`` with integrating-factor RK4."""
    return VorticityStepper(params).step(state, dt)


def step_velocity_form(u: VectorField, b: VectorField, params: SimParams, dt: float):
    return VelocityStepper(params).step(u, b, dt)


def max_speed(state: MhdState) -> float:
    u, b = state.u, state.b
    umax = np.sqrt(u.c1.values**2 + u.c2.values**2).max()
    bmax = np.sqrt(b.c1.values**2 + b.c2.values**2).max()
    return float(umax + bmax)


def cfl_dt(state: MhdState, policy: StepPolicy) -> float:
    """CFL step ``cfl * dx / max(|u|_inf + |b|_inf, 1e-8)``, capped by ``dt_fixed``."""
    dt = policy.cfl_number * state.grid.dx / max(max_speed(state), 1e-8)
    if policy.dt_fixed is not None:
        dt = min(dt, policy.dt_fixed)
    return dt


def spectrum_tail(grid: SpectralGrid, wh: np.ndarray, jh: np.ndarray, fraction: float = 1.0 / 6.0) -> float:
    """Share of enstrophy in the top ``fraction`` of the retained wavenumber band."""
    cutoff = (1.0 - fraction) * grid.n / 3.0
    dens = np.abs(wh) ** 2 + np.abs(jh) ** 2
    total = dens.sum()
    if total == 0:
        return 0.0
    return float(dens[grid.kmax_norm > cutoff].sum() / total)


def detect_blowup(history, state: MhdState, thresholds: BlowupThresholds = BlowupThresholds()) -> BlowupVerdict:
    """Flag non-finite values, an under-resolved spectral tail, or runaway X(t).

    ``history`` is a sequence of diagnostics records (anything with ``time``
    and ``X`` attributes).  This is a resolution/regularity proxy only.
    """
    wh, jh = state.w.coeffs, state.j.coeffs
    if not (np.isfinite(wh).all() and np.isfinite(jh).all()):
        return BlowupVerdict(True, BlowupReason.NON_FINITE, state.time, {"where": "coefficients"})
    if any(not np.isfinite(rec.X) for rec in history):
        bad = next(rec for rec in history if not np.isfinite(rec.X))
        return BlowupVerdict(True, BlowupReason.NON_FINITE, bad.time, {"where": "X"})
    tail = spectrum_tail(state.grid, wh, jh, thresholds.tail_fraction)
    if tail > thresholds.tail_ratio:
        return BlowupVerdict(True, BlowupReason.SPECTRUM_TAIL, state.time, {"tail": tail})
    if len(history) >= 2:
        x0 = history[0].X
        xmax = max(rec.X for rec in history)
        if x0 > 0 and xmax / x0 > thresholds.growth_factor:
            return BlowupVerdict(True, BlowupReason.NORM_GROWTH, state.time, {"growth": xmax / x0})
    return BlowupVerdict()
