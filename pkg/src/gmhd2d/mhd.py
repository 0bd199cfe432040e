"""MHD state, velocity/vorticity reconstruction and the two right-hand sides.

The prognostic pair is (w, j) = (curl u, curl b).  Nonlinear terms are formed
pseudo-spectrally: derivatives in Fourier space, products on the physical
grid, then back to Fourier space and truncated by the 2/3 rule.

The ``*_coeffs`` functions work on bare coefficient arrays and are what the
time stepper calls; the field-level functions wrap them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property, lru_cache

import numpy as np

from .errors import NonzeroMean, NotDivergenceFree
from .spectral import (
    ScalarField,
    SpectralGrid,
    VectorField,
    _fft,
    _irfft,
    _rfft,
    dealias,
    get_grid,
    inverse_laplacian,
    lambda_pow,
    partial_derivative,
    to_full,
    to_half,
)


@dataclass(frozen=True)
class SimParams:
    """Physical parameters and resolution.

    nu, eta: viscosity and magnetic diffusivity.
    alpha, beta: fractional exponents of the dissipation ``nu Lambda^{2 alpha}``
    and diffusion ``eta Lambda^{2 beta}``.
    """

    nu: float = 1.0
    eta: float = 1.0
    alpha: float = 1.0
    beta: float = 1.0
    n: int = 64

    def __post_init__(self):
        if self.nu < 0 or self.eta < 0:
            raise ValueError("nu and eta must be >= 0")
        if not (0 <= self.alpha <= 2 and 0 <= self.beta <= 2):
            raise ValueError("alpha and beta must lie in [0, 2]")

    @property
    def grid(self) -> SpectralGrid:
        return get_grid(self.n)

    def with_(self, **changes) -> SimParams:
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class MhdState:
    """Vorticity ``w`` and current ``j`` at ``time``; ``u``, ``b`` are cached."""

    w: ScalarField
    j: ScalarField
    time: float = 0.0

    @property
    def grid(self) -> SpectralGrid:
        return self.w.grid

    @cached_property
    def u(self) -> VectorField:
        return velocity_from_vorticity(self.w)

    @cached_property
    def b(self) -> VectorField:
        return velocity_from_vorticity(self.j)

    @classmethod
    def from_velocity(cls, u: VectorField, b: VectorField, time: float = 0.0) -> MhdState:
        return cls(curl2d(u), curl2d(b), time)

    @classmethod
    def zeros(cls, grid: SpectralGrid, time: float = 0.0) -> MhdState:
        return cls(ScalarField.zeros(grid), ScalarField.zeros(grid), time)

    def negate_current(self) -> MhdState:
        return MhdState(self.w, -self.j, self.time)


@dataclass(frozen=True, eq=False)
class Tendency:
    """Time derivative of (w, j) split into dissipative and nonlinear parts."""

    linear_w: ScalarField
    linear_j: ScalarField
    nonlinear_w: ScalarField
    nonlinear_j: ScalarField

    @property
    def dw(self) -> ScalarField:
        return self.linear_w + self.nonlinear_w

    @property
    def dj(self) -> ScalarField:
        return self.linear_j + self.nonlinear_j


def velocity_from_vorticity(w: ScalarField) -> VectorField:
    """Biot-Savart: ``u = (-d2 psi, d1 psi)`` with ``Laplacian(psi) = w``."""
    psi = inverse_laplacian(w)
    return VectorField(-partial_derivative(psi, 2), partial_derivative(psi, 1))


def curl2d(v: VectorField) -> ScalarField:
    c = partial_derivative(v.c2, 1) - partial_derivative(v.c1, 2)
    c.coeffs[0, 0] = 0.0
    return c


# -- array kernels -----------------------------------------------------------


def _velocity_coeffs(k1, k2, inv_ksq, wh: np.ndarray):
    psi = -wh * inv_ksq
    return -1j * k2 * psi, 1j * k1 * psi


def _half_tables(grid: SpectralGrid):
    k1, k2 = to_half(grid.k_deriv)
    return k1, k2, to_half(grid.inv_ksq), to_half(grid.dealias_mask)


@lru_cache(maxsize=None)
def _vorticity_tables(grid: SpectralGrid):
    k1, k2, inv_ksq, mask = _half_tables(grid)
    u1, u2 = _velocity_coeffs(k1, k2, inv_ksq, 1.0)
    # -div and -Laplacian applied after the 2/3 truncation
    return np.stack([u1, u2]), -1j * k1 * mask, -1j * k2 * mask, (k1 * k1 + k2 * k2) * mask


def vorticity_nonlinear_half(grid: SpectralGrid, wh: np.ndarray, jh: np.ndarray):
    """Dealiased nonlinear tendencies stacked as ``[N_w, N_j]`` on half-spectrum arrays.

    Uses the flux forms allowed by div u = div b = 0:
    ``N_w = -div(u w - b j)`` and ``N_j = -Lap(u1 b2 - u2 b1)``, the curl of
    the induction term written through the magnetic potential.  Six inverse
    and three forward transforms per call.
    """
    to_vel, m_div1, m_div2, m_lap = _vorticity_tables(grid)
    spec = np.empty((6,) + wh.shape, dtype=complex)
    np.multiply(to_vel, wh, out=spec[:2])
    np.multiply(to_vel, jh, out=spec[2:4])
    spec[4], spec[5] = wh, jh
    u1, u2, b1, b2, w, j = _irfft(spec, grid.n)
    prod = np.empty((3,) + u1.shape)
    np.multiply(u1, w, out=prod[0])
    prod[0] -= b1 * j
    np.multiply(u2, w, out=prod[1])
    prod[1] -= b2 * j
    np.multiply(u1, b2, out=prod[2])
    prod[2] -= u2 * b1
    f1, f2, e = _rfft(prod)
    out = np.empty((2,) + wh.shape, dtype=complex)
    np.multiply(m_div1, f1, out=out[0])
    out[0] += m_div2 * f2
    np.multiply(m_lap, e, out=out[1])
    out[:, 0, 0] = 0.0
    return out


def vorticity_nonlinear_coeffs(grid: SpectralGrid, wh: np.ndarray, jh: np.ndarray):
    """Dealiased nonlinear tendencies ``(N_w, N_j)`` from full (w, j) coefficients."""
    nw, nj = vorticity_nonlinear_half(grid, to_half(wh), to_half(jh))
    return to_full(nw, grid.n), to_full(nj, grid.n)


def velocity_nonlinear_half(grid: SpectralGrid, uh: np.ndarray, bh: np.ndarray):
    """Dealiased, projected nonlinear tendencies of the velocity form.

    ``uh`` and ``bh`` are half-spectrum arrays of shape ``(2, n, n//2 + 1)``.
    """
    k1, k2, inv_ksq, mask = _half_tables(grid)
    ik1, ik2 = 1j * k1, 1j * k2
    phys = _irfft(np.concatenate([uh, bh, ik1 * uh, ik2 * uh, ik1 * bh, ik2 * bh]), grid.n)
    u1, u2, b1, b2, d1u1, d1u2, d2u1, d2u2, d1b1, d1b2, d2b1, d2b2 = phys
    # (a . grad) c_i = a1 d1 c_i + a2 d2 c_i
    nu1 = -(u1 * d1u1 + u2 * d2u1) + (b1 * d1b1 + b2 * d2b1)
    nu2 = -(u1 * d1u2 + u2 * d2u2) + (b1 * d1b2 + b2 * d2b2)
    nb1 = -(u1 * d1b1 + u2 * d2b1) + (b1 * d1u1 + b2 * d2u1)
    nb2 = -(u1 * d1b2 + u2 * d2b2) + (b1 * d1u2 + b2 * d2u2)
    spec = _rfft(np.stack([nu1, nu2, nb1, nb2])) * mask
    # Leray projection with the same derivative wavenumbers as the full grid
    kk = k1 * k1 + k2 * k2
    inv = np.divide(1.0, kk, out=np.zeros_like(kk), where=kk > 0)
    out = []
    for v1, v2 in ((spec[0], spec[1]), (spec[2], spec[3])):
        proj = (k1 * v1 + k2 * v2) * inv
        out.append(np.stack([v1 - proj * k1, v2 - proj * k2]))
    return out[0], out[1]


def velocity_nonlinear_coeffs(grid: SpectralGrid, uh: np.ndarray, bh: np.ndarray):
    """Full-spectrum wrapper of :func:`velocity_nonlinear_half`; ``uh``, ``bh`` are ``(2, n, n)``."""
    pu, pb = velocity_nonlinear_half(grid, to_half(uh), to_half(bh))
    return to_full(pu, grid.n), to_full(pb, grid.n)


def dissipation_rates(grid: SpectralGrid, params: SimParams):
    """Per-mode decay rates ``nu |k|^{2 alpha}`` and ``eta |k|^{2 beta}``."""
    return (
        params.nu * grid.symbol_pow(2.0 * params.alpha),
        params.eta * grid.symbol_pow(2.0 * params.beta),
    )


# -- field-level operations --------------------------------------------------


def stretching_term(u: VectorField, b: VectorField) -> ScalarField:
    """``2[d1 b1 (d1 u2 + d2 u1) - d1 u1 (d1 b2 + d2 b1)]``, dealiased, zero mean."""
    grid = u.grid
    d1u1 = partial_derivative(u.c1, 1).values
    d1u2 = partial_derivative(u.c2, 1).values
    d2u1 = partial_derivative(u.c1, 2).values
    d1b1 = partial_derivative(b.c1, 1).values
    d1b2 = partial_derivative(b.c2, 1).values
    d2b1 = partial_derivative(b.c1, 2).values
    vals = 2.0 * (d1b1 * (d1u2 + d2u1) - d1u1 * (d1b2 + d2b1))
    out = dealias(ScalarField(grid, _fft(vals)))
    out.coeffs[0, 0] = 0.0
    return out


def advect(a: VectorField, f: ScalarField) -> ScalarField:
    """``(a . grad) f`` formed on the grid and dealiased."""
    vals = a.c1.values * partial_derivative(f, 1).values + a.c2.values * partial_derivative(f, 2).values
    return dealias(ScalarField(f.grid, _fft(vals)))


def advect_vector(a: VectorField, v: VectorField) -> VectorField:
    return VectorField(advect(a, v.c1), advect(a, v.c2))


def _require_zero_mean(f: ScalarField, name: str):
    if abs(f.coeffs[0, 0]) > 1e-12 * max(f.l2_norm(), 1e-300):
        raise NonzeroMean(f"{name} must have zero mean")


def rhs_vorticity_form(state: MhdState, params: SimParams) -> Tendency:
    grid = state.grid
    _require_zero_mean(state.w, "w")
    _require_zero_mean(state.j, "j")
    nw, nj = vorticity_nonlinear_coeffs(grid, state.w.coeffs, state.j.coeffs)
    return Tendency(
        linear_w=ScalarField(grid, -params.nu * lambda_pow(state.w, 2.0 * params.alpha).coeffs),
        linear_j=ScalarField(grid, -params.eta * lambda_pow(state.j, 2.0 * params.beta).coeffs),
        nonlinear_w=ScalarField(grid, nw),
        nonlinear_j=ScalarField(grid, nj),
    )


def _check_divergence_free(v: VectorField, name: str, rtol: float = 1e-8):
    if not v.is_divergence_free(rtol):
        raise NotDivergenceFree(f"{name} is not divergence-free (rtol {rtol})")


def rhs_velocity_form(u: VectorField, b: VectorField, params: SimParams):
    """Tendencies ``(du, db)`` of the velocity/magnetic-field form.

    The pressure gradient is removed by Leray projection; ``db`` is projected
    too, which only guards against round-off.
    """
    _check_divergence_free(u, "u")
    _check_divergence_free(b, "b")
    grid = u.grid
    pu, pb = velocity_nonlinear_coeffs(grid, u.coeffs, b.coeffs)
    rate_u, rate_b = dissipation_rates(grid, params)
    du = pu - rate_u * u.coeffs
    db = pb - rate_b * b.coeffs
    return VectorField.from_coeffs(grid, du), VectorField.from_coeffs(grid, db)
