"""Fourier plumbing and linear spectral operators on the 2*pi-periodic torus.

Coefficients are stored as full ``(n, n)`` complex arrays in numpy FFT order,
normalised so that the ``(0, 0)`` entry is the spatial average.  Axis 0 is
``x`` (wavenumber ``k1``), axis 1 is ``y`` (wavenumber ``k2``).  With this
normalisation Parseval reads ``int f^2 dx = (2 pi)^2 sum |c_k|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
import scipy.fft as sfft

from .errors import NonzeroMean

TWO_PI = 2.0 * np.pi
AREA = TWO_PI**2


# Real data only: transforms go through the half spectrum (rfft layout,
# last axis k2 = 0..n/2) and are expanded by conjugate symmetry when the
# full array is needed.


def _rfft(values: np.ndarray) -> np.ndarray:
    return sfft.rfft2(values, axes=(-2, -1), norm="forward")


def _irfft(half_coeffs: np.ndarray, n: int) -> np.ndarray:
    return sfft.irfft2(half_coeffs, s=(n, n), axes=(-2, -1), norm="forward")


def to_half(coeffs: np.ndarray) -> np.ndarray:
    n = coeffs.shape[-1]
    return coeffs[..., : n // 2 + 1]


def to_full(half_coeffs: np.ndarray, n: int) -> np.ndarray:
    h = n // 2
    full = np.empty(half_coeffs.shape[:-1] + (n,), dtype=complex)
    full[..., : h + 1] = half_coeffs
    rows = (-np.arange(n)) % n
    full[..., h + 1 :] = np.conj(half_coeffs[..., rows, h - 1 : 0 : -1])
    return full


def hermitian_part(coeffs: np.ndarray) -> np.ndarray:
    """``(c(k) + conj(c(-k))) / 2``: the coefficients of the real part."""
    mirrored = np.conj(np.roll(coeffs[..., ::-1, ::-1], 1, axis=(-2, -1)))
    return 0.5 * (coeffs + mirrored)


def _fft(values: np.ndarray) -> np.ndarray:
    return to_full(_rfft(values), values.shape[-1])


def _ifft(coeffs: np.ndarray) -> np.ndarray:
    n = coeffs.shape[-1]
    return _irfft(to_half(coeffs), n)


@dataclass(frozen=True)
class SpectralGrid:
    """Square ``n x n`` collocation grid on ``[0, 2 pi)^2``."""

    n: int

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < 8 or n & (n - 1):
            raise ValueError(f"grid size must be a power of two >= 8, got {n!r}")

    @property
    def domain_length(self) -> float:
        return TWO_PI

    @property
    def dx(self) -> float:
        return TWO_PI / self.n

    @cached_property
    def x(self) -> np.ndarray:
        """Physical coordinates ``(X, Y)``, each ``(n, n)``, ``ij`` indexing."""
        xs = np.arange(self.n) * self.dx
        return np.stack(np.meshgrid(xs, xs, indexing="ij"))

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavevectors, shape ``(2, n, n)``, entries in ``[-n/2, n/2)``."""
        k = np.fft.fftfreq(self.n, d=1.0 / self.n).astype(np.int64)
        return np.stack(np.meshgrid(k, k, indexing="ij"))

    @cached_property
    def k_deriv(self) -> np.ndarray:
        """Wavenumbers used for first derivatives: the Nyquist entry is zeroed
        so odd derivatives of real fields stay real."""
        kd = self.wavenumbers.astype(float)
        kd[kd == -self.n // 2] = 0.0
        return kd

    @cached_property
    def ksq(self) -> np.ndarray:
        k1, k2 = self.wavenumbers
        return (k1 * k1 + k2 * k2).astype(float)

    @cached_property
    def kabs(self) -> np.ndarray:
        return np.sqrt(self.ksq)

    @cached_property
    def inv_ksq(self) -> np.ndarray:
        out = np.zeros_like(self.ksq)
        nz = self.ksq > 0
        out[nz] = 1.0 / self.ksq[nz]
        return out

    @cached_property
    def kmax_norm(self) -> np.ndarray:
        return np.abs(self.wavenumbers).max(axis=0)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        # 2/3 rule on the max-norm of k
        return self.kmax_norm <= self.n / 3.0

    @property
    def kmax_retained(self) -> int:
        return int(np.floor(self.n / 3.0))

    def symbol_pow(self, r: float) -> np.ndarray:
        """``|k|**r`` with the convention 0 at ``k = 0`` for ``r != 0``."""
        if r == 0:
            return np.ones_like(self.kabs)
        out = np.zeros_like(self.kabs)
        nz = self.kabs > 0
        out[nz] = self.kabs[nz] ** r
        return out


@lru_cache(maxsize=None)
def get_grid(n: int) -> SpectralGrid:
    return SpectralGrid(int(n))


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real scalar field held by its spectral coefficients.

    Physical values are materialised lazily from the coefficients.
    """

    grid: SpectralGrid
    coeffs: np.ndarray

    @classmethod
    def from_values(cls, grid: SpectralGrid, values) -> ScalarField:
        return transform_forward(np.asarray(values, dtype=float), grid)

    @classmethod
    def zeros(cls, grid: SpectralGrid) -> ScalarField:
        return cls(grid, np.zeros((grid.n, grid.n), dtype=complex))

    @cached_property
    def values(self) -> np.ndarray:
        return _ifft(self.coeffs)

    @property
    def mean(self) -> complex:
        return self.coeffs[0, 0]

    def l2_norm(self) -> float:
        return float(np.sqrt(AREA * np.sum(np.abs(self.coeffs) ** 2)))

    def is_conjugate_symmetric(self, tol: float = 1e-12) -> bool:
        c = self.coeffs
        mirrored = np.conj(np.roll(c[::-1, ::-1], 1, axis=(0, 1)))
        scale = max(np.abs(c).max(), 1.0)
        return bool(np.abs(c - mirrored).max() <= tol * scale)

    def __add__(self, other: ScalarField) -> ScalarField:
        return ScalarField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: ScalarField) -> ScalarField:
        return ScalarField(self.grid, self.coeffs - other.coeffs)

    def __neg__(self) -> ScalarField:
        return ScalarField(self.grid, -self.coeffs)

    def __mul__(self, scalar: float) -> ScalarField:
        return ScalarField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class VectorField:
    c1: ScalarField
    c2: ScalarField

    @classmethod
    def from_values(cls, grid: SpectralGrid, v1, v2) -> VectorField:
        return cls(ScalarField.from_values(grid, v1), ScalarField.from_values(grid, v2))

    @classmethod
    def zeros(cls, grid: SpectralGrid) -> VectorField:
        return cls(ScalarField.zeros(grid), ScalarField.zeros(grid))

    @property
    def grid(self) -> SpectralGrid:
        return self.c1.grid

    @property
    def coeffs(self) -> np.ndarray:
        return np.stack([self.c1.coeffs, self.c2.coeffs])

    @classmethod
    def from_coeffs(cls, grid: SpectralGrid, coeffs: np.ndarray) -> VectorField:
        return cls(ScalarField(grid, coeffs[0]), ScalarField(grid, coeffs[1]))

    def l2_norm(self) -> float:
        return float(np.hypot(self.c1.l2_norm(), self.c2.l2_norm()))

    def divergence(self) -> ScalarField:
        return partial_derivative(self.c1, 1) + partial_derivative(self.c2, 2)

    def is_divergence_free(self, rtol: float = 1e-10) -> bool:
        return self.divergence().l2_norm() <= rtol * self.l2_norm()

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> VectorField:
        return VectorField(-self.c1, -self.c2)


def transform_forward(values: np.ndarray, grid: SpectralGrid | None = None) -> ScalarField:
    """Physical grid values to spectral coefficients (mean-mode normalised)."""
    values = np.asarray(values, dtype=float)
    if grid is None:
        grid = get_grid(values.shape[0])
    if values.shape != (grid.n, grid.n):
        raise ValueError(f"expected shape {(grid.n, grid.n)}, got {values.shape}")
    return ScalarField(grid, _fft(values))


def transform_inverse(field: ScalarField) -> np.ndarray:
    return field.values


def _check_zero_mean(field: ScalarField, what: str):
    if abs(field.coeffs[0, 0]) > 1e-12 * field.l2_norm():
        raise NonzeroMean(f"{what} requires a zero-mean field (mean={field.coeffs[0, 0]!r})")


def lambda_pow(field: ScalarField, r: float) -> ScalarField:
    """Apply the fractional Laplacian power with symbol ``|k|**r``.

    For ``r > 0`` the mean mode is annihilated; ``r = 0`` is the identity;
    ``r < 0`` requires a zero-mean field and the mean stays zero.
    """
    if r < 0:
        _check_zero_mean(field, "lambda_pow with r < 0")
    return ScalarField(field.grid, field.coeffs * field.grid.symbol_pow(r))


def inverse_laplacian(field: ScalarField) -> ScalarField:
    """Mean-zero solution ``psi`` of ``Laplacian(psi) = field``."""
    _check_zero_mean(field, "inverse_laplacian")
    return ScalarField(field.grid, -field.coeffs * field.grid.inv_ksq)


def partial_derivative(field: ScalarField, axis: int) -> ScalarField:
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis!r}")
    k = field.grid.k_deriv[axis - 1]
    return ScalarField(field.grid, 1j * k * field.coeffs)


def dealias(field: ScalarField) -> ScalarField:
    return ScalarField(field.grid, np.where(field.grid.dealias_mask, field.coeffs, 0.0))


def _leray_coeffs(grid: SpectralGrid, v1: np.ndarray, v2: np.ndarray):
    k1, k2 = grid.k_deriv
    kk = k1 * k1 + k2 * k2
    inv = np.divide(1.0, kk, out=np.zeros_like(kk), where=kk > 0)
    proj = (k1 * v1 + k2 * v2) * inv
    return v1 - proj * k1, v2 - proj * k2


def leray_project(v: VectorField) -> VectorField:
    """Orthogonal projection onto divergence-free fields.

    Uses the derivative wavenumbers, so the result is exactly divergence-free
    under :func:`partial_derivative`.
    """
    grid = v.grid
    p1, p2 = _leray_coeffs(grid, v.c1.coeffs, v.c2.coeffs)
    return VectorField(ScalarField(grid, p1), ScalarField(grid, p2))


def zero_pad(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Embed ``(n, n)`` coefficients into an ``(m, m)`` spectrum, ``m >= n``.

    The Nyquist row and column are split evenly between ``+n/2`` and ``-n/2``
    so real fields stay real on the finer grid.
    """
    n = coeffs.shape[-1]
    if m == n:
        return coeffs.copy()
    if m < n:
        raise ValueError("zero_pad only refines")
    h = n // 2
    # split Nyquist along each axis into symmetric halves
    ext = np.zeros((n + 1, n + 1), dtype=complex)
    centred = np.fft.fftshift(coeffs)  # index 0 is -n/2
    ext[:n, :n] = centred
    ext[0, :] *= 0.5
    ext[n, :] = ext[0, :]
    ext[:, 0] *= 0.5
    ext[:, n] = ext[:, 0]
    out = np.zeros((m, m), dtype=complex)
    lo = m // 2 - h
    out[lo : lo + n + 1, lo : lo + n + 1] = ext
    return np.fft.ifftshift(out)


def values_on(field: ScalarField, m: int) -> np.ndarray:
    """Physical values of ``field`` sampled on a refined ``m x m`` grid."""
    return _ifft(zero_pad(field.coeffs, m))
