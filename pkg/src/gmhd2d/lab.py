"""Numerical checks of the functional inequalities behind the a priori estimates.

Products are evaluated on refined grids large enough that every quadrature
below is exact for band-limited inputs, so reported ratios carry no aliasing
error.  Constants are never asserted except where the inequality has none
(the fractional positivity inequality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagnostics import sobolev_norm
from .errors import (
    ExponentMismatch,
    NotDivergenceFree,
    OddP,
    ParameterOutOfRange,
    ZeroDenominator,
)
from .spectral import (
    AREA,
    ScalarField,
    SpectralGrid,
    VectorField,
    _fft,
    get_grid,
    hermitian_part,
    lambda_pow,
    leray_project,
    partial_derivative,
    zero_pad,
)


@dataclass(frozen=True)
class InequalityCheck:
    lhs: float
    rhs: float
    ratio: float
    holds: bool | None = None
    deviation: float | None = None


@dataclass(frozen=True)
class CommutatorCheck:
    lhs: float
    gradient_part: float
    fractional_part: float
    ratio: float


# -- random test fields ------------------------------------------------------


def random_band_limited(
    grid: SpectralGrid,
    rng: np.random.Generator,
    cutoff: float | None = None,
    slope: float = 1.0,
    zero_mean: bool = True,
) -> ScalarField:
    """Real field with random phases, amplitude ``|k|^-slope`` for ``|k|_inf <= cutoff``."""
    cutoff = grid.n / 6 if cutoff is None else cutoff
    n = grid.n
    amp = np.where(grid.kmax_norm <= cutoff, 1.0, 0.0) * np.maximum(grid.kabs, 1.0) ** (-slope)
    c = amp * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    # symmetrised in coefficient space so the band limit is exact
    f = ScalarField(grid, hermitian_part(c))
    if zero_mean:
        f.coeffs[0, 0] = 0.0
    return f


def random_divergence_free(grid: SpectralGrid, rng: np.random.Generator, cutoff=None, slope=1.0) -> VectorField:
    v = VectorField(
        random_band_limited(grid, rng, cutoff, slope),
        random_band_limited(grid, rng, cutoff, slope),
    )
    return leray_project(v)


def _bandwidth(field: ScalarField, rtol: float = 1e-14) -> int:
    a = np.abs(field.coeffs)
    top = a.max()
    if top == 0:
        return 0
    return int(field.grid.kmax_norm[a > rtol * top].max())


def _refined_size(n: int, needed: int) -> int:
    m = n
    while m <= needed:
        m *= 2
    return m


def _on(field: ScalarField, m: int) -> ScalarField:
    return ScalarField(get_grid(m), zero_pad(field.coeffs, m))


# -- gradient bounded by curl ------------------------------------------------


def check_gradient_by_curl(f: VectorField, p: float) -> InequalityCheck:
    """``||grad f||_{L^p}`` against ``||curl f||_{L^p}`` for divergence-free ``f``.

    The gradient norm uses the pointwise Frobenius norm of the Jacobian.  At
    ``p = 2`` the two sides coincide and ``deviation`` is the relative gap.
    For the zero field the ratio is 1 by convention.
    """
    if not f.is_divergence_free(1e-10):
        raise NotDivergenceFree("gradient/curl check needs a divergence-free field")
    oversample = p > 2
    m = 2 * f.grid.n if oversample else f.grid.n
    parts = [partial_derivative(_on(c, m), a) for c in (f.c1, f.c2) for a in (1, 2)]
    vals = np.stack([q.values for q in parts])
    frob = np.sqrt(np.sum(vals**2, axis=0))
    curl = vals[2] - vals[1]  # d1 f2 - d2 f1
    lhs = _grid_lp(frob, p)
    rhs = _grid_lp(curl, p)
    if rhs == 0:
        return InequalityCheck(lhs, rhs, 1.0 if lhs == 0 else math.inf, deviation=0.0 if lhs == 0 else math.inf)
    dev = abs(lhs - rhs) / rhs if p == 2 else None
    return InequalityCheck(lhs, rhs, lhs / rhs, deviation=dev)


def _grid_lp(vals: np.ndarray, p: float) -> float:
    a = np.abs(vals)
    if math.isinf(p):
        return float(a.max())
    top = a.max()
    if top == 0:
        return 0.0
    dx2 = AREA / vals.size
    return float(top * (np.sum((a / top) ** p) * dx2) ** (1.0 / p))


# -- fractional positivity ---------------------------------------------------


def check_fractional_positivity(f: ScalarField, p: int, alpha: float) -> InequalityCheck:
    """``2 int |Lambda^a (f^{p/2})|^2`` against ``p int |f|^{p-2} f Lambda^{2a} f``.

    Only even ``p`` is accepted so that ``f^{p/2}`` is a polynomial in ``f``.
    Both sides are computed on a grid fine enough to integrate the degree-``p``
    products exactly.
    """
    if p != int(p) or int(p) % 2 or p < 2:
        raise OddP(f"p must be an even integer >= 2, got {p!r}")
    p = int(p)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    K = _bandwidth(f)
    if K == 0 and np.abs(f.coeffs).max() == 0:
        return InequalityCheck(0.0, 0.0, 1.0, holds=True, deviation=0.0)
    m = _refined_size(f.grid.n, p * K + 1)
    g = get_grid(m)
    fm = _on(f, m)
    fv = fm.values
    power = ScalarField(g, _fft(fv ** (p // 2)))
    lhs = 2.0 * sobolev_norm(power, alpha) ** 2
    frac = lambda_pow(fm, 2.0 * alpha).values
    rhs = p * float(np.sum(fv ** (p - 1) * frac) * (AREA / (m * m)))
    holds = lhs <= rhs + 1e-8 * abs(rhs)
    ratio = lhs / rhs if rhs != 0 else (1.0 if lhs == 0 else math.inf)
    return InequalityCheck(lhs, rhs, ratio, holds=bool(holds), deviation=abs(lhs - rhs) / abs(rhs) if rhs else 0.0)


# -- product estimate in homogeneous Sobolev spaces --------------------------


def check_product_estimate(f: ScalarField, g: ScalarField, sigma1: float, sigma2: float) -> float:
    """``||f g||_{H^{s1+s2-1}} / (||f||_{H^{s1}} ||g||_{H^{s2}})`` with ``f g`` mean-projected."""
    if not (sigma1 < 1 and sigma2 < 1 and sigma1 + sigma2 > 0):
        raise ParameterOutOfRange(f"need sigma1, sigma2 < 1 and sigma1 + sigma2 > 0, got {sigma1}, {sigma2}")
    den = sobolev_norm(f, sigma1) * sobolev_norm(g, sigma2)
    if den == 0:
        raise ZeroDenominator("product estimate denominator vanishes")
    m = 2 * f.grid.n
    fg = ScalarField(get_grid(m), _fft(_on(f, m).values * _on(g, m).values))
    fg.coeffs[0, 0] = 0.0
    return sobolev_norm(fg, sigma1 + sigma2 - 1.0) / den


def product_estimate_sweep(grid: SpectralGrid, sigma1: float, sigma2: float, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.array(
        [
            check_product_estimate(random_band_limited(grid, rng), random_band_limited(grid, rng), sigma1, sigma2)
            for _ in range(count)
        ]
    )


# -- commutator estimate -----------------------------------------------------


def check_commutator(f: ScalarField, g: ScalarField, s: float, p: float, p1: float, p2: float, p3: float, p4: float) -> CommutatorCheck:
    """``||Lambda^s(f g) - f Lambda^s g||_{L^p}`` and the two bounding products.

    Reports ``||grad f||_{p1} ||Lambda^{s-1} g||_{p2}`` and
    ``||Lambda^s f||_{p3} ||g||_{p4}``; ``ratio`` is lhs over their sum.
    """
    if not s > 0:
        raise ValueError("s must be > 0")
    inv = lambda q: 0.0 if math.isinf(q) else 1.0 / q  # noqa: E731
    if not (math.isclose(inv(p), inv(p1) + inv(p2), abs_tol=1e-12) and math.isclose(inv(p), inv(p3) + inv(p4), abs_tol=1e-12)):
        raise ExponentMismatch(f"1/p must equal 1/p1 + 1/p2 = 1/p3 + 1/p4 (p={p}, {p1}, {p2}, {p3}, {p4})")
    m = 2 * f.grid.n
    gm = get_grid(m)
    fm, gmf = _on(f, m), _on(g, m)
    fg = ScalarField(gm, _fft(fm.values * gmf.values))
    comm = lambda_pow(fg, s).values - fm.values * lambda_pow(gmf, s).values
    lhs = _grid_lp(comm, p)
    grad_f = np.sqrt(partial_derivative(fm, 1).values ** 2 + partial_derivative(fm, 2).values ** 2)
    gradient_part = _grid_lp(grad_f, p1) * _grid_lp(lambda_pow(gmf, s - 1.0).values, p2)
    fractional_part = _grid_lp(lambda_pow(fm, s).values, p3) * _grid_lp(gmf.values, p4)
    total = gradient_part + fractional_part
    ratio = lhs / total if total > 0 else (0.0 if lhs == 0 else math.inf)
    return CommutatorCheck(lhs, gradient_part, fractional_part, ratio)
