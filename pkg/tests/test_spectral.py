import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmhd2d.errors import NonzeroMean
from gmhd2d.lab import random_band_limited, random_divergence_free
from gmhd2d.mhd import curl2d
from gmhd2d.spectral import (
    AREA,
    ScalarField,
    SpectralGrid,
    VectorField,
    dealias,
    get_grid,
    inverse_laplacian,
    lambda_pow,
    leray_project,
    partial_derivative,
    to_full,
    to_half,
    transform_forward,
    transform_inverse,
    values_on,
    zero_pad,
)

from conftest import field_of, rel_err, vector_of


def direct_dft(values):
    """O(n^4) DFT summation, normalised so the (0, 0) entry is the mean."""
    n = values.shape[0]
    idx = np.arange(n)
    out = np.zeros((n, n), dtype=complex)
    for k1 in range(n):
        for k2 in range(n):
            phase = np.exp(-2j * np.pi * (k1 * idx[:, None] + k2 * idx[None, :]) / n)
            out[k1, k2] = np.sum(values * phase) / n**2
    return out


# -- grid --------------------------------------------------------------------


@pytest.mark.parametrize("n", [4, 7, 12, 100])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        SpectralGrid(n)


def test_grid_tables():
    g = get_grid(16)
    k1, k2 = g.wavenumbers
    assert k1[0, 0] == 0 and k2[0, 0] == 0
    assert k1.min() == -8 and k1.max() == 7
    assert np.array_equal(g.dealias_mask, np.maximum(abs(k1), abs(k2)) <= 16 / 3)
    assert g.kmax_retained == 5
    assert g.k_deriv[0][8, 0] == 0.0  # Nyquist zeroed for derivatives
    assert g.symbol_pow(0)[0, 0] == 1.0 and g.symbol_pow(1.5)[0, 0] == 0.0


def test_half_full_round_trip(rng):
    g = get_grid(16)
    f = random_band_limited(g, rng, cutoff=8)
    assert np.array_equal(to_full(to_half(f.coeffs), 16), f.coeffs)


# -- transforms --------------------------------------------------------------


def test_constant_field_is_mean_mode():
    f = field_of(16, lambda x, y: np.ones_like(x))
    expected = np.zeros((16, 16))
    expected[0, 0] = 1
    assert np.allclose(f.coeffs, expected, atol=1e-15)


def test_cosine_coefficients():
    f = field_of(16, lambda x, y: np.cos(x))
    expected = np.zeros((16, 16), dtype=complex)
    expected[1, 0] = expected[-1, 0] = 0.5
    assert np.allclose(f.coeffs, expected, atol=1e-15)


def test_forward_matches_direct_dft(rng):
    v = rng.standard_normal((8, 8))
    f = transform_forward(v)
    assert rel_err(f.coeffs, direct_dft(v)) < 1e-13
    assert rel_err(transform_inverse(f), v) < 1e-12


def test_transform_shape_check():
    with pytest.raises(ValueError):
        transform_forward(np.zeros((8, 8)), get_grid(16))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([8, 16, 32, 64]))
def test_round_trip_and_parseval(seed, n):
    g = get_grid(n)
    v = np.random.default_rng(seed).standard_normal((n, n))
    f = transform_forward(v, g)
    assert rel_err(f.values, v) < 1e-12
    quad = np.sum(v**2) * g.dx**2
    assert abs(quad - AREA * np.sum(np.abs(f.coeffs) ** 2)) / quad < 1e-10
    assert f.is_conjugate_symmetric()


# -- lambda_pow / inverse Laplacian / derivatives -------------------------------


def test_lambda_pow_examples():
    cosx = field_of(16, lambda x, y: np.cos(x))
    assert rel_err(lambda_pow(cosx, 2).values, np.cos(cosx.grid.x[0])) < 1e-14
    cos2x = field_of(16, lambda x, y: np.cos(2 * x))
    assert rel_err(lambda_pow(cos2x, 1).values, 2 * np.cos(2 * cos2x.grid.x[0])) < 1e-14
    z = ScalarField.zeros(get_grid(16))
    assert not lambda_pow(z, 0.7).coeffs.any()
    assert not lambda_pow(z, -0.7).coeffs.any()


def test_lambda_pow_negative_needs_zero_mean():
    f = field_of(16, lambda x, y: 1 + np.cos(x))
    with pytest.raises(NonzeroMean):
        lambda_pow(f, -1)
    assert rel_err(lambda_pow(f, 0).coeffs, f.coeffs) == 0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), a=st.floats(-2, 2), b=st.floats(-2, 2))
def test_lambda_pow_composition(seed, a, b):
    f = random_band_limited(get_grid(16), np.random.default_rng(seed), cutoff=5)
    lhs = lambda_pow(lambda_pow(f, a), b).coeffs
    assert rel_err(lhs, lambda_pow(f, a + b).coeffs) < 1e-12


def test_inverse_laplacian_examples():
    cosx = field_of(16, lambda x, y: np.cos(x))
    x, y = cosx.grid.x
    assert rel_err(inverse_laplacian(cosx).values, -np.cos(x)) < 1e-14
    cos2y = field_of(16, lambda x, y: np.cos(2 * y))
    assert rel_err(inverse_laplacian(cos2y).values, -np.cos(2 * y) / 4) < 1e-14
    assert not inverse_laplacian(ScalarField.zeros(get_grid(16))).coeffs.any()
    with pytest.raises(NonzeroMean):
        inverse_laplacian(field_of(16, lambda x, y: 2 + np.cos(x)))


def test_partial_derivative_examples():
    g = get_grid(16)
    x, y = g.x
    sinx = field_of(16, lambda x, y: np.sin(x))
    assert rel_err(partial_derivative(sinx, 1).values, np.cos(x)) < 1e-14
    assert np.abs(partial_derivative(sinx, 2).values).max() < 1e-15
    cos2y = field_of(16, lambda x, y: np.cos(2 * y))
    assert rel_err(partial_derivative(cos2y, 2).values, -2 * np.sin(2 * y)) < 1e-14
    with pytest.raises(ValueError):
        partial_derivative(sinx, 3)


def test_dealias_examples():
    g = get_grid(16)
    c = np.zeros((16, 16), dtype=complex)
    c[7, 0] = c[-7, 0] = 1
    assert not dealias(ScalarField(g, c)).coeffs.any()
    c = np.zeros((16, 16), dtype=complex)
    c[5, 0] = c[-5, 0] = 1
    assert np.array_equal(dealias(ScalarField(g, c)).coeffs, c)
    assert not dealias(ScalarField.zeros(g)).coeffs.any()


# -- Leray projection --------------------------------------------------------


def test_leray_examples():
    zero = lambda x, y: np.zeros_like(x)  # noqa: E731
    div_free = vector_of(16, zero, lambda x, y: np.sin(x))
    assert rel_err(leray_project(div_free).coeffs, div_free.coeffs) < 1e-15
    grad = vector_of(16, lambda x, y: -np.sin(x), zero)
    assert np.abs(leray_project(grad).coeffs).max() < 1e-15
    mixed = vector_of(16, lambda x, y: -np.sin(x), lambda x, y: np.sin(x))
    assert rel_err(leray_project(mixed).coeffs, div_free.coeffs) < 1e-15


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([8, 16, 32]))
def test_leray_properties(seed, n):
    rng = np.random.default_rng(seed)
    g = get_grid(n)
    v = VectorField.from_values(g, rng.standard_normal((n, n)), rng.standard_normal((n, n)))
    p = leray_project(v)
    assert rel_err(leray_project(p).coeffs, p.coeffs) < 1e-12
    assert rel_err(curl2d(p).coeffs, curl2d(v).coeffs) < 1e-12
    assert p.is_divergence_free()


def test_random_divergence_free_flag(rng):
    v = random_divergence_free(get_grid(32), rng)
    assert v.divergence().l2_norm() <= 1e-10 * v.l2_norm()


# -- refinement --------------------------------------------------------------


def test_zero_pad_interpolates_exactly(rng):
    f = random_band_limited(get_grid(16), rng, cutoff=7)
    fine = get_grid(64)
    x, y = fine.x
    # direct evaluation of the Fourier series at the fine points
    k1, k2 = f.grid.wavenumbers
    mask = (np.abs(k1) < 8) & (np.abs(k2) < 8)
    direct = np.zeros_like(x)
    for a, b, c in zip(k1[mask], k2[mask], f.coeffs[mask]):
        direct += (c * np.exp(1j * (a * x + b * y))).real
    assert rel_err(values_on(f, 64), direct) < 1e-12
    assert np.array_equal(zero_pad(f.coeffs, 16), f.coeffs)
    with pytest.raises(ValueError):
        zero_pad(f.coeffs, 8)
