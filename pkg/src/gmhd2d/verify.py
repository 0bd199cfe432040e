"""Self-check suite behind the ``verify`` CLI command."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagnostics import lp_norm, sobolev_norm
from .lab import (
    check_commutator,
    check_fractional_positivity,
    check_gradient_by_curl,
    check_product_estimate,
    random_band_limited,
    random_divergence_free,
)
from .mhd import curl2d
from .regime import region_boundary_table
from .spectral import AREA, VectorField, get_grid, lambda_pow, leray_project, partial_derivative, transform_forward


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _rel(a, b):
    scale = max(np.abs(b).max(), 1e-300)
    return float(np.abs(a - b).max() / scale)


def spectral_checks(n: int, rng: np.random.Generator, trials: int = 10) -> list[CheckResult]:
    grid = get_grid(n)
    out = []
    err = 0.0
    for _ in range(trials):
        v = rng.standard_normal((n, n))
        err = max(err, _rel(transform_forward(v, grid).values, v))
    out.append(CheckResult("round trip", err < 1e-12, f"max rel err {err:.2e}"))

    err = 0.0
    for _ in range(trials):
        v = rng.standard_normal((n, n))
        quad = np.sum(v**2) * grid.dx**2
        spec = AREA * np.sum(np.abs(transform_forward(v, grid).coeffs) ** 2)
        err = max(err, abs(quad - spec) / quad)
    out.append(CheckResult("Parseval", err < 1e-10, f"max rel err {err:.2e}"))

    err = 0.0
    for _ in range(trials):
        f = random_band_limited(grid, rng, cutoff=n / 3)
        a, b = rng.uniform(-2, 2, size=2)
        lhs = lambda_pow(lambda_pow(f, a), b).coeffs
        rhs = lambda_pow(f, a + b).coeffs
        err = max(err, _rel(lhs, rhs))
    out.append(CheckResult("Lambda composition", err < 1e-12, f"max rel err {err:.2e}"))

    err_idem, err_curl = 0.0, 0.0
    for _ in range(trials):
        v = random_divergence_free(grid, rng, cutoff=n / 3)
        g = transform_forward(rng.standard_normal((n, n)), grid)
        w = VectorField(v.c1 + partial_derivative(g, 1), v.c2 + partial_derivative(g, 2))
        p1 = leray_project(w)
        p2 = leray_project(p1)
        err_idem = max(err_idem, _rel(p2.coeffs, p1.coeffs))
        err_curl = max(err_curl, _rel(curl2d(p1).coeffs, curl2d(w).coeffs))
    out.append(CheckResult("Leray idempotent", err_idem < 1e-12, f"max rel err {err_idem:.2e}"))
    out.append(CheckResult("Leray keeps curl", err_curl < 1e-12, f"max rel err {err_curl:.2e}"))

    err = 0.0
    for _ in range(trials):
        f = random_band_limited(grid, rng, cutoff=n / 3)
        err = max(err, abs(sobolev_norm(f, 0) - lp_norm(f, 2)) / sobolev_norm(f, 0))
    out.append(CheckResult("H^0 equals L^2", err < 1e-10, f"max rel err {err:.2e}"))
    return out


def inequality_checks(n: int, rng: np.random.Generator, fields: int = 20) -> list[CheckResult]:
    grid = get_grid(n)
    out = []
    failures, worst_eq = 0, 0.0
    for _ in range(fields):
        f = random_band_limited(grid, rng)
        for p in (2, 4, 8):
            for alpha in (0.25, 0.5, 0.75, 1.0):
                chk = check_fractional_positivity(f, p, alpha)
                failures += not chk.holds
                if p == 2:
                    worst_eq = max(worst_eq, chk.deviation)
    out.append(CheckResult("fractional positivity holds", failures == 0, f"{failures} violations"))
    out.append(CheckResult("fractional positivity p=2 equality", worst_eq < 1e-9, f"max rel gap {worst_eq:.2e}"))

    dev, ratios = 0.0, []
    for _ in range(fields):
        v = random_divergence_free(grid, rng)
        dev = max(dev, check_gradient_by_curl(v, 2).deviation)
        ratios.append(check_gradient_by_curl(v, 4).ratio)
    out.append(CheckResult("grad/curl p=2 equality", dev < 1e-12, f"max rel gap {dev:.2e}"))
    out.append(
        CheckResult("grad/curl p=4 ratios finite", all(map(math.isfinite, ratios)), f"max ratio {max(ratios):.4f}")
    )

    pr = [check_product_estimate(random_band_limited(grid, rng), random_band_limited(grid, rng), 0.3, 0.4) for _ in range(fields)]
    out.append(CheckResult("product estimate ratios finite", all(map(math.isfinite, pr)), f"max ratio {max(pr):.4f}"))

    cr = [
        check_commutator(random_band_limited(grid, rng), random_band_limited(grid, rng), 1.0, 2, 4, 4, 4, 4).ratio
        for _ in range(fields)
    ]
    out.append(CheckResult("commutator ratios finite", all(map(math.isfinite, cr)), f"max ratio {max(cr):.4f}"))

    rows = region_boundary_table(101)
    ok = all(r[3] < min(r[1], r[2]) for r in rows if r[0] > 0)
    out.append(CheckResult("improved beta bound below prior bounds", ok, f"{len(rows) - 1} sampled alpha in (0, 1/3]"))
    return out


def run_verification(seed: int = 0, n: int = 32) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return spectral_checks(n, rng) + inequality_checks(n, rng)
