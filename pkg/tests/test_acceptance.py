"""Acceptance criteria, one test and one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v``; the verdict lines are printed in
the "acceptance criteria" section of the terminal summary.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from gmhd2d.checkpoint import load_checkpoint, save_checkpoint
from gmhd2d.config import ICSpec, RunConfig
from gmhd2d.diagnostics import energy_balance_residual
from gmhd2d.initial import make_initial_condition
from gmhd2d.lab import (
    check_fractional_positivity,
    check_gradient_by_curl,
    random_band_limited,
    random_divergence_free,
)
from gmhd2d.mhd import SimParams, curl2d
from gmhd2d.regime import classify, region_boundary_table
from gmhd2d.runner import run
from gmhd2d.spectral import get_grid
from gmhd2d.timestepper import StepPolicy, VelocityStepper, VorticityStepper

from regime_table import TRUTH, spreadsheet


def _l2_rel(a, b):
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def test_criterion_1_exact_linear_decay(report):
    started = time.perf_counter()
    errors = {}
    for alpha in (0.0, 0.35, 0.5, 1.0):
        cfg = RunConfig(
            params=SimParams(nu=1.0, eta=1.0, alpha=alpha, beta=1.0, n=32),
            policy=StepPolicy(dt_fixed=1e-3, t_end=1.0),
            ic=ICSpec("single_mode", axis=2, wavenumber=1, amplitude=1.0),
            sample_interval=1.0,
        )
        state, _, _ = run(cfg)
        w0 = make_initial_condition(cfg.ic, cfg.params.grid).w
        x = cfg.params.grid.x[0]
        assert np.abs(w0.values - np.cos(x)).max() < 1e-14
        errors[alpha] = _l2_rel(state.w.values, math.exp(-state.time) * np.cos(x))
    wall = time.perf_counter() - started
    ok = max(errors.values()) < 1e-8 and wall < 5.0
    report(1, ok, f"max rel L2 error {max(errors.values()):.2e} (< 1e-8), runtime {wall:.2f}s (< 5s)")
    assert ok


@pytest.mark.slow
def test_criterion_2_energy_balance(report):
    started = time.perf_counter()
    base = RunConfig(
        params=SimParams(nu=1.0, eta=1.0, alpha=0.4, beta=1.0, n=128),
        policy=StepPolicy(dt_fixed=5e-4, t_end=1.0),
        ic=ICSpec("orszag_tang"),
        sample_interval=5e-4,
    )
    viscous = energy_balance_residual(run(base).history)
    ideal_cfg = replace(
        base.with_params(nu=0.0, eta=0.0), policy=StepPolicy(dt_fixed=5e-4, t_end=0.5)
    )
    ideal = energy_balance_residual(run(ideal_cfg).history)
    wall = time.perf_counter() - started
    ok = viscous < 1e-5 and ideal < 1e-6 and wall < 120.0
    report(
        2,
        ok,
        f"residual {viscous:.2e} (< 1e-5), ideal residual {ideal:.2e} (< 1e-6), runtime {wall:.1f}s (< 120s)",
    )
    assert ok


def test_criterion_3_formulation_cross_validation(report):
    params = SimParams(nu=0.01, eta=0.01, alpha=0.4, beta=1.0, n=64)
    s = make_initial_condition(ICSpec("orszag_tang"), params.grid)
    u, b = s.u, s.b
    ws, vs = VorticityStepper(params), VelocityStepper(params)
    dt = 5e-3
    for _ in range(round(0.5 / dt)):
        s = ws.step(s, dt)
        u, b = vs.step(u, b, dt)
    diff = _l2_rel(curl2d(u).coeffs, s.w.coeffs)
    ok = diff < 1e-6
    report(3, ok, f"rel L2 vorticity difference {diff:.2e} (< 1e-6) at T = 0.5")
    assert ok


def test_criterion_4_fractional_positivity(report):
    rng = np.random.default_rng(2024)
    grid = get_grid(32)
    violations, worst_gap, worst_ratio = 0, 0.0, 0.0
    for _ in range(100):
        f = random_band_limited(grid, rng)
        for p in (2, 4, 8):
            for alpha in (0.25, 0.5, 0.75, 1.0):
                chk = check_fractional_positivity(f, p, alpha)
                violations += not (chk.lhs <= chk.rhs + 1e-8 * abs(chk.rhs))
                worst_ratio = max(worst_ratio, chk.ratio)
                if p == 2:
                    worst_gap = max(worst_gap, abs(chk.lhs - chk.rhs) / abs(chk.rhs))
    ok = violations == 0 and worst_gap < 1e-9
    report(
        4,
        ok,
        f"{violations} violations in 1200 cases, p=2 max rel gap {worst_gap:.2e} (< 1e-9), max ratio {worst_ratio:.4f}",
    )
    assert ok


def test_criterion_5_gradient_by_curl(report):
    rng = np.random.default_rng(2025)
    grid = get_grid(32)
    worst, ratios = 0.0, []
    for _ in range(100):
        v = random_divergence_free(grid, rng)
        assert abs(v.c1.mean) == 0 and abs(v.c2.mean) == 0
        worst = max(worst, check_gradient_by_curl(v, 2).deviation)
        ratios.append(check_gradient_by_curl(v, 4).ratio)
    finite = all(map(math.isfinite, ratios))
    ok = worst < 1e-12 and finite
    report(
        5,
        ok,
        f"p=2 max deviation {worst:.2e} (< 1e-12); p=4 ratios finite={finite}, "
        f"min {min(ratios):.4f} median {float(np.median(ratios)):.4f} max {max(ratios):.4f}",
    )
    assert ok


def test_criterion_6_regime_truth_table(report):
    mismatches = [(pair, classify(*pair).source, want) for pair, want in TRUTH if classify(*pair).source is not want]
    sheet = [pair for pair, want in TRUTH if spreadsheet(*pair) is not want]
    rows = region_boundary_table(1001)
    bounds_ok = all(b3 < min(b1, b2) for a, b1, b2, b3 in rows if 0 < a <= 1 / 3)
    ok = not mismatches and not sheet and bounds_ok and len(TRUTH) >= 25
    report(
        6,
        ok,
        f"{len(TRUTH) - len(mismatches)}/{len(TRUTH)} pairs match, spreadsheet disagreements {len(sheet)}, "
        f"improved bound strictly smaller at all {len(rows) - 1} sampled alpha in (0, 1/3]: {bounds_ok}",
    )
    assert ok


@pytest.mark.slow
def test_criterion_7_boundedness_probe(report, tmp_path):
    started = time.perf_counter()
    cfg = RunConfig(
        params=SimParams(nu=1.0, eta=1.0, alpha=0.4, beta=1.0, n=256),
        policy=StepPolicy(dt_mode="cfl", dt_fixed=5e-3, cfl_number=0.5, t_end=5.0),
        ic=ICSpec("orszag_tang"),
        sample_interval=0.05,
        output_dir=tmp_path,
    )
    res = run(cfg)
    wall = time.perf_counter() - started
    hist = res.history
    energy = np.array([r.energy for r in hist])
    # nonincreasing up to round-off in the energy sum
    monotone = bool(np.all(np.diff(energy) <= 1e-12 * energy[0]))
    finite = all(r.is_finite() for r in hist)
    completed = res.state.time == pytest.approx(5.0) and hist[-1].time == pytest.approx(5.0)
    ok = completed and not res.blowup.triggered and monotone and finite and wall < 900
    report(
        7,
        ok,
        f"completed={completed}, blowup={res.blowup}, energy monotone={monotone}, "
        f"max X {max(r.X for r in hist):.4g}, max Y {max(r.Y for r in hist):.4g}, "
        f"max |Lambda^gamma b|^2 {max(r.hgamma_b for r in hist):.4g}, all finite={finite}, "
        f"runtime {wall:.0f}s (< 900s)",
    )
    assert ok


def test_criterion_8_temporal_order(report):
    params = SimParams(nu=1.0, eta=1.0, alpha=0.4, beta=1.0, n=64)
    s0 = make_initial_condition(ICSpec("orszag_tang"), params.grid)

    def final(dt, t_end=0.5):
        st, s = VorticityStepper(params), s0
        for _ in range(round(t_end / dt)):
            s = st.step(s, dt)
        return np.concatenate([s.w.coeffs.ravel(), s.j.coeffs.ravel()])

    y1, y2, y3 = final(1e-2), final(5e-3), final(2.5e-3)
    order = math.log2(np.linalg.norm(y1 - y2) / np.linalg.norm(y2 - y3))
    ok = 3.9 <= order <= 4.1
    report(8, ok, f"Richardson order {order:.4f} (in [3.9, 4.1])")
    assert ok


def test_criterion_9_determinism_and_persistence(report, tmp_path):
    params = SimParams(nu=0.05, eta=0.05, alpha=0.4, beta=1.0, n=32)
    state = make_initial_condition(ICSpec("random_smooth", seed=11), params.grid)
    state = VorticityStepper(params).step(state, 0.01)
    save_checkpoint(state, params, tmp_path / "c.gmhd")
    loaded, lp = load_checkpoint(tmp_path / "c.gmhd")
    round_trip = (
        lp == params
        and loaded.time == state.time
        and np.array_equal(loaded.w.coeffs, state.w.coeffs)
        and np.array_equal(loaded.j.coeffs, state.j.coeffs)
    )

    cfg = RunConfig(
        params=params,
        policy=StepPolicy(dt_fixed=0.01, t_end=0.6),
        ic=ICSpec("random_smooth", seed=11),
        sample_interval=0.05,
        checkpoint_interval=0.3,
        output_dir=tmp_path / "full",
    )
    full = run(cfg)
    resumed = run(replace(cfg, output_dir=tmp_path / "resumed"), resume_from=tmp_path / "full" / "checkpoint_t0.300000.gmhd")
    resume_exact = (
        resumed.state.time == full.state.time
        and np.array_equal(resumed.state.w.coeffs, full.state.w.coeffs)
        and np.array_equal(resumed.state.j.coeffs, full.state.j.coeffs)
    )

    again = run(replace(cfg, output_dir=tmp_path / "again"))
    csv_same = (tmp_path / "full" / "diagnostics.csv").read_bytes() == (tmp_path / "again" / "diagnostics.csv").read_bytes()
    assert np.array_equal(again.state.w.coeffs, full.state.w.coeffs)

    ok = round_trip and resume_exact and csv_same
    report(9, ok, f"checkpoint bit-exact={round_trip}, resume bit-exact={resume_exact}, identical CSV={csv_same}")
    assert ok
