"""Run and sweep orchestration."""

from __future__ import annotations

import csv
import json
import logging
import math
import os
import time as _time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .checkpoint import load_checkpoint, save_checkpoint
from .config import RunConfig, dump_config
from .diagnostics import CsvWriter, DiagnosticsRecord, sample
from .errors import NonFiniteState
from .initial import make_initial_condition
from .mhd import MhdState
from .regime import RegimeVerdict, classify
from .timestepper import BlowupReason, BlowupVerdict, VorticityStepper, cfl_dt, detect_blowup

log = logging.getLogger(__name__)

THREADS_ENV = "GMHD2D_THREADS"
SUMMARY_COLUMNS = ("alpha", "beta", "verdict", "margin", "max_X", "max_Y", "blowup", "wall_seconds")


@dataclass
class RunResult:
    state: MhdState
    history: list[DiagnosticsRecord]
    blowup: BlowupVerdict
    regime: RegimeVerdict
    steps: int = 0
    wall_seconds: float = 0.0

    def __iter__(self):
        # unpacks as (final state, history, blow-up verdict)
        return iter((self.state, self.history, self.blowup))


def _next_sample_time(t: float, interval: float) -> float:
    # sample times are k * interval on a global grid so resumed runs land on
    # exactly the same floats as uninterrupted ones
    k = math.floor(t / interval + 1e-9) + 1
    return k * interval


def run(config: RunConfig, resume_from=None) -> RunResult:
    """Integrate from the initial condition (or a checkpoint) to ``t_end``.

    Diagnostics are sampled at multiples of ``sample_interval`` (steps are
    shortened to land on them) and appended to ``diagnostics.csv`` in
    ``output_dir`` as they are produced.  Stops early on a blow-up trigger.
    """
    started = _time.perf_counter()
    params, policy = config.params, config.policy
    if resume_from is not None:
        state, saved = load_checkpoint(resume_from)
        if saved != params:
            log.warning("checkpoint params %s differ from config %s; using config", saved, params)
    else:
        state = make_initial_condition(config.ic, params.grid)

    out = Path(config.output_dir) if config.output_dir is not None else None
    writer = None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "config.txt").write_text(dump_config(config), encoding="utf-8")
        writer = CsvWriter(out / "diagnostics.csv")

    stepper = VorticityStepper(params)
    history: list[DiagnosticsRecord] = []
    verdict = BlowupVerdict()
    steps = 0

    def record(s: MhdState):
        rec = sample(s, params, config.diagnostics)
        history.append(rec)
        if writer is not None:
            writer.write(rec)

    try:
        record(state)
        t_end = policy.t_end
        next_sample = _next_sample_time(state.time, config.sample_interval)
        next_ckpt = (
            _next_sample_time(state.time, config.checkpoint_interval) if config.checkpoint_interval else math.inf
        )
        while state.time < t_end and steps < policy.max_steps:
            dt = policy.dt_fixed if policy.dt_mode == "fixed" else cfl_dt(state, policy)
            target = min(next_sample, t_end)
            gap = target - state.time
            landing = gap <= dt * (1.0 + 1e-9)
            h = gap if landing else dt
            try:
                state = stepper.step(state, h)
            except NonFiniteState:
                verdict = BlowupVerdict(True, BlowupReason.NON_FINITE, state.time + h, {"where": "step"})
                break
            steps += 1
            if landing:
                state = MhdState(state.w, state.j, target)
                record(state)
                verdict = detect_blowup(history, state, config.thresholds)
                if verdict.triggered:
                    break
                if target >= next_sample:
                    next_sample = _next_sample_time(state.time, config.sample_interval)
            if out is not None and state.time >= next_ckpt * (1.0 - 1e-12):
                save_checkpoint(state, params, out / f"checkpoint_t{state.time:.6f}.gmhd")
                next_ckpt = _next_sample_time(state.time, config.checkpoint_interval)
        if history[-1].time != state.time and not verdict.triggered:
            record(state)
    finally:
        if writer is not None:
            writer.close()

    regime = classify(params.alpha, params.beta)
    wall = _time.perf_counter() - started
    if out is not None:
        summary = {
            "final_time": state.time,
            "steps": steps,
            "regime": regime.as_dict(),
            "blowup": {
                "triggered": verdict.triggered,
                "reason": verdict.reason.value if verdict.reason else None,
                "time": verdict.time,
                "details": {k: float(v) if isinstance(v, (int, float)) else v for k, v in verdict.details.items()},
            },
            "wall_seconds": wall,
        }
        (out / "summary.json").write_text(json.dumps(summary, indent=2), encoding="utf-8")
    return RunResult(state, history, verdict, regime, steps, wall)


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    alpha_values: tuple
    beta_values: tuple
    base: RunConfig
    max_parallel: int = 1

    def __post_init__(self):
        if not self.alpha_values or not self.beta_values:
            raise ValueError("sweep needs at least one alpha and one beta")
        if self.max_parallel < 1:
            raise ValueError("max_parallel must be >= 1")


@dataclass(frozen=True)
class SummaryRow:
    alpha: float
    beta: float
    verdict: str
    margin: float
    max_X: float
    max_Y: float
    blowup: str
    wall_seconds: float = field(compare=False)

    def as_row(self) -> list[str]:
        return [str(getattr(self, c)) if isinstance(getattr(self, c), str) else repr(getattr(self, c)) for c in SUMMARY_COLUMNS]


def _pair_config(base: RunConfig, alpha: float, beta: float) -> RunConfig:
    cfg = base.with_params(alpha=alpha, beta=beta)
    if base.output_dir is not None:
        cfg = replace(cfg, output_dir=Path(base.output_dir) / f"alpha{alpha!r}_beta{beta!r}")
    return cfg


def _run_pair(job) -> SummaryRow:
    base, a, b = job
    started = _time.perf_counter()
    regime = classify(a, b)
    try:
        res = run(_pair_config(base, a, b))
        max_x = max(r.X for r in res.history)
        max_y = max(r.Y for r in res.history)
        blow = str(res.blowup)
    except Exception as exc:  # recorded per row; the sweep continues
        log.exception("run alpha=%s beta=%s failed", a, b)
        max_x = max_y = math.nan
        blow = f"error: {type(exc).__name__}: {exc}"
    return SummaryRow(a, b, regime.source.value, regime.margin, max_x, max_y, blow, _time.perf_counter() - started)


def effective_parallelism(requested: int) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, min(requested, int(env)))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV, env)
    return requested


def sweep(spec: SweepSpec) -> list[SummaryRow]:
    """Run every (alpha, beta) pair; rows come back alpha-major regardless of parallelism."""
    jobs = [(spec.base, a, b) for a in spec.alpha_values for b in spec.beta_values]
    workers = effective_parallelism(spec.max_parallel)
    if workers == 1 or len(jobs) == 1:
        rows = [_run_pair(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_pair, jobs))
    if spec.base.output_dir is not None:
        write_summary(Path(spec.base.output_dir) / "summary.csv", rows)
    return rows


def write_summary(path, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for r in rows:
            w.writerow(r.as_row())
