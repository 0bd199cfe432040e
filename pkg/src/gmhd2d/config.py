"""Run configuration and the flat ``key = value`` config file format.

Example::

    # Orszag-Tang, covered regime
    nu = 1.0
    eta = 1.0
    alpha = 0.4
    beta = 1.0
    n = 256
    dt_mode = cfl
    dt = 0.01
    t_end = 5
    sample_interval = 0.05
    ic = orszag_tang
    output_dir = runs/ot
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .diagnostics import DiagnosticsConfig
from .errors import BadSpec
from .mhd import SimParams
from .timestepper import BlowupThresholds, StepPolicy

IC_KINDS = ("orszag_tang", "single_mode", "random_smooth", "zero")


@dataclass(frozen=True)
class ICSpec:
    kind: str = "orszag_tang"
    # single_mode
    axis: int = 2
    wavenumber: int = 1
    amplitude: float = 1.0
    target: str = "u"
    # random_smooth
    seed: int = 0
    spectral_slope: float = 2.0
    cutoff: float = 4.0

    def __post_init__(self):
        if self.kind not in IC_KINDS:
            raise BadSpec(f"unknown initial condition {self.kind!r}; expected one of {IC_KINDS}")
        if self.kind == "single_mode":
            if self.axis not in (1, 2):
                raise BadSpec("single_mode axis must be 1 or 2")
            if self.target not in ("u", "b"):
                raise BadSpec("single_mode target must be 'u' or 'b'")
            if self.wavenumber < 1:
                raise BadSpec("single_mode wavenumber must be >= 1")
        if self.kind == "random_smooth" and self.cutoff < 1:
            raise BadSpec("random_smooth cutoff must be >= 1")


@dataclass(frozen=True)
class RunConfig:
    params: SimParams = field(default_factory=SimParams)
    policy: StepPolicy = field(default_factory=StepPolicy)
    ic: ICSpec = field(default_factory=ICSpec)
    sample_interval: float = 0.01
    output_dir: Path | None = None
    checkpoint_interval: float | None = None
    diagnostics: DiagnosticsConfig = field(default_factory=DiagnosticsConfig)
    thresholds: BlowupThresholds = field(default_factory=BlowupThresholds)
    max_parallel: int = 1

    def __post_init__(self):
        if not 0 < self.sample_interval <= self.policy.t_end:
            raise BadSpec("sample_interval must be in (0, t_end]")
        if self.checkpoint_interval is not None and self.checkpoint_interval <= 0:
            raise BadSpec("checkpoint_interval must be > 0")
        if self.max_parallel < 1:
            raise BadSpec("max_parallel must be >= 1")
        n = self.params.n
        if n < 8 or n & (n - 1):
            raise BadSpec(f"n must be a power of two >= 8, got {n}")

    def with_params(self, **changes) -> RunConfig:
        return replace(self, params=replace(self.params, **changes))


# key -> (section, attribute, parser)
def _opt_float(s: str):
    return None if s.lower() in ("none", "") else float(s)


_KEYS = {
    "nu": ("params", "nu", float),
    "eta": ("params", "eta", float),
    "alpha": ("params", "alpha", float),
    "beta": ("params", "beta", float),
    "n": ("params", "n", int),
    "dt_mode": ("policy", "dt_mode", str),
    "dt": ("policy", "dt_fixed", _opt_float),
    "cfl": ("policy", "cfl_number", float),
    "t_end": ("policy", "t_end", float),
    "max_steps": ("policy", "max_steps", int),
    "ic": ("ic", "kind", str),
    "ic_axis": ("ic", "axis", int),
    "ic_wavenumber": ("ic", "wavenumber", int),
    "ic_amplitude": ("ic", "amplitude", float),
    "ic_target": ("ic", "target", str),
    "ic_seed": ("ic", "seed", int),
    "ic_slope": ("ic", "spectral_slope", float),
    "ic_cutoff": ("ic", "cutoff", float),
    "gamma": ("diagnostics", "gamma", _opt_float),
    "p": ("diagnostics", "p", _opt_float),
    "tail_fraction": ("diagnostics", "tail_fraction", float),
    "tail_ratio": ("thresholds", "tail_ratio", float),
    "growth_factor": ("thresholds", "growth_factor", float),
    "sample_interval": (None, "sample_interval", float),
    "output_dir": (None, "output_dir", lambda s: None if s.lower() == "none" else Path(s)),
    "checkpoint_interval": (None, "checkpoint_interval", _opt_float),
    "max_parallel": (None, "max_parallel", int),
}


def parse_config(text: str) -> RunConfig:
    sections: dict[str | None, dict] = {k: {} for k in ("params", "policy", "ic", "diagnostics", "thresholds", None)}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadSpec(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise BadSpec(f"line {lineno}: unknown key {key!r}")
        section, attr, conv = _KEYS[key]
        try:
            sections[section][attr] = conv(value)
        except ValueError as exc:
            raise BadSpec(f"line {lineno}: bad value for {key}: {value!r}") from exc
    try:
        return RunConfig(
            params=SimParams(**sections["params"]),
            policy=StepPolicy(**sections["policy"]),
            ic=ICSpec(**sections["ic"]),
            diagnostics=DiagnosticsConfig(**sections["diagnostics"]),
            thresholds=BlowupThresholds(**sections["thresholds"]),
            **sections[None],
        )
    except BadSpec:
        raise
    except ValueError as exc:
        raise BadSpec(str(exc)) from exc


def load_config(path) -> RunConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    return str(v)


def dump_config(config: RunConfig) -> str:
    lines = []
    for key, (section, attr, _) in _KEYS.items():
        obj = config if section is None else getattr(config, section)
        lines.append(f"{key} = {_fmt(getattr(obj, attr))}")
    return "\n".join(lines) + "\n"
