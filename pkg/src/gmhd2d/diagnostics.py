"""Norm diagnostics tracked along a run, and the discrete energy balance."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .errors import InsufficientSamples, NonzeroMean, RegimeMismatch
from .mhd import MhdState, SimParams
from .spectral import AREA, ScalarField, values_on
from .timestepper import spectrum_tail

CSV_COLUMNS = ("time", "energy", "X", "Y", "diss_u", "diss_b", "hgamma_b", "lp_w", "spectrum_tail")


@dataclass(frozen=True)
class DiagnosticsRecord:
    time: float
    energy: float
    X: float
    Y: float
    diss_u: float
    diss_b: float
    hgamma_b: float
    lp_w: float
    spectrum_tail: float

    def as_row(self) -> list[str]:
        return [repr(float(getattr(self, c))) for c in CSV_COLUMNS]

    def is_finite(self) -> bool:
        return all(math.isfinite(getattr(self, f.name)) for f in fields(self))


class Regime(str, enum.Enum):
    THEOREM1 = "Theorem1"
    THEOREM2 = "Theorem2"


@dataclass(frozen=True)
class GammaChoice:
    gamma: float
    regime: Regime
    admissible: bool


@dataclass(frozen=True)
class DiagnosticsConfig:
    """Exponents used by :func:`sample`.

    ``None`` means: derive ``gamma`` from :func:`gamma_choice` and ``p`` from
    the vorticity integrability exponent for the current (alpha, beta).
    """

    gamma: float | None = None
    p: float | None = None
    tail_fraction: float = 1.0 / 6.0


def sobolev_norm(field: ScalarField, s: float) -> float:
    """Homogeneous ``H^s`` norm; the mean mode only counts at ``s = 0``."""
    c2 = np.abs(field.coeffs) ** 2
    if s < 0 and c2[0, 0] > (1e-12 * field.l2_norm()) ** 2:
        raise NonzeroMean("negative-order Sobolev norm of a field with nonzero mean")
    weight = field.grid.symbol_pow(2.0 * s)
    return float(np.sqrt(AREA * np.sum(weight * c2)))


def lp_norm(field: ScalarField, p: float, oversample: bool | None = None) -> float:
    """Uniform-grid ``L^p`` norm, ``(sum |f|^p dx^2)^(1/p)``; ``p = inf`` is the max.

    For ``p > 2`` the field is evaluated on a grid refined by 2 (spectral
    interpolation) unless ``oversample`` is given explicitly.
    """
    if not (p >= 1):
        raise ValueError(f"p must be >= 1 or inf, got {p!r}")
    if oversample is None:
        oversample = p > 2
    m = 2 * field.grid.n if oversample else field.grid.n
    vals = values_on(field, m) if oversample else field.values
    a = np.abs(vals)
    if math.isinf(p):
        return float(a.max())
    dx2 = (2.0 * np.pi / m) ** 2
    scale = a.max()
    if scale == 0:
        return 0.0
    # scaled to avoid overflow at large p
    return float(scale * (np.sum((a / scale) ** p) * dx2) ** (1.0 / p))


def gamma_choice(alpha: float, beta: float, regime: Regime | str) -> GammaChoice:
    """The Sobolev exponent used for the ``Lambda^gamma b`` estimate.

    Theorem1 (beta = 1): ``gamma = 2 - a(1+a)/(1-a)``, admissible iff
    ``1 < gamma < 1 + a``.  Theorem2: ``gamma = 3 - beta - a(1+a)/(1-a)``,
    admissible iff ``beta < gamma < a + beta``.
    """
    regime = Regime(regime)
    if alpha >= 1:
        raise RegimeMismatch(f"gamma formula needs alpha < 1, got {alpha}")
    q = alpha * (1.0 + alpha) / (1.0 - alpha)
    if regime is Regime.THEOREM1:
        if beta != 1:
            raise RegimeMismatch(f"Theorem1 regime requires beta = 1, got {beta}")
        g = 2.0 - q
        return GammaChoice(g, regime, 1.0 < g < 1.0 + alpha)
    g = 3.0 - beta - q
    return GammaChoice(g, regime, beta < g < alpha + beta)


def default_exponents(alpha: float, beta: float) -> tuple[float, float]:
    """``(gamma, p)`` for monitoring: formula values where they are defined.

    ``p = 2(1+a)/(2-gamma)`` or ``2(1+a)/(3-beta-gamma)``; with the formula
    gamma both reduce to ``2(1-a)/a``.  Outside ``0 <= alpha < 1`` gamma falls
    back to ``beta``; a ``p`` below 2 (large alpha) falls back to 2.
    """
    if alpha >= 1:
        return float(beta), 2.0
    regime = Regime.THEOREM1 if beta == 1 else Regime.THEOREM2
    g = gamma_choice(alpha, beta, regime).gamma
    denom = (2.0 - g) if regime is Regime.THEOREM1 else (3.0 - beta - g)
    p = math.inf if denom <= 0 else 2.0 * (1.0 + alpha) / denom
    return g, max(p, 2.0)


def sample(state: MhdState, params: SimParams, config: DiagnosticsConfig | None = None) -> DiagnosticsRecord:
    config = config or DiagnosticsConfig()
    g_def, p_def = default_exponents(params.alpha, params.beta)
    gamma = g_def if config.gamma is None else config.gamma
    p = p_def if config.p is None else config.p

    grid = state.grid
    w2 = np.abs(state.w.coeffs) ** 2
    j2 = np.abs(state.j.coeffs) ** 2

    def weighted(r, c2):
        return float(AREA * np.sum(grid.symbol_pow(r) * c2))

    # |u_hat|^2 = |w_hat|^2 / |k|^2, so Lambda^s u maps to |k|^(2s-2) |w_hat|^2
    energy = weighted(-2.0, w2) + weighted(-2.0, j2)
    X = weighted(0.0, w2) + weighted(0.0, j2)
    Y = weighted(2.0, w2) + weighted(2.0, j2)
    diss_u = params.nu * weighted(2.0 * params.alpha - 2.0, w2)
    diss_b = params.eta * weighted(2.0 * params.beta - 2.0, j2)
    hgamma_b = weighted(2.0 * gamma - 2.0, j2)
    return DiagnosticsRecord(
        time=float(state.time),
        energy=energy,
        X=X,
        Y=Y,
        diss_u=diss_u,
        diss_b=diss_b,
        hgamma_b=hgamma_b,
        lp_w=lp_norm(state.w, p),
        spectrum_tail=spectrum_tail(grid, state.w.coeffs, state.j.coeffs, config.tail_fraction),
    )


def energy_balance_residual(history: Sequence[DiagnosticsRecord]) -> float:
    """``max_t |E(t) + 2 int_0^t (diss_u + diss_b) - E(0)| / E(0)``, trapezoid rule.

    Returns 0 when ``E(0) = 0``.
    """
    if len(history) < 2:
        raise InsufficientSamples("energy balance needs at least two samples")
    t = np.array([r.time for r in history])
    e = np.array([r.energy for r in history])
    d = np.array([r.diss_u + r.diss_b for r in history])
    if e[0] == 0:
        return 0.0
    integral = np.concatenate([[0.0], np.cumsum(0.5 * (d[1:] + d[:-1]) * np.diff(t))])
    return float(np.max(np.abs(e + 2.0 * integral - e[0])) / e[0])


class CsvWriter:
    """Appends records to a CSV file, header first, flushing every row."""

    def __init__(self, path):
        self._fh = open(path, "w", newline="", encoding="utf-8")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(CSV_COLUMNS)
        self._fh.flush()

    def write(self, record: DiagnosticsRecord):
        self._writer.writerow(record.as_row())
        self._fh.flush()

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def write_csv(path, records: Iterable[DiagnosticsRecord]):
    with CsvWriter(path) as w:
        for r in records:
            w.write(r)


def read_csv(path) -> list[DiagnosticsRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [DiagnosticsRecord(**{k: float(v) for k, v in row.items()}) for row in reader]


def record_dict(record: DiagnosticsRecord) -> dict:
    return asdict(record)
