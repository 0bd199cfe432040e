"""Classification of (alpha, beta) against known global-regularity regions.

Region predicates are evaluated in exact rational arithmetic on the given
doubles (``Fraction(x)`` is exact), so boundary points such as ``beta = 1``
or ``alpha = 1/2`` behave exactly as written and no epsilon is introduced.
Margins are reported as floats.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction as F
from typing import Callable

import numpy as np


class Source(str, enum.Enum):
    Theorem1_1 = "Theorem1_1"
    Theorem1_2 = "Theorem1_2"
    Wu22_case1 = "Wu22_case1"
    Wu22_case2 = "Wu22_case2"
    Wu22_case3 = "Wu22_case3"
    Ref31_case1 = "Ref31_case1"
    Ref31_case2 = "Ref31_case2"
    Remark_alpha0 = "Remark_alpha0"
    Uncovered = "Uncovered"


@dataclass(frozen=True)
class RegimeVerdict:
    covered: bool
    source: Source
    margin: float
    notes: str = ""

    def as_dict(self) -> dict:
        return {"covered": self.covered, "source": self.source.value, "margin": self.margin, "notes": self.notes}


HALF, THIRD = F(1, 2), F(1, 3)


@dataclass(frozen=True)
class _Region:
    source: Source
    # each constraint: (slack function, kind) with kind in {"gt", "ge", "eq"}
    constraints: tuple
    margin: Callable[[F, F], F]
    notes: str

    def slacks(self, a: F, b: F):
        for fn, kind in self.constraints:
            yield fn(a, b), kind

    def matches(self, a: F, b: F) -> bool:
        for s, kind in self.slacks(a, b):
            if s is None:
                return False
            if kind == "gt" and not s > 0:
                return False
            if kind == "ge" and not s >= 0:
                return False
            if kind == "eq" and s != 0:
                return False
        return True

    def distance(self, a: F, b: F) -> F | None:
        """Smallest constraint slack, equalities counted as ``-|gap|``."""
        vals = []
        for s, kind in self.slacks(a, b):
            if s is None:
                return None
            vals.append(-abs(s) if kind == "eq" else s)
        return min(vals)


def _improved_lhs(a: F, b: F):
    # 2 beta + 2 alpha / (1 - alpha) - 3, undefined for alpha >= 1
    if a >= 1:
        return None
    return 2 * b + 2 * a / (1 - a) - 3


REGIONS = (
    # alpha > 1/3, beta = 1; alpha >= 1/2 is attributed to Wu22_case1 below
    _Region(
        Source.Theorem1_1,
        ((lambda a, b: a - THIRD, "gt"), (lambda a, b: HALF - a, "gt"), (lambda a, b: b - 1, "eq")),
        lambda a, b: a - THIRD,
        "alpha > 1/3 with full magnetic diffusion beta = 1",
    ),
    _Region(
        Source.Theorem1_2,
        (
            (lambda a, b: a, "gt"),
            (lambda a, b: THIRD - a, "ge"),
            (lambda a, b: b - 1, "gt"),
            (lambda a, b: F(3, 2) - b, "ge"),
            (_improved_lhs, "gt"),
        ),
        _improved_lhs,
        "alpha in (0, 1/3], beta in (1, 3/2], 3 < 2 beta + 2 alpha/(1 - alpha)",
    ),
    _Region(
        Source.Wu22_case1,
        ((lambda a, b: a - HALF, "ge"), (lambda a, b: b - 1, "ge")),
        lambda a, b: min(a - HALF, b - 1),
        "alpha >= 1/2, beta >= 1",
    ),
    _Region(
        Source.Wu22_case2,
        ((lambda a, b: a - 2, "ge"), (lambda a, b: b, "eq")),
        lambda a, b: a - 2,
        "alpha >= 2, beta = 0",
    ),
    _Region(
        Source.Wu22_case3,
        ((lambda a, b: a, "ge"), (lambda a, b: HALF - a, "gt"), (lambda a, b: 2 * a + b - 2, "gt")),
        lambda a, b: 2 * a + b - 2,
        "0 <= alpha < 1/2, 2 alpha + beta > 2",
    ),
    _Region(
        Source.Ref31_case1,
        ((lambda a, b: a, "eq"), (lambda a, b: b - F(3, 2), "gt")),
        lambda a, b: b - F(3, 2),
        "alpha = 0, beta > 3/2",
    ),
    _Region(
        Source.Ref31_case2,
        (
            (lambda a, b: a, "gt"),
            (lambda a, b: HALF - a, "gt"),
            (lambda a, b: F(3, 2) - b, "ge"),
            (lambda a, b: b - F(5, 4), "gt"),
            (lambda a, b: a + 2 * b - 3, "gt"),
        ),
        lambda a, b: a + 2 * b - 3,
        "0 < alpha < 1/2, 5/4 < beta <= 3/2, alpha + 2 beta > 3",
    ),
    _Region(
        Source.Remark_alpha0,
        ((lambda a, b: a, "eq"), (lambda a, b: b - 1, "gt")),
        lambda a, b: b - 1,
        "alpha = 0, beta > 1 (later work)",
    ),
)

_UNCOVERED_NOTE = "no listed region applies"
_ENDPOINT_NOTE = "alpha = 0, beta = 1 is open; numerical studies exist for this endpoint"


def classify(alpha: float, beta: float) -> RegimeVerdict:
    """First region (in precedence order) containing ``(alpha, beta)``.

    For a match, ``margin`` is the slack of the region's binding inequality.
    When nothing matches it is the largest per-region distance, i.e. how far
    the pair is from satisfying the nearest region (a value <= 0).
    """
    a, b = F(float(alpha)), F(float(beta))
    for region in REGIONS:
        if region.matches(a, b):
            return RegimeVerdict(True, region.source, float(region.margin(a, b)), region.notes)
    dists = [d for r in REGIONS if (d := r.distance(a, b)) is not None]
    margin = float(max(dists)) if dists else float("-inf")
    note = _ENDPOINT_NOTE if (a == 0 and b == 1) else _UNCOVERED_NOTE
    return RegimeVerdict(False, Source.Uncovered, margin, note)


BOUNDS_COLUMNS = ("alpha", "two_minus_two_alpha", "three_minus_alpha_over_two", "improved")


def region_boundary_table(resolution: int) -> list[tuple[float, float, float, float]]:
    """Lower bounds on beta over ``alpha`` in ``[0, 1/3]`` (``resolution`` points).

    Columns: ``2 - 2 alpha``, ``(3 - alpha)/2`` and the improved bound
    ``3/2 - alpha/(1 - alpha)``.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    rows = []
    for a in np.linspace(0.0, 1.0 / 3.0, resolution):
        a = float(a)
        rows.append((a, 2.0 - 2.0 * a, (3.0 - a) / 2.0, 1.5 - a / (1.0 - a)))
    return rows
