"""R-sine tables on the historical 3 deg 45 min grid, with difference columns.

Entries are R*sin at multiples of 225 arcminutes, generated by integrating
the sin/cos ODE system across the quadrant (never by calling a host sine).
Quadratic interpolation between nodes uses the average and the difference of
the two adjacent tabular differences; a plain linear interpolation is kept
as the comparison baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .solver import IVP, StepPlan, integrate_final
from .functions import _circle_rhs

#: Grid step in arcminutes (3 degrees 45 minutes) and in degrees.
STEP_ARCMIN = 225.0
STEP_DEG = STEP_ARCMIN / 60.0
ENTRY_COUNT = 24

#: Historical radius anchor.
DEFAULT_RADIUS = 1e7


@dataclass(frozen=True)
class SineTable:
    """24 tabulated values v_k = R*sin(k * 225'), with difference columns."""

    radius: float
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != ENTRY_COUNT:
            raise ValueError(f"expected {ENTRY_COUNT} entries, got {len(self.values)}")

    def value_at_node(self, k: int) -> float:
        """v_k with the v_0 = 0 convention; k in 0..24."""
        if not 0 <= k <= ENTRY_COUNT:
            raise ValueError(f"node index {k} out of range")
        return 0.0 if k == 0 else self.values[k - 1]

    @property
    def first_diffs(self) -> tuple[float, ...]:
        """first_diffs[i] = v_{i+1} - v_i (the difference over interval i)."""
        prev = 0.0
        out = []
        for v in self.values:
            out.append(v - prev)
            prev = v
        return tuple(out)

    @property
    def second_diffs(self) -> tuple[float, ...]:
        """second_diffs[i] = first_diffs[i+1] - first_diffs[i], i in 0..22."""
        d = self.first_diffs
        return tuple(d[i + 1] - d[i] for i in range(len(d) - 1))

    def to_csv(self) -> str:
        """Rows "k,arcmin,value,diff1,diff2", 6 decimal places in table units."""
        d1 = self.first_diffs
        d2 = self.second_diffs
        lines = ["k,arcmin,value,diff1,diff2"]
        for k in range(1, ENTRY_COUNT + 1):
            second = f"{d2[k - 1]:.6f}" if k - 1 < len(d2) else ""
            lines.append(
                f"{k},{k * STEP_ARCMIN:.0f},{self.values[k - 1]:.6f},{d1[k - 1]:.6f},{second}"
            )
        return "\n".join(lines) + "\n"


def generate_sine_table(
    radius: float = DEFAULT_RADIUS, method: str = "rk4", h: float = 1e-5
) -> SineTable:
    """Tabulate R*sin by one pass of ODE integration across the quadrant.

    The integration is segmented at the 24 grid angles so every sample lands
    on its node exactly; the state carries over between segments.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    t = 0.0
    state = (0.0, 1.0)
    values = []
    for k in range(1, ENTRY_COUNT + 1):
        target = k * math.pi / 48.0  # k * 225 arcmin in radians
        ivp = IVP(2, _circle_rhs, t, state)
        t, state = integrate_final(ivp, StepPlan(h, target), method)
        values.append(radius * state[0])
    return SineTable(radius, tuple(values))


def synthetic_table(f: Callable[[float], float], radius: float = 1.0) -> SineTable:
    """Tabulate an arbitrary function of the angle in degrees on the same grid."""
    return SineTable(radius, tuple(f(k * STEP_DEG) for k in range(1, ENTRY_COUNT + 1)))


def _locate(theta_deg: float) -> tuple[int, float]:
    if not 0.0 <= theta_deg <= 90.0:
        raise ValueError(f"angle {theta_deg!r} outside [0, 90] degrees")
    j = int(theta_deg // STEP_DEG)
    if j >= ENTRY_COUNT:
        j = ENTRY_COUNT - 1
    return j, (theta_deg - j * STEP_DEG) / STEP_DEG


def quadratic_interp(table: SineTable, theta_deg: float) -> float:
    """Second-difference (quadratic) interpolation at an angle in degrees.

    With t the fraction into the interval starting at node j, dp the tabular
    difference ending at node j and dn the one starting there:

        v(j) + t * (dp + dn)/2 + t^2 * (dn - dp)/2

    Exact for quadratics.  The first interval has no preceding difference and
    the last interval falls back to linear, both by the stated end policy.
    """
    j, t = _locate(theta_deg)
    diffs = table.first_diffs
    base = table.value_at_node(j)
    if t == 0.0:
        return base
    if t == 1.0:  # only at the clamped right endpoint, theta = 90
        return table.value_at_node(j + 1)
    dn = diffs[j]
    if j == 0 or j == ENTRY_COUNT - 1:
        return base + t * dn
    dp = diffs[j - 1]
    return base + t * (dp + dn) / 2.0 + t * t * (dn - dp) / 2.0


def linear_interp(table: SineTable, theta_deg: float) -> float:
    """Chordal interpolation at an angle in degrees (the comparison baseline)."""
    j, t = _locate(theta_deg)
    if t == 0.0:
        return table.value_at_node(j)
    if t == 1.0:
        return table.value_at_node(j + 1)
    return table.value_at_node(j) + t * table.first_diffs[j]
