"""Fixed-step initial-value-problem integration.

Two methods: the plain first-order step-by-step recurrence (Euler) and the
classical fourth-order Runge-Kutta update.  Steps are laid out on a uniform
grid from ``t0`` toward ``t_end``; the final step is shortened so the last
node lands on ``t_end`` bit-exactly.  Backward integration (``t_end < t0``)
uses the same machinery with a negated step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

Vector = tuple[float, ...]
RHS = Callable[[float, Sequence[float]], Sequence[float]]


class IntegrationError(RuntimeError):
    """A right-hand-side evaluation failed; carries the failing time."""

    def __init__(self, t: float, cause: Exception):
        super().__init__(f"integration failed at t={t!r}: {cause}")
        self.t = t
        self.cause = cause


@dataclass(frozen=True)
class IVP:
    """An initial-value problem y' = rhs(t, y), y(t0) = y0."""

    dim: int
    rhs: RHS
    t0: float
    y0: Vector

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if len(self.y0) != self.dim:
            raise ValueError(f"y0 has length {len(self.y0)}, expected {self.dim}")
        object.__setattr__(self, "y0", tuple(float(v) for v in self.y0))


@dataclass(frozen=True)
class StepPlan:
    """Step size and target time for one integration run."""

    h: float
    t_end: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("step size h must be positive")


@dataclass(frozen=True)
class Trajectory:
    """Node times and states recorded by an integrator."""

    times: tuple[float, ...]
    states: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.states[0])

    def final_state(self) -> Vector:
        return self.states[-1]

    def component(self, i: int) -> list[float]:
        return [s[i] for s in self.states]

    def to_csv(self) -> str:
        """Render as CSV with round-trippable 17-significant-digit doubles."""
        dim = self.dim
        lines = ["t," + ",".join(f"y{i + 1}" for i in range(dim))]
        for t, state in zip(self.times, self.states):
            lines.append(",".join(f"{v:.17g}" for v in (t, *state)))
        return "\n".join(lines) + "\n"


def _call_rhs(rhs: RHS, dim: int, t: float, y: Sequence[float]) -> tuple[float, ...]:
    try:
        out = tuple(rhs(t, y))
    except (ArithmeticError, ValueError) as exc:
        raise IntegrationError(t, exc) from exc
    except Exception as exc:  # expr evaluation errors, etc.
        if type(exc).__module__.startswith("stepcalc"):
            raise IntegrationError(t, exc) from exc
        raise
    if len(out) != dim:
        raise IntegrationError(t, ValueError(f"rhs returned {len(out)} components, expected {dim}"))
    return out


def _euler_step(rhs: RHS, dim: int, t: float, y: Vector, h: float) -> Vector:
    k = _call_rhs(rhs, dim, t, y)
    return tuple(yi + h * ki for yi, ki in zip(y, k))


def _rk4_step(rhs: RHS, dim: int, t: float, y: Vector, h: float) -> Vector:
    k1 = _call_rhs(rhs, dim, t, y)
    k2 = _call_rhs(rhs, dim, t + h / 2, tuple(yi + h / 2 * ki for yi, ki in zip(y, k1)))
    k3 = _call_rhs(rhs, dim, t + h / 2, tuple(yi + h / 2 * ki for yi, ki in zip(y, k2)))
    k4 = _call_rhs(rhs, dim, t + h, tuple(yi + h * ki for yi, ki in zip(y, k3)))
    return tuple(
        yi + h / 6 * (a + 2 * b + 2 * c + d)
        for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
    )


_STEPPERS = {"euler": _euler_step, "rk4": _rk4_step}


def integrate(ivp: IVP, plan: StepPlan, method: str = "rk4", record: bool = True) -> Trajectory:
    """Integrate from t0 to t_end on a uniform grid.

    With ``record=False`` only the first and last nodes are kept (streaming
    mode for long integrations).
    """
    try:
        step_fn = _STEPPERS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    t0, t_end = ivp.t0, plan.t_end
    y = ivp.y0
    if t_end == t0:
        return Trajectory((t0,), (y,))
    span = t_end - t0
    n = max(1, math.ceil(abs(span) / plan.h))
    hs = math.copysign(plan.h, span)
    times = [t0]
    states = [y]
    t = t0
    for k in range(n):
        t_next = t_end if k == n - 1 else t0 + (k + 1) * hs
        y = step_fn(ivp.rhs, ivp.dim, t, y, t_next - t)
        t = t_next
        if record:
            times.append(t)
            states.append(y)
    if not record:
        times.append(t)
        states.append(y)
    return Trajectory(tuple(times), tuple(states))


def integrate_final(ivp: IVP, plan: StepPlan, method: str = "rk4") -> tuple[float, Vector]:
    """Final node only; O(1) memory."""
    traj = integrate(ivp, plan, method, record=False)
    return traj.times[-1], traj.states[-1]


def integrate_euler(ivp: IVP, plan: StepPlan) -> Trajectory:
    return integrate(ivp, plan, "euler")


def integrate_rk4(ivp: IVP, plan: StepPlan) -> Trajectory:
    return integrate(ivp, plan, "rk4")


def find_zero_crossings(
    traj: Trajectory,
    component: int,
    ivp: IVP,
    method: str = "rk4",
    h: float | None = None,
    tol: float = 1e-10,
    max_iter: int = 60,
) -> list[float]:
    """Refined times where a state component crosses zero.

    A node holding an exact zero counts as one crossing (it terminates the
    previous sign run); sign changes between adjacent nodes are refined by
    bisection on re-integration from the bracketing node, to ``tol`` in t or
    ``max_iter`` bisections, whichever comes first.
    """
    if not 0 <= component < traj.dim:
        raise ValueError(f"component {component} out of range for dim {traj.dim}")
    if h is None:
        h = abs(traj.times[-1] - traj.times[0]) / max(1, len(traj.times) - 1)
    values = traj.component(component)
    crossings: list[float] = []
    for i in range(len(values) - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0:
            crossings.append(traj.times[i])
            continue
        if b == 0.0 or (a < 0.0) == (b < 0.0):
            continue
        crossings.append(
            _refine_crossing(
                ivp, method, h, component,
                traj.times[i], traj.states[i], traj.times[i + 1],
                a, tol, max_iter,
            )
        )
    if values and values[-1] == 0.0:
        crossings.append(traj.times[-1])
    return crossings


def _refine_crossing(
    ivp: IVP,
    method: str,
    h: float,
    component: int,
    t_lo: float,
    y_lo: Vector,
    t_hi: float,
    f_lo: float,
    tol: float,
    max_iter: int,
) -> float:
    local = IVP(ivp.dim, ivp.rhs, t_lo, y_lo)
    lo, hi = t_lo, t_hi
    lo_negative = f_lo < 0.0
    for _ in range(max_iter):
        if abs(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        step = min(h, abs(mid - t_lo)) or h
        value = integrate_final(local, StepPlan(step, mid), method)[1][component]
        if value == 0.0:
            return mid
        if (value < 0.0) == lo_negative:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
