"""Command-line interface.

Subcommands: solve (spec-file IVP integration with CSV/SVG output), deriv
(exact rational derivative), fn (ODE-defined function values), table (R-sine
table), pi (series summation), pendulum, ballistics, lox, ellipk, rectify.

Exit codes: 0 success, 1 runtime/domain error, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import applications, expr, functions, series, tables
from .nonarch import EPSILON, NoStandardPartError, deriv_at
from .solver import IVP, IntegrationError, StepPlan, integrate
from .svgplot import Series, line_plot


def _fmt(x: float) -> str:
    return f"{x:.17g}"


class SpecFileError(Exception):
    """A spec-file problem; carries the 1-based line number (0 = whole file)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(message)
        self.line = line


_SPEC_SCALARS = ("t0", "t_end", "h")


def load_spec_file(path: str) -> tuple[IVP, StepPlan, str, list[expr.Expr]]:
    """Parse a line-oriented "key = value" IVP description.

    Required keys: dim, rhs_1 .. rhs_dim, t0, y0, t_end, h, method.  Each
    must appear exactly once; rhs expressions may use t and y1 .. ydim.
    """
    entries: dict[str, tuple[str, int]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SpecFileError(f"expected 'key = value', got {line!r}", lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in entries:
                raise SpecFileError(f"duplicate key {key!r}", lineno)
            entries[key] = (value, lineno)

    def take(key: str) -> tuple[str, int]:
        if key not in entries:
            raise SpecFileError(f"missing required key {key!r}")
        return entries.pop(key)

    def take_float(key: str) -> tuple[float, int]:
        value, lineno = take(key)
        try:
            return float(value), lineno
        except ValueError:
            raise SpecFileError(f"{key}: not a number: {value!r}", lineno) from None

    value, lineno = take("dim")
    try:
        dim = int(value)
    except ValueError:
        raise SpecFileError(f"dim: not an integer: {value!r}", lineno) from None
    if dim < 1:
        raise SpecFileError("dim must be positive", lineno)

    rhs_exprs: list[expr.Expr] = []
    for i in range(1, dim + 1):
        source, lineno = take(f"rhs_{i}")
        try:
            tree = expr.parse(source)
        except expr.ExprSyntaxError as exc:
            raise SpecFileError(f"rhs_{i}: {exc}", lineno) from None
        allowed = {"t"} | {f"y{j}" for j in range(1, dim + 1)}
        unknown = expr.variables(tree) - allowed
        if unknown:
            raise SpecFileError(
                f"rhs_{i}: unknown variable(s) {sorted(unknown)}; allowed: t, y1..y{dim}",
                lineno,
            )
        rhs_exprs.append(tree)

    t0, _ = take_float("t0")
    t_end, _ = take_float("t_end")
    h, h_line = take_float("h")
    if not h > 0:
        raise SpecFileError("h must be positive", h_line)

    value, lineno = take("y0")
    try:
        y0 = tuple(float(part) for part in value.split(","))
    except ValueError:
        raise SpecFileError(f"y0: not a comma-separated list of numbers: {value!r}", lineno) from None
    if len(y0) != dim:
        raise SpecFileError(f"y0 has {len(y0)} components, expected dim = {dim}", lineno)

    method, lineno = take("method")
    if method not in ("euler", "rk4"):
        raise SpecFileError(f"method must be 'euler' or 'rk4', got {method!r}", lineno)

    if entries:
        key = sorted(entries)[0]
        raise SpecFileError(f"unknown key {key!r}", entries[key][1])

    names = [f"y{i}" for i in range(1, dim + 1)]

    def rhs(t, y):
        env = dict(zip(names, y))
        env["t"] = t
        return [expr.evaluate(tree, env) for tree in rhs_exprs]

    return IVP(dim, rhs, t0, y0), StepPlan(h, t_end), method, rhs_exprs


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_components(text: str | None, dim: int) -> list[int]:
    if not text:
        return list(range(dim))
    out = []
    for part in text.split(","):
        i = int(part)
        if not 1 <= i <= dim:
            raise ValueError(f"component {i} out of range 1..{dim}")
        out.append(i - 1)
    return out


# ---------------------------------------------------------------------------
# Subcommand handlers

def cmd_solve(args) -> int:
    ivp, plan, method, _ = load_spec_file(args.spec)
    traj = integrate(ivp, plan, method)
    _write_text(args.out, traj.to_csv())
    if args.svg:
        idxs = _parse_components(args.components, traj.dim)
        plot = line_plot(
            [Series(f"y{i + 1}", traj.times, traj.component(i)) for i in idxs],
            width=args.width, height=args.height,
        )
        _write_text(args.svg, plot)
    return 0


def cmd_deriv(args) -> int:
    tree = expr.parse(args.expr)
    names = expr.variables(tree)
    if len(names) != 1:
        raise ValueError(f"expression must contain exactly one variable, found {sorted(names)}")
    point = Fraction(args.at)
    f = expr.evaluate_exact(tree, {names.pop(): EPSILON})
    print(deriv_at(f, point))
    return 0


def cmd_fn(args) -> int:
    f = functions.by_name(args.name, k=args.k)
    print(_fmt(f(args.x, method=args.method, h=args.h)))
    if args.out:
        _write_text(args.out, f.trajectory(args.x, method=args.method, h=args.h).to_csv())
    return 0


def cmd_table(args) -> int:
    table = tables.generate_sine_table(args.radius, args.method, args.h)
    _write_text(args.out, table.to_csv())
    return 0


def cmd_pi(args) -> int:
    if args.discard is not None:
        policy = series.DiscardPolicy(args.mode, args.discard, args.max_terms)
        result = series.sum_until_discardable(series.LEIBNIZ, policy)
        cap = " (term cap reached)" if result.hit_cap else ""
        print(
            f"value={_fmt(result.value)} terms_used={result.terms_used} "
            f"discarded_bound={_fmt(result.discarded_bound)}{cap}"
        )
    else:
        print(_fmt(series.leibniz_pi(args.terms, args.corrected)))
    return 0


def cmd_pendulum(args) -> int:
    if args.sweep:
        base = applications.PendulumSpec(args.length, args.g, args.theta0)
        t_small = base.small_angle_period()
        lines = ["theta0,period,ratio_to_small_angle"]
        for i in range(1, args.sweep_points + 1):
            theta = args.theta0 * i / args.sweep_points
            spec = applications.PendulumSpec(args.length, args.g, theta)
            period = applications.pendulum_period_elliptic(spec)
            lines.append(f"{_fmt(theta)},{_fmt(period)},{_fmt(period / t_small)}")
        _write_text(args.out, "\n".join(lines) + "\n")
        return 0
    spec = applications.PendulumSpec(args.length, args.g, args.theta0)
    if args.method == "ode":
        period = applications.pendulum_period_ode(spec, h=args.h)
    else:
        period = applications.pendulum_period_elliptic(spec)
    print(_fmt(period))
    return 0


def cmd_ballistics(args) -> int:
    spec = applications.BallisticsSpec(
        args.mass, args.drag, args.v0, math.radians(args.alpha), args.g
    )
    print(_fmt(applications.ballistics_range(spec, h=args.h)))
    if args.out:
        _write_text(args.out, applications.ballistics_trajectory(spec, h=args.h).to_csv())
    return 0


def cmd_lox(args) -> int:
    p1 = applications.GeoPoint(math.radians(args.lat1), math.radians(args.lon1))
    p2 = applications.GeoPoint(math.radians(args.lat2), math.radians(args.lon2))
    bearing, distance = applications.loxodrome(p1, p2, args.radius, h=args.h)
    print(f"bearing_rad={_fmt(bearing)} distance_m={_fmt(distance)}")
    return 0


def cmd_ellipk(args) -> int:
    if args.phi is not None:
        print(_fmt(applications.elliptic_F(args.phi, args.k, h=args.h)))
    else:
        print(_fmt(applications.elliptic_K(args.k, h=args.h)))
    return 0


def cmd_rectify(args) -> int:
    if args.x_expr or args.y_expr:
        if not (args.x_expr and args.y_expr):
            raise ValueError("provide both --x-expr and --y-expr, or neither")
        x_tree = expr.parse(args.x_expr)
        y_tree = expr.parse(args.y_expr)

        def curve(t):
            env = {"t": t}
            return expr.evaluate(x_tree, env), expr.evaluate(y_tree, env)

        t_start, t_end = args.t0, args.t1
    else:
        curve = applications.unit_circle
        t_start = 0.0 if args.t0 is None else args.t0
        t_end = 2.0 * math.pi if args.t1 is None else args.t1
    if t_start is None or t_end is None:
        raise ValueError("explicit curves need --t0 and --t1")
    print(_fmt(applications.rectify(curve, t_start, t_end, args.segments)))
    return 0


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stepcalc",
        description="Limit-free calculus toolkit: ODE-defined functions, exact "
                    "infinitesimal derivatives, sine tables, series, and "
                    "navigation computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", help="integrate an IVP described by a spec file")
    p.add_argument("spec", help="path to a key = value spec file")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--svg", help="also write a static SVG line plot to this path")
    p.add_argument("--components", help="1-based components to plot, e.g. 1,3")
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("deriv", help="exact derivative of a rational expression")
    p.add_argument("expr", help="rational expression in one variable, e.g. 'x^2'")
    p.add_argument("--at", required=True, help="evaluation point, integer or p/q")
    p.set_defaults(handler=cmd_deriv)

    p = sub.add_parser("fn", help="evaluate an ODE-defined function")
    p.add_argument("name", help="exp, sin, cos, sn, cn, dn or invgd")
    p.add_argument("x", type=float)
    p.add_argument("--k", type=float, default=0.5, help="elliptic modulus for sn/cn/dn")
    p.add_argument("--method", choices=("euler", "rk4"), default=None)
    p.add_argument("--h", type=float, default=None, help="step size")
    p.add_argument("--out", help="write the CSV trajectory here")
    p.set_defaults(handler=cmd_fn)

    p = sub.add_parser("table", help="generate the 24-entry R-sine table as CSV")
    p.add_argument("--radius", type=float, default=tables.DEFAULT_RADIUS)
    p.add_argument("--method", choices=("euler", "rk4"), default="rk4")
    p.add_argument("--h", type=float, default=1e-5, help="step size, radians")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("pi", help="sum the alternating series for pi")
    p.add_argument("--terms", type=int, default=1000, help="number of terms")
    p.add_argument("--corrected", action="store_true",
                   help="average consecutive partial sums (end correction)")
    p.add_argument("--discard", type=float, default=None,
                   help="discard threshold; sum until the next term is below it")
    p.add_argument("--mode", choices=("absolute", "relative"), default="absolute")
    p.add_argument("--max-terms", type=int, default=10**8)
    p.set_defaults(handler=cmd_pi)

    p = sub.add_parser("pendulum", help="pendulum period versus amplitude")
    p.add_argument("--theta0", type=float, required=True, help="amplitude, radians")
    p.add_argument("--length", type=float, default=1.0, help="length, meters")
    p.add_argument("--g", type=float, default=applications.STANDARD_GRAVITY)
    p.add_argument("--method", choices=("ode", "elliptic"), default="elliptic")
    p.add_argument("--h", type=float, default=1e-4, help="step size for the ode method")
    p.add_argument("--sweep", action="store_true",
                   help="emit a theta0,period,ratio_to_small_angle CSV up to --theta0")
    p.add_argument("--sweep-points", type=int, default=20)
    p.add_argument("--out", help="write sweep CSV here instead of stdout")
    p.set_defaults(handler=cmd_pendulum)

    p = sub.add_parser("ballistics", help="range of a projectile with quadratic drag")
    p.add_argument("--mass", type=float, required=True, help="kg")
    p.add_argument("--drag", type=float, default=0.0, help="quadratic drag coefficient, kg/m")
    p.add_argument("--v0", type=float, required=True, help="launch speed, m/s")
    p.add_argument("--alpha", type=float, required=True, help="launch angle, degrees")
    p.add_argument("--g", type=float, default=applications.STANDARD_GRAVITY)
    p.add_argument("--h", type=float, default=1e-3, help="step size, seconds")
    p.add_argument("--out", help="write the CSV trajectory here")
    p.set_defaults(handler=cmd_ballistics)

    p = sub.add_parser("lox", help="rhumb-line bearing and distance on the sphere")
    p.add_argument("--lat1", type=float, required=True, help="degrees")
    p.add_argument("--lon1", type=float, required=True, help="degrees")
    p.add_argument("--lat2", type=float, required=True, help="degrees")
    p.add_argument("--lon2", type=float, required=True, help="degrees")
    p.add_argument("--radius", type=float, default=applications.EARTH_RADIUS)
    p.add_argument("--h", type=float, default=1e-4,
                   help="step size for the meridional-parts integration")
    p.set_defaults(handler=cmd_lox)

    p = sub.add_parser("ellipk", help="complete/incomplete elliptic integral, first kind")
    p.add_argument("--k", type=float, required=True, help="modulus in [0, 1)")
    p.add_argument("--phi", type=float, default=None,
                   help="amplitude in [0, pi/2]; omit for the complete integral")
    p.add_argument("--h", type=float, default=1e-5)
    p.set_defaults(handler=cmd_ellipk)

    p = sub.add_parser("rectify", help="polyline length of a parametric curve")
    p.add_argument("--segments", "-n", type=int, default=1024)
    p.add_argument("--x-expr", help="x(t) expression; default is the unit circle")
    p.add_argument("--y-expr", help="y(t) expression")
    p.add_argument("--t0", type=float, default=None)
    p.add_argument("--t1", type=float, default=None)
    p.set_defaults(handler=cmd_rectify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except SpecFileError as exc:
        where = f"{args.spec}:{exc.line}: " if exc.line else f"{args.spec}: "
        print(f"stepcalc: {where}{exc}", file=sys.stderr)
        return 2
    except expr.ExprSyntaxError as exc:
        print(f"stepcalc: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, ArithmeticError, NoStandardPartError,
            IntegrationError, expr.ExprError, OSError, RuntimeError) as exc:
        print(f"stepcalc: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
