"""Command-line interface: verification suites and plot-ready data tables.

Data goes to stdout (or ``--out``) as CSV with a one-line header or as JSON
lines; floats carry 17 significant digits. Logs and timings go to stderr,
so identical flags give byte-identical data.

Exit codes: 0 success, 1 suite failure, 2 usage error, 3 integration failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import chart, curvature, geodesics, lie, metric, suites
from .errors import DomainError, GeometryError, IntegrationError
from .points import ChartPoint

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3
DEFAULT_RANKS = (2, 3, 4)


class UsageError(Exception):
    pass


# -- output ---------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, (float, np.floating)) and not math.isfinite(v):
        return "null"
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return _fmt(v)


def _csv_value(v) -> str:
    s = _fmt(v)
    return '"' + s.replace('"', '""') + '"' if any(c in s for c in ',"\n') else s


class Writer:
    """Row sink for ``csv`` or ``jsonl``; rows are dicts with a fixed column order."""

    def __init__(self, stream, fmt: str, columns: list):
        self.stream = stream
        self.fmt = fmt
        self.columns = columns
        if fmt == "csv":
            stream.write(",".join(columns) + "\n")

    def write(self, row: dict):
        if self.fmt == "csv":
            self.stream.write(",".join(_csv_value(row[c]) for c in self.columns) + "\n")
        else:
            body = ", ".join(f'"{c}": {_json_value(row[c])}' for c in self.columns)
            self.stream.write("{" + body + "}\n")


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _log(msg: str):
    print(msg, file=sys.stderr)


# -- argument parsing -----------------------------------------------------------


def parse_range(text: str, name: str) -> np.ndarray:
    """``a:b:steps`` -> ``steps`` equispaced values from ``a`` to ``b`` inclusive; ``a`` alone is one value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) != 3:
            raise ValueError
        a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--{name} expects a:b:steps or a single number, got {text!r}") from None
    if steps < 1 or b < a or not (math.isfinite(a) and math.isfinite(b)):
        raise UsageError(f"--{name} range {text!r} is empty")
    if steps == 1:
        if a != b:
            raise UsageError(f"--{name}: one step needs a == b")
        return np.array([a])
    return np.linspace(a, b, steps)


def parse_vector(text: str, name: str, size: int) -> np.ndarray:
    try:
        v = np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated numbers, got {text!r}") from None
    if v.size != size or not np.all(np.isfinite(v)):
        raise UsageError(f"--{name} needs {size} finite components for n = {size}")
    return v


def _rank(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rank must be an integer, got {value!r}") from None
    if not 2 <= n <= lie.MAX_RANK:
        raise argparse.ArgumentTypeError(f"rank must satisfy 2 <= n <= {lie.MAX_RANK}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = argparse.ArgumentParser(prog="sonquot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    v.add_argument("--n", type=_rank, action="append", help="rank (repeatable); default 2, 3 and 4")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--level", choices=suites.LEVELS, default="quick")
    v.add_argument("--suite", choices=suites.SUITE_NAMES, action="append", help="restrict to these suites")

    c = sub.add_parser("curvature-table", parents=[common], help="closed-form versus numeric sectional curvature")
    c.add_argument("--n", type=_rank, default=2)
    c.add_argument("--x", default="-5:5:41", help="range for x_1 (other x_i are 0)")
    c.add_argument("--y", default="0.25:10:40")
    c.add_argument("--theta", default="0:1.5707963267948966:7", help="plane angle to the radial direction (n >= 3)")

    g = sub.add_parser("geodesic", parents=[common], help="integrate a geodesic and print its trace")
    g.add_argument("--n", type=_rank, default=2)
    g.add_argument("--start", help="x_1,...,x_(n-1),y (default: 0,...,0,1)")
    g.add_argument("--direction", help="chart components of the initial velocity, rescaled to unit speed (default: d/dy)")
    g.add_argument("--T", type=float, default=1.0)
    g.add_argument("--tol", type=float, default=1e-10)
    g.add_argument("--samples", type=int, default=101)
    g.add_argument("--metric", choices=("quotient", "hyperbolic"), default="quotient")

    o = sub.add_parser("orbit", parents=[common], help="sample a circle of an r(K)-orbit")
    o.add_argument("--n", type=_rank, default=2)
    o.add_argument("--point", help="x_1,...,x_(n-1),y (default: 0,...,0,2)")
    o.add_argument("--samples", type=int, default=360)
    return p


# -- commands -------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    ranks = args.n or list(DEFAULT_RANKS)
    names = args.suite or list(suites.SUITE_NAMES)
    w = Writer(out, args.format, ["suite", "n", "invariant", "residual", "tol", "pass"])
    ok = True
    start = time.perf_counter()
    for rep in suites.run_all(ranks, args.seed, args.level, names):
        for row in rep.rows():
            w.write(row)
        ok &= rep.passed
        status = "PASS" if rep.passed else "FAIL " + "; ".join(rep.failures())
        _log(f"{rep.name:10s} n={rep.n} cases={rep.cases:6d} {rep.wall_time:7.2f}s  {status}")
    _log(f"total {time.perf_counter() - start:.2f}s: {'all suites pass' if ok else 'FAILURES'}")
    return EXIT_OK if ok else EXIT_FAIL


def _orbit_planes(q, G, theta):
    """``G``-orthonormal pair at ``q``: angle ``theta`` to the radial normal, and an orbit-tangent vector."""
    n = q.size
    nu = curvature.radial_unit_vector(q, G)
    if not np.any(nu):  # at i every direction is radial
        nu = np.linalg.solve(G, np.eye(n)[-1])
        nu /= math.sqrt(nu @ G @ nu)
    basis = [nu]
    for e in np.eye(n):
        w = e - sum((e @ G @ b) * b for b in basis)
        size = math.sqrt(max(w @ G @ w, 0.0))
        if size > 1e-8:
            basis.append(w / size)
        if len(basis) == 3 or len(basis) == n:
            break
    if n == 2:
        return basis[0], basis[1]
    return math.cos(theta) * basis[0] + math.sin(theta) * basis[1], basis[2]


def cmd_curvature_table(args, out) -> int:
    n = args.n
    xs = parse_range(args.x, "x")
    ys = parse_range(args.y, "y")
    thetas = parse_range(args.theta, "theta") if n >= 3 else np.array([0.0])
    if np.any(ys <= 0):
        raise UsageError("--y values must be positive")
    cols = ["x", "y"] + (["theta"] if n >= 3 else []) + ["kappa_closed", "kappa_numeric", "abs_diff"]
    w = Writer(out, args.format, cols)
    pts = np.array([np.append(np.append(x, np.zeros(n - 2)), y) for x in xs for y in ys])
    G = metric.quotient_metric_coords(pts)
    R = np.concatenate([curvature.riemann_coords(pts[i : i + 200]) for i in range(0, len(pts), 200)])
    for q, Gq, Rq in zip(pts, G, R):
        for th in thetas:
            u, v = _orbit_planes(q, Gq, th)
            k_num = float(curvature.sectional_from_riemann(Gq, Rq, u, v))
            if n == 2:
                k_closed = float(curvature.kappa2_closed(q[0], q[1]))
            else:
                k_closed = float(curvature.kappa_closed_general(q, Gq, u, v))
            row = {"x": q[0], "y": q[-1], "theta": th, "kappa_closed": k_closed, "kappa_numeric": k_num}
            row["abs_diff"] = abs(k_closed - k_num)
            w.write(row)
    return EXIT_OK


def cmd_geodesic(args, out) -> int:
    n = args.n
    start = parse_vector(args.start, "start", n) if args.start else np.append(np.zeros(n - 1), 1.0)
    if start[-1] <= 0:
        raise UsageError("--start needs y > 0")
    direction = parse_vector(args.direction, "direction", n) if args.direction else np.eye(n)[-1]
    if args.T < 0 or args.samples < 1:
        raise UsageError("--T must be non-negative and --samples at least 1")
    if not 1e-12 <= args.tol <= 1e-6:
        raise UsageError("--tol must lie in [1e-12, 1e-6]")
    metric_fn = metric.quotient_metric_coords if args.metric == "quotient" else metric.hyperbolic_metric_coords
    G = metric_fn(start)
    size = math.sqrt(direction @ G @ direction)
    if size == 0.0:
        raise UsageError("--direction must be non-zero")
    s0 = geodesics.GeodesicState(ChartPoint.from_coords(start), direction / size)
    code = EXIT_OK
    try:
        tr = geodesics.integrate(s0, args.T, args.tol, metric_fn, samples=args.samples if args.T > 0 else 1)
    except IntegrationError as exc:
        _log(f"integration failed: {exc}")
        tr, code = exc.partial, EXIT_RUNTIME
    xcols = [f"x{i + 1}" for i in range(n - 1)]
    # geodesics through i other than the axis lie on x^2 + 2 alpha x y - y^2 + 1 = 0
    hyperbola = n == 2 and args.metric == "quotient" and np.allclose(start, [0.0, 1.0]) and direction[0] != 0.0
    hyperbola &= tr.t.size > 1
    cols = ["t"] + xcols + ["y", "speed"] + (["hyperbola_residual"] if hyperbola else [])
    if hyperbola:
        alpha, _ = geodesics.fit_hyperbola(tr.q)
        res = np.abs(tr.q[:, 0] ** 2 + 2 * alpha * tr.q[:, 0] * tr.q[:, 1] - tr.q[:, 1] ** 2 + 1.0)
        _log(f"fitted alpha = {alpha:.17g}")
    w = Writer(out, args.format, cols)
    for i, t in enumerate(tr.t):
        row = {"t": t, "y": tr.q[i, -1], "speed": tr.speed[i]}
        row.update({c: tr.q[i, j] for j, c in enumerate(xcols)})
        if hyperbola:
            row["hyperbola_residual"] = res[i]
        w.write(row)
    _log(f"final speed drift {tr.speed_drift:.3e}")
    return code


def cmd_orbit(args, out) -> int:
    n = args.n
    point = parse_vector(args.point, "point", n) if args.point else np.append(np.zeros(n - 1), 2.0)
    if point[-1] <= 0 or args.samples < 1:
        raise UsageError("--point needs y > 0 and --samples at least 1")
    p = ChartPoint.from_coords(point)
    center, radius = chart.orbit_circle(p)
    k7 = chart.zhat(np.pi / 7, n)
    names = [f"x{i + 1}" for i in range(n - 1)] + ["y"]
    cols = ["z"] + names + ["circle_residual"]
    for tag in ("tau", "R", "L"):
        cols += [f"{tag}_{c}" for c in names]
    cols += ["center_y", "radius"]
    w = Writer(out, args.format, cols)
    _log(f"orbit circle: centre (0, {center:.17g}), radius {radius:.17g}")
    for j in range(args.samples):
        z = 2 * np.pi * j / args.samples
        P = chart.r_action(chart.zhat(z, n), p)
        row = {"z": z, "circle_residual": chart.orbit_residual(P, center, radius), "center_y": center, "radius": radius}
        for tag, Q in (("", P), ("tau_", chart.tau(P)), ("R_", chart.r_action(k7, P)), ("L_", chart.l_action(k7, P))):
            row.update({tag + c: v for c, v in zip(names, Q.coords)})
        w.write(row)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "curvature-table": cmd_curvature_table,
    "geodesic": cmd_geodesic,
    "orbit": cmd_orbit,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        out, close = _open_out(args.out)
    except OSError as exc:
        _log(f"cannot open output: {exc}")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        _log(f"sonquot: error: {exc}")
        return EXIT_USAGE
    except GeometryError as exc:
        _log(f"sonquot: {type(exc).__name__}: {exc}")
        return EXIT_RUNTIME
    finally:
        out.flush()
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
