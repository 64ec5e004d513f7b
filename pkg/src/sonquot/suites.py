"""Seeded verification suites, one per module, as run by ``sonquot verify``.

Each suite returns a :class:`SuiteReport` mapping invariant names to
``(max residual, tolerance)``; a suite passes iff every residual is at most
its tolerance. Case counts depend on ``level`` (``"quick"`` or ``"full"``).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import chart, curvature, geodesics, lie, metric, sampling, warped
from .errors import DomainError, GeometryError
from .points import ChartPoint

LEVELS = ("quick", "full")
SUITE_NAMES = ("lie", "chart", "metric", "curvature", "bound", "geodesics", "warped")

# share of the 1e5 bound samples per rank: (points, planes per point)
BOUND_PLAN = {2: (8000, 1), 3: (2000, 20), 4: (800, 65)}
BOUND_CHUNK = {2: 1000, 3: 250, 4: 100}
# numeric curvature may overshoot the exact bound 5 by its discretisation error
BOUND_NUMERIC_SLACK = 1e-6
# sampling box of the bound suite; beyond it the chart is too anisotropic for the
# finite-difference oracle to resolve curvature to 1e-4
BOUND_X_MAX = 2.0
BOUND_Y_RANGE = (0.25, 4.0)


@dataclass
class SuiteReport:
    name: str
    n: int
    cases: int = 0
    residuals: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def record(self, invariant: str, value: float, tol: float, cases: int = 1):
        """Fold ``value`` into the running maximum for ``invariant``; ``tol`` is fixed per invariant."""
        old = self.residuals.get(invariant)
        value = float(value)
        if old is not None:
            if old[1] != float(tol):
                raise ValueError(f"tolerance of {invariant!r} changed between cases")
            value = max(value, old[0])
        self.residuals[invariant] = (value, float(tol))
        self.cases += cases

    @property
    def passed(self) -> bool:
        return all(v <= t for v, t in self.residuals.values())

    def failures(self) -> list:
        return [k for k, (v, t) in self.residuals.items() if not v <= t]

    def rows(self) -> list:
        """One dict per invariant, in insertion order (no timing: output is deterministic)."""
        return [
            {"suite": self.name, "n": self.n, "invariant": k, "residual": v, "tol": t, "pass": v <= t}
            for k, (v, t) in self.residuals.items()
        ]


def _stream(name: str, n: int) -> int:
    return 1000 * SUITE_NAMES.index(name) + n


def _count(level, quick, full):
    if level not in LEVELS:
        raise DomainError(f"level must be one of {LEVELS}")
    return quick if level == "quick" else full


def _maxabs(a) -> float:
    return float(np.max(np.abs(a)))


# -- lie-core -------------------------------------------------------------------


def lie_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    rep = SuiteReport("lie", n)
    gen = sampling.rng(seed, _stream("lie", n))
    B = lie.iwasawa_basis(n)
    J = lie.signature_matrix(n)
    for i, Ni in enumerate(B.N):
        rep.record("N_i^3 = 0", _maxabs(Ni @ Ni @ Ni), 0.0)
        rep.record("A1 in so(n,1)", lie.algebra_residual(B.A), 0.0)
        bra = lie.bracket(B.A, Ni)
        rep.record("[A1, N_i] = N_i", _maxabs(bra - Ni), 0.0)
        for Nj in B.N[i:]:
            rep.record("[N_i, N_j] = 0", _maxabs(lie.bracket(Ni, Nj)), 0.0)
    words = _count(level, 200, 1000)
    pairs = lie.algebra_pairs(n)
    for _ in range(_count(level, 50, 200)):
        c = gen.normal(size=len(pairs))
        X = lie.from_coefficients(c, n)
        g = lie.expm(X)
        rep.record("exp lands in the group", _maxabs(g @ J @ g.T - J), lie.GROUP_TOL)
        for Y in (c[0] * B.A, sum(cf * M for cf, M in zip(c, B.N)), sum(cf * M for cf, M in zip(c, B.K))):
            E = lie.expm(Y)
            rep.record("exp closed form = scaling-and-squaring", _maxabs(lie.expm_closed(Y) - E) / max(1.0, _maxabs(E)), 1e-12)
        s, t = gen.normal(size=2)
        ex = lie.expm_closed
        rep.record(
            "exp(sA1) exp(tA1) = exp((s+t)A1)",
            _maxabs(ex(s * B.A) @ ex(t * B.A) - ex((s + t) * B.A)) / max(1.0, np.exp(abs(s) + abs(t))),
            lie.ALGEBRA_TOL,
        )
    e_last = np.zeros(n + 1)
    e_last[n] = 1.0
    for _ in range(words):
        g = sampling.random_word(n, gen, length=6, scale=0.5)
        p, k = lie.nak_decompose(g)
        rep.record("NAK reconstruction", _maxabs(chart.phi(p) @ k - g), lie.RECONSTRUCTION_TOL)
        rep.record("k fixes e_(n+1)", _maxabs(k @ e_last - e_last), 1e-12)
        k2, p2 = lie.kna_decompose(g)
        rep.record("KNA reconstruction", _maxabs(k2 @ chart.phi(p2) - g), lie.RECONSTRUCTION_TOL)
        p3, k3 = lie.nak_decompose(chart.phi(p) @ k)
        rep.record(
            "NAK uniqueness",
            max(_maxabs(p3.coords - p.coords) / max(1.0, _maxabs(p.coords)), _maxabs(k3 - k)),
            1e-9,
        )
    return rep


# -- chart-actions ---------------------------------------------------------------


def chart_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    rep = SuiteReport("chart", n)
    gen = sampling.rng(seed, _stream("chart", n))
    samples = _count(level, 200, 1000)
    for _ in range(samples):
        p = sampling.random_point(n, gen)
        k1 = sampling.random_compact(n, gen)
        k2 = sampling.random_compact(n, gen)
        rep.record("phi_inverse(phi(p)) = p", _maxabs(chart.phi_inverse(chart.phi(p)).coords - p.coords) / max(1, p.y, 1 / p.y) ** 2, 1e-12)
        rep.record("tau is an involution", _maxabs(chart.tau(chart.tau(p)).coords - p.coords) / max(1, _maxabs(p.coords)) ** 2, 1e-15)
        rep.record(
            "phi(chart_inverse p) = phi(p)^-1",
            _maxabs(chart.phi(chart.chart_inverse(p)) @ chart.phi(p) - np.eye(n + 1)) / max(1, _maxabs(chart.phi(p))) ** 2,
            1e-12,
        )
        rp = chart.r_action(k1, p)
        rep.record(
            "tau(r(k)p) = l(k^-1) tau(p)",
            _maxabs(chart.tau(rp).coords - chart.l_action(k1.T, chart.tau(p)).coords) / max(1.0, _maxabs(rp.coords)),
            1e-10,
        )
        lhs = chart.r_action(k1 @ k2, p)
        rhs = chart.r_action(k2, rp)
        rep.record("r(k1 k2) = r(k2) r(k1)", _maxabs(lhs.coords - rhs.coords) / max(1.0, _maxabs(lhs.coords)), 1e-9)
        c, r = chart.orbit_circle(p)
        rep.record("r(K)-orbit stays on its circle", chart.orbit_residual(rp, c, r) / max(1.0, c * c), 1e-10)
    if n == 2:
        for _ in range(samples):
            z = gen.uniform(0, 2 * np.pi)
            p = sampling.random_point(2, gen)
            x, y = float(p.x[0]), p.y
            k = chart.zhat(z)
            got = chart.r_action(k, p).coords
            rep.record("r(zhat) = closed 2D formula", _maxabs(got - chart.r_moebius_2d(z, x, y)) / max(1.0, _maxabs(got)), 1e-10)
            got = chart.l_action(k, p).coords
            rep.record("l(zhat) = closed 2D formula", _maxabs(got - chart.l_moebius_2d(z, x, y)) / max(1.0, _maxabs(got)), 1e-10)
            m = float(np.exp(gen.uniform(-1.5, 1.5)))
            c, r = chart.orbit_circle(ChartPoint([0.0], m))
            orbit_pt = chart.r_action(k, ChartPoint([0.0], m))
            rep.record("tau maps the (0,m) orbit circle to itself", chart.orbit_residual(chart.tau(orbit_pt), c, r) / max(1.0, c * c), 1e-10)
    # stabilizer of axis points
    wrong = 0
    stab_cases = _count(level, 20, 100)
    for _ in range(stab_cases):
        y = float(np.exp(gen.uniform(-1.5, 1.5)))
        p = ChartPoint(np.zeros(n - 1), y if abs(y - 1) > 1e-3 else 2.0)
        inside = chart.axis_stabilizer_element(sampling.random_rotation(n - 1, gen))
        outside = sampling.random_compact(n, gen)
        wrong += int(not chart.stabilizer_check(p, inside))
        wrong += int(chart.stabilizer_check(p, outside))
    rep.record("stabilizer = SO(n-1) x SO(1) (misclassified)", wrong, 0, stab_cases)
    return rep


# -- quotient metric -------------------------------------------------------------


def _differential(fn, q, h):
    """Five-point Jacobian of a map of chart coordinates."""
    cols = []
    for i in range(q.size):
        e = np.zeros_like(q)
        e[i] = h
        cols.append((8 * (fn(q + e) - fn(q - e)) - (fn(q + 2 * e) - fn(q - 2 * e))) / (12 * h))
    return np.column_stack(cols)


def isometry_residual(k, p: ChartPoint) -> float:
    """``max |(dr W)^T G(r(k)p) (dr W) - I|`` for a ``G(p)``-orthonormal frame ``W``."""
    sample = metric.metric_matrix(p)
    J = _differential(lambda q: chart.r_action(k, ChartPoint.from_coords(q)).coords, p.coords, 1e-3 * p.y)
    image = chart.r_action(k, p)
    JW = J @ sample.frame
    return _maxabs(JW.T @ metric.quotient_metric_coords(image.coords) @ JW - np.eye(p.n))


def metric_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    rep = SuiteReport("metric", n)
    gen = sampling.rng(seed, _stream("metric", n))
    q = sampling.random_coords(n, gen, _count(level, 100, 500))
    G = metric.quotient_metric_coords(q)
    W = metric.frame_coords(q)
    WtGW = np.swapaxes(W, -1, -2) @ G @ W
    rep.record("frame orthonormality", _maxabs(WtGW - np.eye(n)), 1e-9, len(q))
    rep.record("G positive definite (-min eigenvalue)", -float(np.min(np.linalg.eigvalsh(G))), 0.0, len(q))
    for y in np.exp(np.linspace(-1.5, 1.5, 13)):
        ax = metric.axis_frame(y, n)
        rep.record("axis frame matches the horizontal frame", _maxabs(metric.quotient_metric_coords(ax.base.coords) - ax.G) * y * y, 1e-9)
    # NA subgroup metric versus hyperbolic metric under x -> sqrt(2) x
    Gna = metric.na_subgroup_metric_coords(q)
    S = np.diag([np.sqrt(2.0)] * (n - 1) + [1.0])
    q2 = q * np.diag(S)
    Gh = metric.hyperbolic_metric_coords(q2)
    rep.record("NA metric = hyperbolic pullback by x -> sqrt(2) x", _maxabs((S @ Gh @ S - Gna) * q[:, -1, None, None] ** 2), 1e-9)
    if n == 2:
        xs = np.linspace(-2, 2, 21)
        ys = np.linspace(0.25, 4, 21)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        grid = np.column_stack([X.ravel(), Y.ravel()])
        Gq = metric.quotient_metric_coords(grid)
        worst = 0.0
        for g_num, (x, y) in zip(Gq, grid):
            g_closed = metric.closed_frame_2d(ChartPoint([x], y)).G
            worst = max(worst, _maxabs(g_num - g_closed) / max(1.0, _maxabs(g_closed)))
        rep.record("closed 2D frame = horizontal frame (21x21)", worst, 1e-9, len(grid))
    for _ in range(_count(level, 40, 200)):
        p = sampling.random_point(n, gen, x_max=2.0, y_range=(0.3, 3.0))
        rep.record("r(K) is an isometry", isometry_residual(sampling.random_compact(n, gen), p), 1e-7)
    return rep


# -- curvature ------------------------------------------------------------------


def axis_plane(y: float, theta: float, n: int, gen=None) -> tuple:
    """Orthonormal pair at ``(0, y)`` spanning a plane at angle ``theta`` to the axis.

    ``cos(theta) w_n + sin(theta) w`` and ``w~`` with ``w, w~`` orthonormal
    orbit-tangent directions (random ones if ``gen`` is given).
    """
    c = np.sqrt(np.cosh(2 * np.log(y)))
    if n == 2:
        # the whole tangent plane; theta is immaterial
        return np.array([0.0, y]), np.array([c, 0.0])
    if gen is None:
        a, b = np.eye(n - 1)[0], np.eye(n - 1)[1]
    else:
        Q = sampling.random_rotation(n - 1, gen)
        a, b = Q[:, 0], Q[:, 1]
    wn = np.append(np.zeros(n - 1), y)
    w = np.append(c * a, 0.0)
    wt = np.append(c * b, 0.0)
    return np.cos(theta) * wn + np.sin(theta) * w, wt


def random_planes(q, G, gen, planes: int) -> tuple:
    """``planes`` random ``G``-orthonormal pairs at each row of ``q``; shapes ``(B, planes, n)``."""
    B, n = q.shape
    L = np.linalg.cholesky(np.linalg.inv(G))  # columns of L are G-orthonormal
    raw = gen.normal(size=(B, planes, 2, n))
    a = np.einsum("bij,bpj->bpi", L, raw[:, :, 0])
    b = np.einsum("bij,bpj->bpi", L, raw[:, :, 1])

    def ip(x, y):
        return np.einsum("bpi,bij,bpj->bp", x, G, y)

    a = a / np.sqrt(ip(a, a))[..., None]
    b = b - ip(a, b)[..., None] * a
    b = b / np.sqrt(ip(b, b))[..., None]
    return a, b


def curvature_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    rep = SuiteReport("curvature", n)
    gen = sampling.rng(seed, _stream("curvature", n))
    origin = ChartPoint.origin(n)
    u, v = axis_plane(1.0, 0.0, n)
    rep.record("kappa(0,1) = 5 (numeric)", abs(curvature.sectional_numeric(origin, u, v) - 5.0), 1e-4)
    rep.record("kappa2_closed(0,1) = 5", abs(float(curvature.kappa2_closed(0.0, 1.0)) - 5.0), 0.0)
    if n == 2:
        xs = np.linspace(-2, 2, 21)
        ys = np.linspace(0.25, 4, 21)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        grid = np.column_stack([X.ravel(), Y.ravel()])
        G = metric.quotient_metric_coords(grid)
        R = curvature.riemann_coords(grid)
        num = curvature.sectional_from_riemann(G, R, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        rep.record("kappa2_closed = numeric (21x21 grid)", _maxabs(num - curvature.kappa2_closed(grid[:, 0], grid[:, 1])), 1e-5, len(grid))
    else:
        cases = _count(level, 10, 50)
        ys = gen.uniform(1.0, 5.0, size=cases)
        ys[ys == 1.0] = 5.0
        thetas = gen.uniform(0.0, np.pi / 2, size=cases)
        err2 = err4 = 0.0
        for y, th in zip(ys, thetas):
            u, v = axis_plane(y, th, n, gen)
            num = curvature.sectional_numeric(ChartPoint(np.zeros(n - 1), y), u, v)
            err2 = max(err2, abs(num - float(curvature.kappa_n_closed(y, th))))
        rep.record("kappa_n_closed = numeric", err2, 1e-5, cases)
        u, v = axis_plane(2.0, np.pi / 2, n)
        num = curvature.sectional_numeric(ChartPoint(np.zeros(n - 1), 2.0), u, v)
        err4 = abs(num - float(curvature.tangential_curvature(2.0, exponent=4)))
        rep.record("exponent 2 in g matches numeric at y=2", abs(num - float(curvature.tangential_curvature(2.0))), 1e-5)
        # exponent 4 must miss the oracle by at least 0.1 beyond the tolerance
        rep.record("exponent 4 in g rejected at y=2 (shortfall)", max(0.0, 1e-5 + 0.1 - err4), 0.0)
        th = np.linspace(0, np.pi / 2, 7)
        for y in (1.0, 1.5, 2.0, 4.0):
            k = curvature.kappa_n_closed(y, th)
            f, g = curvature.radial_curvature(y), curvature.tangential_curvature(y)
            rep.record("min(f,g) <= kappa <= max(f,g)", max(0.0, float(np.max(np.maximum(min(f, g) - k, k - max(f, g))))), 1e-15)
    # hyperbolic control
    q = sampling.random_coords(n, gen, _count(level, 30, 100))
    G = metric.hyperbolic_metric_coords(q)
    R = curvature.riemann_coords(q, metric=metric.hyperbolic_metric_coords)
    a, b = random_planes(q, G, gen, 1)
    k = curvature.sectional_from_riemann(G, R, a[:, 0], b[:, 0])
    rep.record("hyperbolic metric has kappa = -1", _maxabs(k + 1.0), 1e-6, len(q))
    # constancy along r(K)-orbits of axis points
    for y in (0.5, 2.0, 3.0):
        p0 = ChartPoint(np.zeros(n - 1), y)
        target = float(curvature.radial_curvature(y))
        pts = np.array([chart.r_action(sampling.random_compact(n, gen), p0).coords for _ in range(_count(level, 4, 12))])
        G = metric.quotient_metric_coords(pts)
        R = curvature.riemann_coords(pts)
        nu = curvature.radial_unit_vector(pts, G)
        _, b = random_planes(pts, G, gen, 1)
        b = b[:, 0] - np.einsum("bi,bij,bj->b", b[:, 0], G, nu)[:, None] * nu
        k = curvature.sectional_from_riemann(G, R, nu, b)
        rep.record("kappa of radial planes constant on r(K)-orbits", _maxabs(k - target), 1e-6, len(pts))
    return rep


def bound_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    """``0 < kappa <= 5`` at random points and planes, numerically and in closed form."""
    rep = SuiteReport("bound", n)
    gen = sampling.rng(seed, _stream("bound", n))
    points, planes = BOUND_PLAN.get(n, (max(10, 64 // n), 4 * n))
    if level == "quick":
        points = max(10, points // 20)
    chunk = BOUND_CHUNK.get(n, 20)
    nonpos = above = 0
    agree, total = 0.0, 0
    for start in range(0, points, chunk):
        q = sampling.random_coords(n, gen, min(chunk, points - start), BOUND_X_MAX, BOUND_Y_RANGE)
        G = metric.quotient_metric_coords(q)
        R = curvature.riemann_coords(q)
        a, b = random_planes(q, G, gen, planes)
        Gp = np.repeat(G[:, None], planes, axis=1)
        Rp = np.repeat(R[:, None], planes, axis=1)
        k_num = curvature.sectional_from_riemann(Gp, Rp, a, b)
        qp = np.repeat(q[:, None], planes, axis=1)
        k_closed = curvature.kappa_closed_general(qp, Gp, a, b)
        nonpos += int(np.sum(k_num <= 0.0)) + int(np.sum(k_closed <= 0.0))
        above += int(np.sum(k_num > 5.0 + BOUND_NUMERIC_SLACK)) + int(np.sum(k_closed > 5.0))
        agree = max(agree, _maxabs(k_num - k_closed))
        total += k_num.size
    rep.record("samples with kappa <= 0", nonpos, 0, total)
    rep.record("samples with kappa > 5", above, 0)
    rep.record("closed form = numeric", agree, 1e-4)
    return rep


# -- geodesics ------------------------------------------------------------------


def _unit_x_start(n):
    q = ChartPoint.origin(n)
    v = np.zeros(n)
    v[0] = 1.0
    return geodesics.GeodesicState(q, v)


def geodesics_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    rep = SuiteReport("geodesics", n)
    gen = sampling.rng(seed, _stream("geodesics", n))
    T = np.log(2.0)
    s0 = geodesics.GeodesicState(ChartPoint.origin(n), np.append(np.zeros(n - 1), 1.0))
    tr = geodesics.integrate(s0, T)
    target = np.append(np.zeros(n - 1), 2.0)
    rep.record("axis ray endpoint at T = ln 2", _maxabs(tr.q[-1] - target), 1e-8)
    rep.record("unit speed preserved", _maxabs(tr.speed - 1.0), 1e-6)
    for metric_fn, label in ((metric.quotient_metric_coords, "K\\G"), (metric.hyperbolic_metric_coords, "G/K")):
        for t in np.linspace(-1.0, 1.0, 5):
            y = np.exp(t)
            st = np.append(np.append(np.zeros(n - 1), y), np.append(np.zeros(n - 1), y))
            acc = geodesics._rhs_vector(st, metric_fn)[n:]
            rep.record(f"axis ray solves the geodesic equation ({label})", _maxabs(acc - st[:n]) / y, 1e-8)
    # hyperbolic oracle: classical half-plane geodesics
    for _ in range(_count(level, 2, 5)):
        p = sampling.random_point(n, gen, x_max=1.0, y_range=(0.5, 2.0))
        v = np.zeros(n)
        v[-2:] = gen.normal(size=2)
        v *= p.y / np.linalg.norm(v)
        h = geodesics.integrate(geodesics.GeodesicState(p, v), 1.0, metric=metric.hyperbolic_metric_coords)
        rep.record("hyperbolic geodesics are classical", geodesics.hyperbolic_geodesic_residual(h), 1e-6)
        rep.record("unit speed preserved", _maxabs(h.speed - 1.0), 1e-6)
    # distance from i versus integrated length
    drift_worst = 0.0
    for _ in range(_count(level, 5, 20)):
        p = sampling.random_point(n, gen, x_max=1.5, y_range=(0.4, 2.5))
        d = geodesics.distance_from_i(p)
        u = geodesics.direction_from_i(p)
        # G = I at i, so the unit direction is already a unit chart velocity
        tr = geodesics.integrate(geodesics.GeodesicState(ChartPoint.origin(n), u), d)
        rep.record("geodesic from i reaches p at time dist(i, p)", _maxabs(tr.q[-1] - p.coords), 1e-6)
        rep.record("dist(i, p) = integrated length", abs(tr.length() - d), 1e-6)
        drift_worst = max(drift_worst, tr.speed_drift)
    rep.record("unit speed preserved", drift_worst, 1e-6)
    # r(K) maps geodesics to geodesics
    for _ in range(_count(level, 1, 3)):
        k = sampling.random_compact(n, gen)
        p = sampling.random_point(n, gen, x_max=1.0, y_range=(0.5, 2.0))
        G = metric.quotient_metric_coords(p.coords)
        v = gen.normal(size=n)
        v /= np.sqrt(v @ G @ v)
        tr = geodesics.integrate(geodesics.GeodesicState(p, v), 0.8, samples=9)
        J = _differential(lambda q: chart.r_action(k, ChartPoint.from_coords(q)).coords, p.coords, 1e-3 * p.y)
        image = geodesics.integrate(geodesics.GeodesicState(chart.r_action(k, p), J @ v), 0.8, samples=9)
        mapped = np.array([chart.r_action(k, ChartPoint.from_coords(q)).coords for q in tr.q])
        rep.record("r(k) maps geodesics to geodesics", _maxabs(mapped - image.q), 1e-6)
    if n == 2:
        _geodesics_2d(rep, gen, level)
    return rep


def _geodesics_2d(rep, gen, level):
    tr = geodesics.integrate(_unit_x_start(2), 1.0)
    alpha, res = geodesics.fit_hyperbola(tr.q)
    rep.record("x-direction geodesic lies on a hyperbola", res, 1e-6)
    tq = np.column_stack([-tr.q[:, 0] / tr.q[:, 1], 1.0 / tr.q[:, 1]])
    rep.record("tau maps the hyperbola to a half circle", geodesics.half_circle_residual(tq, alpha), 1e-6)
    for _ in range(_count(level, 2, 6)):
        z = gen.uniform(0, 2 * np.pi)
        v = np.array([np.cos(z), np.sin(z)])
        tr = geodesics.integrate(geodesics.GeodesicState(ChartPoint.origin(2), v), 0.8)
        alpha, res = geodesics.fit_hyperbola(tr.q)
        rep.record("geodesics through i lie on hyperbolas", res, 1e-6)
    for _ in range(_count(level, 20, 100)):
        p = sampling.random_point(2, gen)
        v = gen.normal(size=2)
        s = geodesics.GeodesicState(p, v)
        a = geodesics.geodesic_rhs(s)
        b = geodesics.geodesic_rhs_2d_closed(s)
        rep.record("explicit 2D system = numeric connection", _maxabs(a - b) / max(1.0, _maxabs(a)), 1e-6)
    for _ in range(_count(level, 200, 1000)):
        k = chart.zhat(gen.uniform(0, 2 * np.pi))
        t = gen.uniform(-2, 2)
        rep.record("tau(r(k) gamma(t)) = l(k^-1) gamma(-t)", geodesics.tau_geodesic_check(k, t), 1e-9)


# -- warped model ---------------------------------------------------------------


def warped_suite(n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    rep = SuiteReport("warped", n)
    gen = sampling.rng(seed, _stream("warped", n))
    t = np.exp(np.linspace(np.log(1.0 + 1e-6), np.log(100.0), 400))
    rep.record("kappa_radial_warped = kappa2_closed(0,t)", _maxabs(warped.kappa_radial_warped(t) - curvature.kappa2_closed(0.0, t)), 1e-12, t.size)
    rep.record("kappa_tangent_warped = g(t)", _maxabs(warped.kappa_tangent_warped(t) - curvature.tangential_curvature(t)), 1e-10, t.size)
    tf = t[t >= 1.05]
    g, h = warped.warp_gradient_hessian(tf)
    g_fd, h_fd = warped.warp_derivatives_numeric(tf)
    rep.record("warp gradient = finite differences", _maxabs(g_fd - g), 1e-8, tf.size)
    # h ~ -1/ln(t)^2 blows up at t -> 1; compare relative to max(1, |h|)
    rep.record("warp hessian = finite differences", _maxabs((h_fd - h) / np.maximum(1.0, np.abs(h))), 1e-8, tf.size)
    rep.record("-(grad^2 + hessian) = kappa_radial_warped", _maxabs(-(g * g + h) - warped.kappa_radial_warped(tf)), 1e-10, tf.size)
    for _ in range(_count(level, 50, 300)):
        tt = float(1.0 + np.exp(gen.uniform(-3, 1.5)))
        u = sampling.random_unit(n, gen)
        w = warped.WarpedPoint(tt, u)
        p = warped.f_map(w)
        st, ct = np.sinh(np.log(tt)), np.cosh(np.log(tt))
        rep.record("f(t, u) = (sinh(ln t) u', sinh(ln t) u_n + cosh(ln t))", _maxabs(p.coords - np.append(st * u[:-1], st * u[-1] + ct)) / tt, 1e-10)
        a = warped.rotation_to(u)
        a2 = a @ np.block([[sampling.random_rotation(n - 1, gen), np.zeros((n - 1, 1))], [np.zeros((1, n - 1)), np.ones((1, 1))]])
        rep.record("f independent of the choice of a", _maxabs(warped.f_map_with(a2, tt).coords - p.coords) / tt, 1e-10)
        b = sampling.random_rotation(n, gen)
        lhs = warped.f_map(warped.WarpedPoint(tt, b @ u))
        rhs = chart.r_action(lie.compact_embed(b.T), p)
        rep.record("f(t, b u) = r(b^-1) f(t, u)", _maxabs(lhs.coords - rhs.coords) / tt, 1e-10)
        rep.record("f~ tau' = tau f", warped.tau_prime_square_residual(w), 1e-10)
        back = warped.tau_prime_inverse(warped.tau_prime(w))
        rep.record("tau' has period 2", (abs(back.t - tt) + _maxabs(back.u - u)) / tt, 1e-14)
    if n == 2:
        for tt in np.linspace(1.1, 5.0, _count(level, 5, 12)):
            for z in np.linspace(0, 2 * np.pi, _count(level, 6, 16), endpoint=False):
                got = warped.f_map(warped.WarpedPoint(tt, warped.fibre_point_2d(z))).coords
                rep.record("f closed 2D form", _maxabs(got - warped.f_closed_2d(tt, z)), 1e-10)
                rep.record("pullback of K\\G metric = warped metric", warped.pullback_isometry_residual(tt, z), 1e-7)
        for s_ in np.linspace(0.1, 0.9, 5):
            for z in np.linspace(0, 2 * np.pi, 6, endpoint=False):
                rep.record("pullback of G/K metric = hyperbolic warped metric", warped.hyperbolic_pullback_residual(s_, z), 1e-7)
    else:
        for _ in range(_count(level, 5, 20)):
            y = float(gen.uniform(1.05, 5.0))
            th = float(gen.uniform(0, np.pi / 2))
            kn, kt = warped.kappa_radial_warped(y), warped.kappa_tangent_warped(y)
            km = warped.kappa_mixed(np.cos(th), np.sin(th), 0.0, 1.0, kn, kt)
            rep.record("kappa_mixed = kappa_n_closed", abs(km - float(curvature.kappa_n_closed(y, th))), 1e-12)
            u, v = axis_plane(y, th, n, gen)
            num = curvature.sectional_numeric(ChartPoint(np.zeros(n - 1), y), u, v)
            rep.record("kappa_mixed = numeric", abs(km - num), 1e-5)
    return rep


SUITES = {
    "lie": lie_suite,
    "chart": chart_suite,
    "metric": metric_suite,
    "curvature": curvature_suite,
    "bound": bound_suite,
    "geodesics": geodesics_suite,
    "warped": warped_suite,
}


def run_suite(name: str, n: int, seed: int = 0, level: str = "quick") -> SuiteReport:
    if not 2 <= n <= lie.MAX_RANK:
        raise DomainError(f"rank must satisfy 2 <= n <= {lie.MAX_RANK}")
    start = time.perf_counter()
    try:
        rep = SUITES[name](n, seed, level)
    except GeometryError as exc:
        rep = SuiteReport(name, n)
        rep.record(f"raised {type(exc).__name__}", np.inf, 0.0)
    rep.wall_time = time.perf_counter() - start
    return rep


def run_all(ranks, seed: int = 0, level: str = "quick", names=SUITE_NAMES):
    for n in ranks:
        for name in names:
            yield run_suite(name, n, seed, level)
