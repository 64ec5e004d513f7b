import math

import numpy as np
import pytest

from sonquot import chart, geodesics, metric, sampling
from sonquot.errors import DomainError, IntegrationError
from sonquot.geodesics import GeodesicState
from sonquot.points import ChartPoint

from conftest import maxabs


def state(q, v):
    return GeodesicState(ChartPoint.from_coords(q), v)


class TestRhs:
    @pytest.mark.parametrize("y", [0.5, 1.0, 3.0])
    def test_axis_ray(self, y):
        for m in (metric.quotient_metric_coords, metric.hyperbolic_metric_coords):
            d = geodesics.geodesic_rhs(state([0.0, y], [0.0, y]), m)
            np.testing.assert_allclose(d, [0.0, y, 0.0, y], atol=1e-8 * y)

    @pytest.mark.parametrize("n", [3, 4])
    def test_axis_ray_higher_rank(self, n):
        q = np.append(np.zeros(n - 1), 2.0)
        d = geodesics.geodesic_rhs(state(q, q * np.eye(n)[-1]))
        np.testing.assert_allclose(d[n:], 2.0 * np.eye(n)[-1], atol=1e-8)

    def test_zero_velocity(self):
        d = geodesics.geodesic_rhs(state([0.4, 1.3], [0.0, 0.0]))
        assert maxabs(d) == 0.0
        assert maxabs(geodesics.geodesic_rhs_2d_closed(state([0.4, 1.3], [0.0, 0.0]))) == 0.0

    def test_closed_system_on_axis(self):
        t = 0.8
        d = geodesics.geodesic_rhs_2d_closed(state([0.0, math.exp(t)], [0.0, math.exp(t)]))
        np.testing.assert_allclose(d[2:], [0.0, math.exp(t)], atol=1e-14)

    def test_closed_system_matches_connection(self, gen):
        checks = [([0.0, 1.0], [1.0, 0.0])]
        for c in sampling.random_coords(2, gen, 30, x_max=2.0):
            checks.append((c, gen.normal(size=2)))
        for q, v in checks:
            a = geodesics.geodesic_rhs_2d_closed(state(q, v))
            b = geodesics.geodesic_rhs(state(q, v))
            assert maxabs(a - b) <= 1e-6 * max(1.0, maxabs(a))

    def test_closed_system_rank(self):
        with pytest.raises(DomainError):
            geodesics.geodesic_rhs_2d_closed(state([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]))

    def test_state_validation(self):
        with pytest.raises(DomainError):
            state([0.0, 1.0], [1.0, 0.0, 0.0])


class TestIntegrate:
    @pytest.mark.parametrize("m", [2.0, 0.25])
    def test_axis_endpoint(self, m):
        v = 1.0 if m > 1 else -1.0
        tr = geodesics.integrate(state([0.0, 1.0], [0.0, v]), abs(math.log(m)))
        np.testing.assert_allclose(tr.q[-1], [0.0, m], atol=1e-8)
        np.testing.assert_allclose(tr.q[:, 1], np.exp(v * tr.t), atol=1e-8)

    def test_zero_time(self):
        s0 = state([0.3, 0.7], [1.0, 2.0])
        tr = geodesics.integrate(s0, 0.0)
        assert tr.t.tolist() == [0.0]
        np.testing.assert_array_equal(tr.q[0], s0.position.coords)
        np.testing.assert_array_equal(tr.v[0], s0.velocity)

    @pytest.mark.parametrize("tol", [1e-8, 1e-10])
    def test_speed_drift(self, tol):
        T = 2.0
        tr = geodesics.integrate(state([0.0, 1.0], [0.6, 0.8]), T, tol)
        assert tr.speed_drift <= 10 * tol * (1 + T)

    def test_x_direction_hyperbola(self):
        tr = geodesics.integrate(state([0.0, 1.0], [1.0, 0.0]), 2.0)
        alpha, res = geodesics.fit_hyperbola(tr.q)
        assert res <= 1e-6
        tq = np.array([chart.tau(ChartPoint.from_coords(c)).coords for c in tr.q])
        assert geodesics.half_circle_residual(tq, alpha) <= 1e-6

    def test_oblique_hyperbola(self):
        tr = geodesics.integrate(state([0.0, 1.0], [math.cos(1.0), math.sin(1.0)]), 1.5)
        alpha, res = geodesics.fit_hyperbola(tr.q)
        assert res <= 1e-6 and alpha != 0.0

    def test_custom_times(self):
        t = np.array([0.0, 0.1, 0.5])
        tr = geodesics.integrate(state([0.0, 1.0], [0.0, 1.0]), 0.5, t_eval=t)
        np.testing.assert_allclose(tr.q[:, 1], np.exp(t), atol=1e-9)

    def test_tolerance_range(self):
        with pytest.raises(DomainError):
            geodesics.integrate(state([0.0, 1.0], [0.0, 1.0]), 1.0, tol=1e-3)
        with pytest.raises(DomainError):
            geodesics.integrate(state([0.0, 1.0], [0.0, 1.0]), -1.0)

    def test_boundary_failure_keeps_partial(self):
        with pytest.raises(IntegrationError) as info:
            geodesics.integrate(state([0.0, 1.0], [0.0, -1.0]), 30.0, samples=31)
        partial = info.value.partial
        assert partial is not None and partial.status != "ok"
        assert partial.t[-1] < 30.0 and np.all(partial.q[:, 1] > 0)
        np.testing.assert_allclose(partial.q[:, 1], np.exp(-partial.t), atol=1e-8)

    def test_hyperbolic_classical(self):
        tr = geodesics.integrate(state([0.5, 1.2], [0.3, -0.4]), 2.0, metric=metric.hyperbolic_metric_coords)
        assert geodesics.hyperbolic_geodesic_residual(tr) <= 1e-6
        # classical centre on the boundary: (x - c)^2 + y^2 constant
        c = 0.5 + 1.2 * (-0.4) / 0.3
        r2 = (tr.q[:, 0] - c) ** 2 + tr.q[:, 1] ** 2
        assert np.ptp(r2) <= 1e-6

    def test_r_action_maps_geodesics(self, gen):
        k = sampling.random_compact(2, gen)
        s0 = state([0.0, 1.0], [0.6, 0.8])
        tr = geodesics.integrate(s0, 1.0, samples=5)
        mapped = np.array([chart.r_action(k, ChartPoint.from_coords(c)).coords for c in tr.q])
        # pushforward of the initial velocity by central differences of the action
        h = 1e-5
        q0, v = s0.position.coords, s0.velocity
        ahead = chart.r_action(k, ChartPoint.from_coords(q0 + h * v)).coords
        behind = chart.r_action(k, ChartPoint.from_coords(q0 - h * v)).coords
        image = geodesics.integrate(state(mapped[0], (ahead - behind) / (2 * h)), 1.0, samples=5)
        assert maxabs(image.q - mapped) <= 1e-6


class TestDistance:
    def test_values(self):
        assert geodesics.distance_from_i(ChartPoint.origin(2)) == 0.0
        assert geodesics.distance_from_i(ChartPoint([0.0], 3.0)) == pytest.approx(math.log(3.0), abs=1e-15)
        assert geodesics.distance_from_i(ChartPoint([0.0], 0.2)) == pytest.approx(abs(math.log(0.2)), abs=1e-15)
        assert geodesics.distance_from_i(ChartPoint([1.0], 1.0)) == pytest.approx(math.log(1.5 + math.sqrt(1.25)), abs=1e-15)

    @pytest.mark.parametrize("n", [2, 3])
    def test_integrated_length(self, n, gen):
        for c in sampling.random_coords(n, gen, 5, x_max=1.5, y_range=(0.4, 2.5)):
            p = ChartPoint.from_coords(c)
            d = geodesics.distance_from_i(p)
            u = geodesics.direction_from_i(p)
            tr = geodesics.integrate(GeodesicState(ChartPoint.origin(n), u), d, samples=401)
            assert maxabs(tr.q[-1] - c) <= 1e-6
            assert abs(tr.length() - d) <= 1e-6

    def test_direction_at_i_undefined(self):
        with pytest.raises(DomainError):
            geodesics.direction_from_i(ChartPoint.origin(2))


class TestTauCorrespondence:
    def test_identity(self):
        assert geodesics.tau_geodesic_check(np.eye(3), 0.7) <= 1e-15

    def test_random(self, gen):
        worst = max(geodesics.tau_geodesic_check(sampling.random_compact(2, gen), gen.uniform(-2, 2)) for _ in range(1000))
        assert worst <= 1e-9

    def test_rank_restriction(self):
        with pytest.raises(DomainError):
            geodesics.tau_geodesic_check(np.eye(4), 0.5)
