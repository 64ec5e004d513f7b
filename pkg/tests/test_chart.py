import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sonquot import chart, lie, sampling
from sonquot.errors import DomainError
from sonquot.points import ChartPoint

from conftest import maxabs

coord = st.floats(-3, 3)
height = st.floats(0.2, 5.0)


class TestChartPoint:
    @pytest.mark.parametrize("y", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_height(self, y):
        with pytest.raises(DomainError):
            ChartPoint([0.0], y)

    def test_rejects_empty_x(self):
        with pytest.raises(DomainError):
            ChartPoint([], 1.0)

    def test_immutable(self):
        p = ChartPoint([1.0, 2.0], 3.0)
        with pytest.raises(ValueError):
            p.x[0] = 5.0


class TestPhi:
    def test_origin_is_identity(self):
        np.testing.assert_array_equal(chart.phi(ChartPoint.origin(3)), np.eye(4))

    def test_axis_is_boost(self):
        np.testing.assert_allclose(chart.phi(ChartPoint([0.0, 0.0], 2.5)), lie.expm(math.log(2.5) * lie.iwasawa_basis(3).A), atol=1e-13)

    @given(coord, coord, height)
    @settings(max_examples=50, deadline=None)
    def test_conjugation(self, x1, x2, y):
        a = chart.phi(ChartPoint([0.0, 0.0], y))
        lhs = a @ chart.phi(ChartPoint([x1, x2], 1.0)) @ lie.group_inverse(a)
        rhs = chart.phi(ChartPoint([y * x1, y * x2], 1.0))
        assert maxabs(lhs - rhs) <= 1e-12 * max(1.0, maxabs(rhs))

    @given(coord, height)
    @settings(max_examples=50, deadline=None)
    def test_phi_inverse_round_trip(self, x, y):
        p = ChartPoint([x], y)
        assert chart.phi_inverse(chart.phi(p)).allclose(p, atol=1e-12 * max(1, y, 1 / y) ** 2)

    def test_injective(self, gen):
        q = sampling.random_coords(3, gen, 200)
        mats = np.array([chart.phi(ChartPoint.from_coords(c)) for c in q])
        gaps = [maxabs(mats[i] - mats[j]) for i in range(40) for j in range(i)]
        assert min(gaps) > 1e-8


class TestInverseAndTau:
    def test_examples(self):
        assert chart.chart_inverse(ChartPoint([0.0], 1.0)).allclose(ChartPoint([0.0], 1.0), atol=0)
        assert chart.chart_inverse(ChartPoint([2.0], 4.0)).allclose(ChartPoint([-0.5], 0.25), atol=0)
        assert chart.tau(ChartPoint([0.0], 3.0)).allclose(ChartPoint([0.0], 1 / 3), atol=1e-16)

    def test_inverse_is_group_inverse(self, gen):
        for c in sampling.random_coords(3, gen, 100):
            p = ChartPoint.from_coords(c)
            g = chart.phi(chart.chart_inverse(p)) @ chart.phi(p)
            assert maxabs(g - np.eye(4)) <= 1e-12 * max(1, p.y, 1 / p.y, maxabs(p.x)) ** 4

    def test_involution(self, gen):
        for c in sampling.random_coords(2, gen, 1000):
            p = ChartPoint.from_coords(c)
            assert chart.tau(chart.tau(p)).allclose(p, atol=1e-15 * max(1.0, maxabs(c)) ** 2)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_weak_equivariance(self, n):
        gen = sampling.rng(3, n)
        for _ in range(200):
            k = sampling.random_compact(n, gen)
            p = sampling.random_point(n, gen)
            lhs = chart.tau(chart.r_action(k, p))
            rhs = chart.l_action(k.T, chart.tau(p))
            assert maxabs(lhs.coords - rhs.coords) <= 1e-10 * max(1.0, maxabs(lhs.coords))


class TestActions:
    @pytest.mark.parametrize("action", [chart.r_action, chart.l_action])
    def test_identity_acts_trivially(self, action, gen):
        p = sampling.random_point(3, gen)
        assert action(np.eye(4), p).allclose(p)

    @pytest.mark.parametrize("action", [chart.r_action, chart.l_action])
    @pytest.mark.parametrize("z", [0.4, 2.0, -2.7])
    def test_origin_fixed(self, action, z):
        assert action(chart.zhat(z), ChartPoint.origin(2)).allclose(ChartPoint.origin(2), atol=1e-14)

    @pytest.mark.parametrize("y", [0.3, 2.0])
    @pytest.mark.parametrize("z", [0.5, 1.9, -3.0])
    def test_r_on_axis(self, y, z):
        s, c = math.sinh(math.log(y)), math.cosh(math.log(y))
        got = chart.r_action(chart.zhat(z), ChartPoint([0.0], y))
        np.testing.assert_allclose(got.coords, [-s * math.sin(z), s * math.cos(z) + c], atol=1e-12)

    @given(st.floats(-math.pi, math.pi), coord, height)
    @settings(max_examples=80, deadline=None)
    def test_moebius_forms(self, z, x, y):
        p = ChartPoint([x], y)
        r = chart.r_action(chart.zhat(z), p).coords
        l_ = chart.l_action(chart.zhat(z), p).coords
        assert maxabs(r - chart.r_moebius_2d(z, x, y)) <= 1e-10 * max(1.0, maxabs(r))
        assert maxabs(l_ - chart.l_moebius_2d(z, x, y)) <= 1e-10 * max(1.0, maxabs(l_))

    def test_l_moebius_explicit(self):
        # l(zhat) as a Moebius map of the half plane: w -> (cos(z/2) w - sin(z/2)) / (sin(z/2) w + cos(z/2))
        z, w = 0.8, complex(0.3, 1.7)
        c, s = math.cos(z / 2), math.sin(z / 2)
        m = (c * w - s) / (s * w + c)
        np.testing.assert_allclose(chart.l_moebius_2d(z, w.real, w.imag), [m.real, m.imag], atol=1e-14)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_right_action_composition(self, n, gen):
        for _ in range(50):
            k1, k2 = sampling.random_compact(n, gen), sampling.random_compact(n, gen)
            p = sampling.random_point(n, gen)
            lhs = chart.r_action(k1 @ k2, p)
            rhs = chart.r_action(k2, chart.r_action(k1, p))
            assert maxabs(lhs.coords - rhs.coords) <= 1e-9 * max(1.0, maxabs(lhs.coords))

    def test_rejects_non_compact(self):
        with pytest.raises(DomainError):
            chart.r_action(lie.boost(2.0, 2), ChartPoint.origin(2))


class TestOrbits:
    def test_origin_degenerate(self):
        assert chart.orbit_circle(ChartPoint.origin(2)) == (1.0, 0.0)

    @pytest.mark.parametrize("m", [0.4, 2.0, 5.0])
    def test_axis_circle(self, m):
        c, r = chart.orbit_circle(ChartPoint([0.0], m))
        assert c == pytest.approx(math.cosh(math.log(m)), abs=1e-15)
        assert r == pytest.approx(abs(math.sinh(math.log(m))), abs=1e-15)

    def test_point_1_1(self, gen):
        p = ChartPoint([1.0], 1.0)
        c, r = chart.orbit_circle(p)
        assert c == 1.5 and r == pytest.approx(math.sqrt(5) / 2, abs=1e-15)
        for _ in range(20):
            q = chart.r_action(sampling.random_compact(2, gen), p)
            assert chart.orbit_residual(q, c, r) <= 1e-10

    @pytest.mark.parametrize("n", [2, 4])
    def test_orbit_and_tau_stay_on_circle(self, n, gen):
        p = ChartPoint(np.zeros(n - 1), 3.0)
        c, r = chart.orbit_circle(p)
        for _ in range(50):
            q = chart.r_action(sampling.random_compact(n, gen), p)
            assert chart.orbit_residual(q, c, r) <= 1e-10 * c * c
            assert chart.orbit_residual(chart.tau(q), c, r) <= 1e-10 * c * c


class TestStabilizer:
    def test_examples(self):
        p = ChartPoint([0.0, 0.0], 2.0)
        assert chart.stabilizer_check(p, lie.expm(0.9 * lie.basis_E(1, 2, 3)))
        assert chart.stabilizer_check(p, np.eye(4))
        assert not chart.stabilizer_check(p, lie.expm(0.5 * lie.basis_E(2, 3, 3)))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_subgroup_versus_random(self, n, gen):
        p = ChartPoint(np.zeros(n - 1), 0.6)
        for _ in range(20):
            k = chart.axis_stabilizer_element(sampling.random_rotation(n - 1, gen))
            assert chart.stabilizer_check(p, k)
            assert not chart.stabilizer_check(p, sampling.random_compact(n, gen))

    def test_preconditions(self):
        with pytest.raises(DomainError):
            chart.stabilizer_check(ChartPoint([0.1], 2.0), np.eye(3))
        with pytest.raises(DomainError):
            chart.stabilizer_check(ChartPoint([0.0], 1.0), np.eye(3))
