import math

import numpy as np
import pytest

from sonquot import suites
from sonquot.errors import DomainError
from sonquot.suites import SuiteReport


class TestSuiteReport:
    def test_running_max_and_pass(self):
        rep = SuiteReport("demo", 2)
        rep.record("a", 1e-12, 1e-10)
        rep.record("a", 5e-11, 1e-10)
        rep.record("a", 1e-13, 1e-10, cases=3)
        assert rep.residuals["a"] == (5e-11, 1e-10)
        assert rep.cases == 5 and rep.passed and rep.failures() == []

    def test_fails_iff_residual_exceeds_tolerance(self):
        rep = SuiteReport("demo", 2)
        rep.record("ok", 1e-10, 1e-10)
        assert rep.passed
        rep.record("bad", 2e-10, 1e-10)
        assert not rep.passed and rep.failures() == ["bad"]

    def test_nan_fails(self):
        rep = SuiteReport("demo", 2)
        rep.record("x", math.nan, 1.0)
        assert not rep.passed

    def test_tolerance_is_fixed(self):
        rep = SuiteReport("demo", 2)
        rep.record("a", 0.0, 1e-10)
        with pytest.raises(ValueError):
            rep.record("a", 0.0, 1e-9)

    def test_rows(self):
        rep = SuiteReport("demo", 3)
        rep.record("a", 0.5, 1.0)
        rep.record("b", 2.0, 1.0)
        assert rep.rows() == [
            {"suite": "demo", "n": 3, "invariant": "a", "residual": 0.5, "tol": 1.0, "pass": True},
            {"suite": "demo", "n": 3, "invariant": "b", "residual": 2.0, "tol": 1.0, "pass": False},
        ]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", suites.SUITE_NAMES)
def test_quick_suites_pass(name, n):
    rep = suites.run_suite(name, n)
    assert rep.passed, rep.failures()
    assert rep.cases > 0 and rep.wall_time > 0


def test_curvature_suite_has_headline_checks():
    rep = suites.run_suite("curvature", 2)
    assert "kappa(0,1) = 5 (numeric)" in rep.residuals
    rep3 = suites.run_suite("curvature", 3)
    assert "exponent 4 in g rejected at y=2 (shortfall)" in rep3.residuals
    assert "exponent 2 in g matches numeric at y=2" in rep3.residuals


def test_deterministic():
    a = suites.run_suite("chart", 3, seed=5)
    b = suites.run_suite("chart", 3, seed=5)
    assert a.rows() == b.rows()


def test_seed_changes_samples():
    a = suites.run_suite("chart", 2, seed=1)
    b = suites.run_suite("chart", 2, seed=2)
    assert a.rows() != b.rows()


def test_rank_and_level_validation():
    with pytest.raises(DomainError):
        suites.run_suite("lie", 1)
    with pytest.raises(DomainError):
        suites.run_suite("lie", 9)
    rep = suites.run_suite("lie", 2, level="medium")
    assert not rep.passed and np.isinf(rep.residuals["raised DomainError"][0])


def test_run_all_order():
    names = [(r.name, r.n) for r in suites.run_all([2, 3], names=("lie", "warped"))]
    assert names == [("lie", 2), ("warped", 2), ("lie", 3), ("warped", 3)]
