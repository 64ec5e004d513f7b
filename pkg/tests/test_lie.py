import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sonquot import lie, sampling
from sonquot.errors import DecompositionError, DomainError
from sonquot.points import ChartPoint

from conftest import maxabs


def taylor_expm(X, terms=60):
    """Plain power series; an oracle independent of scipy and of the closed forms."""
    out = np.eye(X.shape[0])
    term = np.eye(X.shape[0])
    for k in range(1, terms):
        term = term @ X / k
        out = out + term
    return out


class TestBasis:
    def test_E12_n2(self):
        expected = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)
        np.testing.assert_array_equal(lie.basis_E(1, 2, 2), expected)

    def test_E13_n2_symmetric(self):
        expected = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=float)
        np.testing.assert_array_equal(lie.basis_E(1, 3, 2), expected)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_A1_is_last_boost(self, n):
        np.testing.assert_array_equal(lie.iwasawa_basis(n).A, lie.basis_E(n, n + 1, n))

    @pytest.mark.parametrize("args", [(0, 1, 2), (2, 2, 2), (1, 4, 2), (3, 2, 3)])
    def test_bad_indices(self, args):
        with pytest.raises(DomainError):
            lie.basis_E(*args)

    @pytest.mark.parametrize("n", [1, 9])
    def test_rank_range(self, n):
        with pytest.raises(DomainError):
            lie.iwasawa_basis(n)

    def test_iwasawa_n2(self):
        B = lie.iwasawa_basis(2)
        np.testing.assert_array_equal(B.N[0], lie.basis_E(1, 3, 2) + lie.basis_E(1, 2, 2))
        assert B.K_labels == ((1, 2),)

    def test_iwasawa_n3_nilpotents(self):
        N1, N2 = lie.iwasawa_basis(3).N
        assert maxabs(lie.bracket(N1, N2)) == 0.0
        anti = N1 @ N2 + N2 @ N1
        assert maxabs(np.linalg.matrix_power(anti, 4)) == 0.0

    @pytest.mark.parametrize("n", range(2, 7))
    def test_nilpotent_algebra_abelian(self, n):
        B = lie.iwasawa_basis(n)
        for Ni in B.N:
            assert maxabs(lie.bracket(B.A, Ni) - Ni) == 0.0
            for Nj in B.N:
                assert maxabs(lie.bracket(Ni, Nj)) == 0.0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_basis_in_algebra(self, n):
        J = lie.signature_matrix(n)
        for i, j in lie.algebra_pairs(n):
            E = lie.basis_E(i, j, n)
            assert maxabs(E.T @ J + J @ E) == 0.0


class TestInner:
    def test_values(self):
        B = lie.iwasawa_basis(2)
        E12 = lie.basis_E(1, 2, 2)
        assert lie.inner(E12, E12) == 1.0
        assert lie.inner(B.N[0], B.A) == 0.0
        assert lie.inner(B.N[0], B.N[0]) == 2.0

    @pytest.mark.parametrize("n", [2, 4])
    def test_orthonormal_basis(self, n):
        pairs = lie.algebra_pairs(n)
        gram = np.array([[lie.inner(lie.basis_E(*a, n), lie.basis_E(*b, n)) for b in pairs] for a in pairs])
        np.testing.assert_array_equal(gram, np.eye(len(pairs)))

    def test_coefficients_round_trip(self, gen):
        c = gen.normal(size=6)
        np.testing.assert_allclose(lie.coefficients(lie.from_coefficients(c, 3)), c, atol=1e-15)

    def test_rejects_non_algebra(self):
        with pytest.raises(DomainError):
            lie.inner(np.eye(3), np.eye(3))


class TestExp:
    def test_zero(self):
        np.testing.assert_array_equal(lie.expm(np.zeros((3, 3))), np.eye(3))

    @pytest.mark.parametrize("z", [0.3, -1.2, 2.9])
    def test_rotation(self, z):
        R = lie.expm(z * -lie.basis_E(1, 2, 2))
        expected = np.array([[math.cos(z), math.sin(z), 0], [-math.sin(z), math.cos(z), 0], [0, 0, 1]])
        np.testing.assert_allclose(R, expected, atol=1e-15)

    @pytest.mark.parametrize("y", [0.3, 2.0, 7.5])
    def test_boost_block(self, y):
        n = 3
        X = math.log(y) * lie.iwasawa_basis(n).A
        g = lie.expm(X)
        ch, sh = (y + 1 / y) / 2, (y - 1 / y) / 2
        expected = np.eye(n + 1)
        expected[n - 1 :, n - 1 :] = [[ch, sh], [sh, ch]]
        np.testing.assert_allclose(g, expected, atol=1e-13)
        np.testing.assert_allclose(taylor_expm(X), expected, atol=1e-13)
        np.testing.assert_allclose(lie.boost(y, n), expected, atol=1e-14)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_closed_form_matches_generic(self, n, gen):
        B = lie.iwasawa_basis(n)
        pairs = lie.algebra_pairs(n)
        for _ in range(40):
            i, j = pairs[gen.integers(len(pairs))]
            family = [
                gen.normal(scale=2.0) * lie.basis_E(i, j, n),
                sum(c * Ni for c, Ni in zip(gen.normal(size=n - 1), B.N)),
                gen.normal(scale=2.0) * B.A,
                sum(c * K for c, K in zip(gen.normal(size=len(B.K)), B.K)),
            ]
            for X in family:
                E = lie.expm(X)
                assert maxabs(lie.expm_closed(X) - E) / max(1.0, maxabs(E)) <= 1e-12

    def test_closed_form_rejects_general_element(self):
        B = lie.iwasawa_basis(3)
        with pytest.raises(DomainError):
            lie.expm_closed(B.N[0] + B.A + B.K[0])

    def test_closed_form_nilpotent(self):
        B = lie.iwasawa_basis(3)
        X = 0.7 * B.N[0] - 1.3 * B.N[1]
        np.testing.assert_allclose(lie.expm_closed(X), taylor_expm(X), atol=1e-14)
        np.testing.assert_allclose(lie.expm_closed(X), np.eye(4) + X + X @ X / 2, atol=1e-15)

    @given(st.floats(-3, 3), st.floats(-3, 3))
    @settings(max_examples=60, deadline=None)
    def test_one_parameter_subgroup(self, s, t):
        A = lie.iwasawa_basis(2).A
        lhs = lie.expm_closed(s * A) @ lie.expm_closed(t * A)
        rhs = lie.expm_closed((s + t) * A)
        assert maxabs(lhs - rhs) <= 1e-12 * max(1.0, maxabs(rhs))

    @pytest.mark.parametrize("n", [2, 4])
    def test_lands_in_group(self, n, gen):
        J = lie.signature_matrix(n)
        for _ in range(30):
            g = lie.expm(lie.from_coefficients(gen.normal(size=len(lie.algebra_pairs(n))), n))
            assert maxabs(g @ J @ g.T - J) <= 1e-10 * max(1.0, maxabs(g)) ** 2

    def test_rejects_non_algebra(self):
        with pytest.raises(DomainError):
            lie.expm(np.ones((3, 3)))


class TestDecompositions:
    def test_identity(self):
        p, k = lie.nak_decompose(np.eye(3))
        assert p.allclose(ChartPoint.origin(2), atol=1e-15)
        np.testing.assert_allclose(k, np.eye(3), atol=1e-15)
        k2, p2 = lie.kna_decompose(np.eye(3))
        assert p2.allclose(ChartPoint.origin(2), atol=1e-15)
        np.testing.assert_allclose(k2, np.eye(3), atol=1e-15)

    def test_nak_known_factors(self):
        k = lie.expm(0.3 * -lie.basis_E(1, 2, 2))
        p, k_out = lie.nak_decompose(lie.na_matrix([1.0], 2.0) @ k)
        assert p.allclose(ChartPoint([1.0], 2.0))
        np.testing.assert_allclose(k_out, k, atol=1e-10)

    def test_kna_known_factors(self):
        k = lie.expm(-1.1 * -lie.basis_E(1, 2, 2))
        k_out, p = lie.kna_decompose(k @ lie.na_matrix([0.4], 0.6))
        assert p.allclose(ChartPoint([0.4], 0.6))
        np.testing.assert_allclose(k_out, k, atol=1e-10)

    def test_na_matrix_matches_exponentials(self, gen):
        B = lie.iwasawa_basis(4)
        x, y = gen.normal(size=3), 1.7
        expected = taylor_expm(sum(xi * Ni for xi, Ni in zip(x, B.N))) @ taylor_expm(math.log(y) * B.A)
        np.testing.assert_allclose(lie.na_matrix(x, y), expected, atol=1e-12)

    def test_spec_style_word(self):
        B = lie.iwasawa_basis(2)
        g = lie.expm(0.7 * B.N[0]) @ lie.expm(0.2 * B.A) @ lie.expm(1.1 * lie.basis_E(1, 2, 2))
        p, k = lie.nak_decompose(g)
        assert maxabs(lie.na_matrix(p.x, p.y) @ k - g) <= 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_random_words_round_trip(self, n):
        gen = sampling.rng(7, n)
        e = np.eye(n + 1)[n]
        for _ in range(250):
            g = sampling.random_word(n, gen, scale=0.5)
            p, k = lie.nak_decompose(g)
            assert maxabs(lie.na_matrix(p.x, p.y) @ k - g) <= 1e-10
            assert maxabs(k @ e - e) <= 1e-12
            k2, p2 = lie.kna_decompose(g)
            assert maxabs(k2 @ lie.na_matrix(p2.x, p2.y) - g) <= 1e-10
            # decompose, rebuild, decompose again
            p3, k3 = lie.nak_decompose(lie.na_matrix(p.x, p.y) @ k)
            assert p3.allclose(p, atol=1e-9)
            assert maxabs(k3 - k) <= 1e-9

    def test_rejects_outside_identity_component(self):
        with pytest.raises(DecompositionError):
            lie.nak_decompose(np.diag([1.0, -1.0, -1.0]))

    def test_rejects_non_group(self):
        with pytest.raises(DecompositionError):
            lie.nak_decompose(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.5, 1.0]]))

    def test_group_inverse(self, gen):
        g = sampling.random_word(3, gen)
        np.testing.assert_allclose(lie.group_inverse(g) @ g, np.eye(4), atol=1e-10)
