import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as cheb
from scipy.integrate import quad

from gbfspec.spectral import (
    DomainError,
    InvalidOrderError,
    barycentric_eval,
    barycentric_matrix,
    cgl_grid,
    diff_matrix,
    modal_coefficients,
    second_diff_matrix,
)

orders = st.integers(min_value=1, max_value=32)


def random_poly(rng, n):
    """Chebyshev series of degree n with O(1) coefficients."""
    return rng.uniform(-1, 1, n + 1)


class TestGrid:
    def test_order_two(self):
        np.testing.assert_array_equal(cgl_grid(2).nodes, [-1.0, 0.0, 1.0])

    def test_order_one(self):
        np.testing.assert_array_equal(cgl_grid(1).nodes, [-1.0, 1.0])

    def test_order_four(self):
        r = math.sqrt(2) / 2
        np.testing.assert_allclose(cgl_grid(4).nodes, [-1, -r, 0, r, 1], atol=1e-16)

    @pytest.mark.parametrize("bad", [0, -3, 2.5])
    def test_invalid_order(self, bad):
        with pytest.raises(InvalidOrderError):
            cgl_grid(bad)

    @given(orders)
    def test_invariants(self, n):
        g = cgl_grid(n)
        z = g.nodes
        assert z.shape == (n + 1,)
        assert z[0] == -1.0 and z[-1] == 1.0
        assert np.all(np.diff(z) > 0)
        np.testing.assert_array_equal(z, -z[::-1])
        assert np.all(g.quad_weights > 0)
        assert abs(g.quad_weights.sum() - np.pi) < 1e-12

    def test_nodes_are_chebyshev_extrema(self):
        n = 9
        np.testing.assert_allclose(cgl_grid(n).nodes, -np.cos(np.arange(n + 1) * np.pi / n), atol=1e-15)

    def test_quadrature_exact_for_chebyshev_measure(self):
        # integral of p(x)/sqrt(1-x^2) is pi * (constant coefficient)
        g = cgl_grid(8)
        c = np.random.default_rng(4).uniform(-1, 1, 16)  # degree 2N-1
        approx = g.quad_weights @ cheb.chebval(g.nodes, c)
        assert abs(approx - np.pi * c[0]) < 1e-13

    def test_immutable(self):
        g = cgl_grid(3)
        with pytest.raises(ValueError):
            g.nodes[0] = 5.0


class TestDiffMatrix:
    def test_order_one_by_hand(self):
        np.testing.assert_allclose(diff_matrix(cgl_grid(1)), [[-0.5, 0.5], [-0.5, 0.5]], atol=1e-16)

    def test_order_two_on_square(self):
        g = cgl_grid(2)
        np.testing.assert_allclose(diff_matrix(g) @ g.nodes**2, [-2, 0, 2], atol=1e-14)

    @given(orders)
    def test_constant_null_space(self, n):
        D = diff_matrix(cgl_grid(n))
        assert np.abs(D @ np.ones(n + 1)).max() <= 1e-12 * n * n

    @pytest.mark.parametrize("n", [1, 2, 5, 16, 32])
    def test_corner_and_interior_diagonal(self, n):
        g = cgl_grid(n)
        D = diff_matrix(g)
        corner = (2 * n * n + 1) / 6
        assert D[0, 0] == pytest.approx(-corner, rel=1e-13)
        assert D[-1, -1] == pytest.approx(corner, rel=1e-13)
        z = g.nodes[1:-1]
        np.testing.assert_allclose(np.diag(D)[1:-1], -z / (2 * (1 - z**2)), atol=1e-12 * n * n)

    @given(orders, st.integers(0, 2**32 - 1))
    @settings(max_examples=60)
    def test_exact_on_polynomials(self, n, seed):
        g = cgl_grid(n)
        c = random_poly(np.random.default_rng(seed), n)
        samples = cheb.chebval(g.nodes, c)
        expected = cheb.chebval(g.nodes, cheb.chebder(c))
        err = np.abs(diff_matrix(g) @ samples - expected).max()
        assert err <= 1e-12 * n * n * max(1.0, np.abs(samples).max())


class TestSecondDiffMatrix:
    def test_square_gives_two(self):
        for n in (2, 3, 7):
            g = cgl_grid(n)
            np.testing.assert_allclose(second_diff_matrix(g) @ g.nodes**2, 2.0, atol=1e-10 * n**4)

    def test_linear_annihilated(self):
        g = cgl_grid(6)
        assert np.abs(second_diff_matrix(g) @ (3.0 - 2.0 * g.nodes)).max() < 1e-10 * 6**4

    def test_quartic_order_eight(self):
        g = cgl_grid(8)
        np.testing.assert_allclose(second_diff_matrix(g) @ g.nodes**4, 12 * g.nodes**2, atol=1e-10)

    @given(orders)
    def test_is_square_of_first(self, n):
        g = cgl_grid(n)
        D = diff_matrix(g)
        assert np.abs(second_diff_matrix(g) - D @ D).max() <= 1e-12 * n**4

    @given(orders, st.integers(0, 2**32 - 1))
    @settings(max_examples=60)
    def test_exact_on_polynomials(self, n, seed):
        g = cgl_grid(n)
        c = random_poly(np.random.default_rng(seed), n)
        samples = cheb.chebval(g.nodes, c)
        expected = cheb.chebval(g.nodes, cheb.chebder(c, 2))
        err = np.abs(second_diff_matrix(g) @ samples - expected).max()
        assert err <= 1e-10 * n**4 * max(1.0, np.abs(samples).max())


class TestBarycentric:
    @given(orders, st.data())
    def test_nodes_reproduced_exactly(self, n, data):
        g = cgl_grid(n)
        samples = np.random.default_rng(n).normal(size=n + 1)
        j = data.draw(st.integers(0, n))
        assert barycentric_eval(g, samples, g.nodes[j]) == samples[j]

    @given(orders, st.floats(-1, 1))
    def test_partition_of_unity(self, n, x):
        g = cgl_grid(n)
        assert barycentric_eval(g, np.full(n + 1, 2.5), x) == pytest.approx(2.5, abs=1e-13)

    def test_cubic_reproduction(self):
        g = cgl_grid(4)
        assert barycentric_eval(g, g.nodes**3, 0.3) == pytest.approx(0.027, abs=1e-13)

    def test_out_of_domain(self):
        g = cgl_grid(4)
        with pytest.raises(DomainError):
            barycentric_eval(g, np.zeros(5), 1.0000001)
        with pytest.raises(DomainError):
            barycentric_matrix(g, [np.nan])

    def test_sample_length_checked(self):
        with pytest.raises(ValueError):
            barycentric_eval(cgl_grid(4), np.zeros(4), 0.0)

    def test_matrix_matches_polynomial_interpolant(self):
        g = cgl_grid(10)
        f = np.exp(g.nodes) * np.sin(3 * g.nodes)
        x = np.linspace(-1, 1, 37)
        coef = cheb.chebfit(g.nodes, f, 10)
        np.testing.assert_allclose(barycentric_matrix(g, x) @ f, cheb.chebval(x, coef), atol=1e-13)


class TestModalCoefficients:
    def test_constant(self):
        g = cgl_grid(7)
        expected = np.zeros(8)
        expected[0] = 1
        np.testing.assert_allclose(modal_coefficients(g, np.ones(8)), expected, atol=1e-13)

    def test_linear(self):
        g = cgl_grid(7)
        expected = np.zeros(8)
        expected[1] = 1
        np.testing.assert_allclose(modal_coefficients(g, g.nodes), expected, atol=1e-13)

    @pytest.mark.parametrize("n", [3, 8, 13])
    def test_highest_mode_reproduced(self, n):
        g = cgl_grid(n)
        expected = np.zeros(n + 1)
        expected[n] = 1
        samples = cheb.chebval(g.nodes, expected)
        np.testing.assert_allclose(modal_coefficients(g, samples), expected, atol=1e-13)

    def test_exp_against_adaptive_quadrature(self):
        n = 12
        g = cgl_grid(n)
        coeffs = modal_coefficients(g, np.exp(g.nodes))
        # a_k = (2/pi) * int_0^pi exp(cos th) cos(k th) dth, halved for k = 0
        oracle = np.array([
            (2 / np.pi) * quad(lambda th: np.exp(np.cos(th)), 0, np.pi, weight="cos", wvar=k, epsabs=1e-14)[0]
            for k in range(n + 1)
        ])
        oracle[0] /= 2
        np.testing.assert_allclose(coeffs[: n - 1], oracle[: n - 1], atol=1e-13)
        assert abs(coeffs[n]) < 1e-10
