import numpy as np
import pytest

from gbfspec.lift import lift_derivatives, lift_value, sample_lift
from gbfspec.problem import BoundaryData, ProblemSpec, benchmark_boundary_data
from gbfspec.spectral import cgl_grid

from .oracles import fd5, fd5_second, random_boundary_triple


def constant(c):
    return lambda x: np.full(np.shape(x), c, dtype=float)


def constant_data(c=0.7):
    return BoundaryData(constant(c), constant(c), constant(c))


@pytest.fixture
def example_two():
    return benchmark_boundary_data(ProblemSpec(1.0, 1.0, 1, 1.0))


class TestLiftValue:
    def test_boundary_reproduction_random_triples(self):
        rng = np.random.default_rng(2024)
        s = np.linspace(-1, 1, 41)
        worst = 0.0
        for _ in range(64):
            data = BoundaryData(*random_boundary_triple(rng))
            worst = max(
                worst,
                np.abs(lift_value(data, s, -1.0) - data.h(s)).max(),
                np.abs(lift_value(data, -1.0, s) - data.g1(s)).max(),
                np.abs(lift_value(data, 1.0, s) - data.g2(s)).max(),
            )
        assert worst <= 1e-13

    def test_constant_data_telescopes(self):
        eta, t = np.meshgrid(np.linspace(-1, 1, 7), np.linspace(-1, 1, 5))
        np.testing.assert_allclose(lift_value(constant_data(), eta, t), 0.7, rtol=1e-15)

    def test_benchmark_faces_on_grid(self, example_two):
        # V = 0 already satisfies the initial and side conditions at the nodes
        g = cgl_grid(8)
        omega = lift_value(example_two, g.nodes[:, None], g.nodes[None, :])
        np.testing.assert_allclose(omega[:, 0], example_two.h(g.nodes), atol=1e-15)
        np.testing.assert_allclose(omega[0, :], example_two.g1(g.nodes), atol=1e-15)
        np.testing.assert_allclose(omega[-1, :], example_two.g2(g.nodes), atol=1e-15)


class TestLiftDerivatives:
    def test_constant_data(self):
        for part in lift_derivatives(constant_data(), np.array([-0.3, 0.2]), np.array([0.5, -0.9])):
            np.testing.assert_allclose(part, 0.0, atol=1e-13)

    def test_quadratic_profile(self):
        data = BoundaryData(lambda e: np.asarray(e, dtype=float) ** 2, constant(1.0), constant(1.0))
        eta = np.linspace(-0.9, 0.9, 7)
        _, omega_eta, omega_etaeta = lift_derivatives(data, eta, -1.0)
        # (1 - t)/2 * h'' = 2 at t = -1; the g-terms are linear in eta
        np.testing.assert_allclose(omega_etaeta, 2.0, atol=1e-11)
        np.testing.assert_allclose(omega_eta, 2 * eta, atol=1e-12)
        _, _, half = lift_derivatives(data, eta, 0.0)
        np.testing.assert_allclose(half, 1.0, atol=1e-11)

    def test_example_two_at_origin(self, example_two):
        h = 1e-3
        om_t, om_e, om_ee = lift_derivatives(example_two, 0.0, 0.0)
        assert om_t == pytest.approx(fd5(lambda s: lift_value(example_two, 0.0, s), 0.0, h), abs=1e-8)
        assert om_e == pytest.approx(fd5(lambda s: lift_value(example_two, s, 0.0), 0.0, h), abs=1e-8)
        assert om_ee == pytest.approx(fd5_second(lambda s: lift_value(example_two, s, 0.0), 0.0, h), abs=1e-8)

    def test_random_points_random_data(self):
        rng = np.random.default_rng(7)
        h = 1e-3
        for _ in range(8):
            data = BoundaryData(*random_boundary_triple(rng))
            eta, t = rng.uniform(-0.95, 0.95, 2)
            om_t, om_e, om_ee = lift_derivatives(data, eta, t)
            assert om_t == pytest.approx(fd5(lambda s: lift_value(data, eta, s), t, h), abs=1e-7)
            assert om_e == pytest.approx(fd5(lambda s: lift_value(data, s, t), eta, h), abs=1e-7)
            assert om_ee == pytest.approx(fd5_second(lambda s: lift_value(data, s, t), eta, h), abs=1e-7)

    def test_scalar_and_array_shapes(self, example_two):
        assert isinstance(lift_derivatives(example_two, 0.1, 0.2)[0], float)
        parts = lift_derivatives(example_two, np.zeros((2, 3)), 0.0)
        assert all(p.shape == (2, 3) for p in parts)


class TestSampleLift:
    def test_lengths(self, example_two):
        g = cgl_grid(4)
        lift = sample_lift(example_two, g, g)
        for v in (lift.P, lift.Q, lift.R, lift.S):
            assert v.shape == (12,)
        assert lift.interior_shape == (3, 4)
        assert lift.omega.shape == (5, 5)

    def test_rectangular_grids(self, example_two):
        lift = sample_lift(example_two, cgl_grid(5), cgl_grid(3))
        assert lift.P.shape == (12,)
        assert lift.interior_shape == (4, 3)

    def test_constant_data(self):
        g = cgl_grid(5)
        lift = sample_lift(constant_data(), g, g)
        np.testing.assert_allclose(lift.P, 0.7, rtol=1e-15)
        for v in (lift.Q, lift.R, lift.S):
            np.testing.assert_allclose(v, 0.0, atol=1e-13)

    def test_values_match_pointwise_bit_exactly(self, example_two):
        g = cgl_grid(6)
        lift = sample_lift(example_two, g, g)
        expected = [lift_value(example_two, g.nodes[i], g.nodes[j]) for i in range(1, 6) for j in range(1, 7)]
        assert lift.P.size == 30
        np.testing.assert_array_equal(lift.P, expected)

    def test_space_major_ordering(self, example_two):
        g = cgl_grid(4)
        lift = sample_lift(example_two, g, g)
        # entry (i-1)*N + (j-1) is (eta_i, t_j)
        assert lift.P[1 * 4 + 2] == lift_value(example_two, g.nodes[2], g.nodes[3])

    def test_derivatives_match_pointwise_interpolant_derivatives(self, example_two):
        # the grid samples differentiate the order-N trace interpolants, so they
        # agree with the order-32 pointwise version to spectral accuracy
        g = cgl_grid(16)
        lift = sample_lift(example_two, g, g)
        eta, t = np.meshgrid(g.nodes[1:-1], g.nodes[1:], indexing="ij")
        om_t, om_e, om_ee = lift_derivatives(example_two, eta, t)
        np.testing.assert_allclose(lift.S, om_t.ravel(), atol=1e-11)
        np.testing.assert_allclose(lift.Q, om_e.ravel(), atol=1e-11)
        np.testing.assert_allclose(lift.R, om_ee.ravel(), atol=1e-9)
