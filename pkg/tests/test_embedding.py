"""Lattice-to-torus embeddings: profiles, hat functions, adjoint pairings."""

import numpy as np
import pytest

from edpflow import discretize, integrate
from edpflow.embedding import (
    corner_weight,
    discrete_pairings,
    embed_flux_diff,
    embed_flux_react,
    embed_multilinear,
    embed_pc,
    nabla_n,
    nodal_hat,
    pair_embedded_cells,
    pair_embedded_diff,
    pair_embedded_react,
    rho_tilde,
)
from edpflow.expr import CosineMode, CosineProfile, constant
from edpflow.grid import TorusGrid, l1_cells, reference_weights
from edpflow.properties import suite_embedding_duality
from edpflow.functionals import slope


class TestPiecewiseConstant:
    def test_constant_everywhere(self, rng):
        g = TorusGrid(2, 4)
        f = embed_pc(g, np.full((1, 16), 5.0))
        pts = rng.random((200, 2))
        np.testing.assert_array_equal(f.evaluate(pts), np.full((1, 200), 5.0))

    def test_mass_identity(self, rng):
        g = TorusGrid(1, 8)
        c = rng.uniform(0, 3, (2, 8))
        f = embed_pc(g, c)
        np.testing.assert_allclose(f.integral(), c.sum(axis=1) / 8, rtol=1e-14)
        assert f.l1() == pytest.approx(l1_cells(g, c), rel=1e-14)

    def test_duality_vs_quadrature(self, exchange, rng):
        g = TorusGrid(1, 8)
        c = rng.uniform(0, 3, (2, 8))
        phis = [CosineProfile(0.0, (CosineMode(1.0, (1,)),))] * 2
        lhs = pair_embedded_cells(g, c, phis)
        # lattice side via the quadrature discretization (independent rule)
        rhs = float(np.sum(discretize(g, phis) * c) / g.M)
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestEdgeProfile:
    def test_constant_flux_embeds_to_constant_over_n(self, rng):
        g = TorusGrid(1, 8)
        f = embed_flux_diff(g, np.full((1, 1, 8), 3.0))
        pts = rng.random((100, 1))
        np.testing.assert_allclose(f.evaluate(pts), 3.0 / 8, rtol=1e-14)

    def test_single_edge_tent(self):
        g = TorusGrid(1, 8)
        F = np.zeros((1, 1, 8))
        F[0, 0, 0] = 8.0
        f = embed_flux_diff(g, F)
        # rises 0 -> 1 across the first cell, falls back across the second
        s = np.array([[0.25 / 8], [1.0 / 8], [1.75 / 8], [4.0 / 8]])
        np.testing.assert_allclose(f.evaluate(s).ravel(), [0.25, 1.0, 0.25, 0.0], atol=1e-13)
        assert f.l1() == pytest.approx(1.0 / 8, rel=1e-14)

    def test_l1_contraction(self, rng):
        g = TorusGrid(2, 4)
        F = rng.standard_normal((2, 2, 16))
        f = embed_flux_diff(g, F)
        bound = float(np.abs(F).sum() / (g.M * g.N))
        assert f.l1() <= bound + 1e-14

    def test_duality_identity(self, exchange, rng):
        g = TorusGrid(1, 8)
        F = rng.uniform(-2, 2, (2, 1, 8))
        phis = [
            CosineProfile(0.0, (CosineMode(1.0, (1,), -np.pi / 2),)),  # sin(2 pi x)
            CosineProfile(0.2, (CosineMode(0.5, (2,), 0.3),)),
        ]
        lat = discrete_pairings(g, exchange, np.zeros((2, 8)), F, np.zeros((1, 8)), phis)
        assert pair_embedded_diff(g, F, phis) == pytest.approx(lat["diff"], abs=1e-10)


class TestReactEmbedding:
    def test_constant(self, rng):
        g = TorusGrid(1, 4)
        f = embed_flux_react(g, np.ones((1, 4)))
        np.testing.assert_array_equal(f.evaluate(rng.random((50, 1))), np.ones((1, 50)))

    def test_l1_exact(self, rng):
        g = TorusGrid(2, 3)
        J = rng.standard_normal((2, 9))
        assert embed_flux_react(g, J).l1() == pytest.approx(l1_cells(g, J), rel=1e-14)

    def test_duality_identity(self, exchange, rng):
        g = TorusGrid(2, 4)
        J = rng.uniform(-2, 2, (1, 16))
        phis = [
            CosineProfile(0.1, (CosineMode(0.8, (1, 0), 0.2),)),
            CosineProfile(-0.4, (CosineMode(0.6, (0, 1), 1.5),)),
        ]
        lat = discrete_pairings(g, exchange, np.zeros((2, 16)), np.zeros((2, 2, 16)), J, phis)
        assert pair_embedded_react(g, exchange, J, phis) == pytest.approx(lat["react"], abs=1e-12)


class TestHatFunctions:
    def test_corner_weights_at_cell_center(self):
        for d in (1, 2, 3):
            g = TorusGrid(d, 4)
            center = np.full((1, d), 1.0 / 8)
            for m in np.ndindex(*(2,) * d):
                assert corner_weight(g, m, center)[0] == pytest.approx(0.5**d, rel=1e-14)

    def test_partition_on_first_cell(self, rng):
        g = TorusGrid(2, 4)
        pts = rng.random((100, 2)) / 4
        total = sum(corner_weight(g, m, pts) for m in np.ndindex(2, 2))
        np.testing.assert_allclose(total, 1.0, atol=1e-14)

    def test_zero_off_first_cell(self):
        g = TorusGrid(1, 4)
        assert corner_weight(g, (1,), np.array([[0.6]]))[0] == 0.0

    def test_corner_weight_integral(self):
        g = TorusGrid(2, 4)
        pts, wts = TorusGrid(2, 8).quad_nodes()
        for m in ((0, 0), (1, 0), (1, 1)):
            val = float(np.sum(corner_weight(g, m, pts) * wts))
            assert val == pytest.approx(1.0 / (2 * 4) ** 2, rel=1e-12)

    def test_nodal_hat_integral(self):
        g = TorusGrid(2, 4)
        pts, wts = TorusGrid(2, 8).quad_nodes()
        val = float(np.sum(nodal_hat(g, (2, 1), pts) * wts))
        assert val == pytest.approx(1.0 / 16, abs=1e-12)

    def test_partition_of_unity(self, rng):
        g = TorusGrid(2, 4)
        pts = rng.random((1000, 2))
        total = sum(nodal_hat(g, k, pts) for k in np.ndindex(4, 4))
        np.testing.assert_allclose(total, 1.0, atol=1e-14)


class TestMultilinear:
    def test_constant(self, rng):
        g = TorusGrid(2, 4)
        f = embed_multilinear(g, np.full((1, 16), 2.5))
        np.testing.assert_allclose(f.evaluate(rng.random((100, 2))), 2.5, rtol=1e-14)

    def test_nodal_interpolation(self, rng):
        g = TorusGrid(2, 4)
        U = rng.standard_normal((1, 16))
        nodes = np.array([[i / 4, j / 4] for i in range(4) for j in range(4)])
        np.testing.assert_allclose(embed_multilinear(g, U).evaluate(nodes), U, atol=1e-14)

    def test_midpoint_value(self):
        g = TorusGrid(1, 2)
        f = embed_multilinear(g, np.array([[0.0, 1.0]]))
        assert f.evaluate(np.array([[0.25]]))[0, 0] == pytest.approx(0.5, rel=1e-14)

    def test_gradient_square_integral_matches_lattice_sum(self, rng):
        g = TorusGrid(1, 8)
        U = rng.standard_normal((1, 8))
        f = embed_multilinear(g, U)
        pts, wts = g.quad_nodes()
        quad = float(np.sum((f.gradient(pts) ** 2).sum(axis=1) * wts))
        exact = float(np.sum((8.0 * (U[0, g.nbr_fwd[0]] - U[0])) ** 2) / 8)
        assert quad == pytest.approx(exact, rel=1e-12)

    def test_nodal_interpolation_3d(self, rng):
        g = TorusGrid(3, 3)
        U = rng.standard_normal((1, 27))
        f = embed_multilinear(g, U)
        nodes = np.array([[i / 3, j / 3, k / 3] for i in range(3) for j in range(3) for k in range(3)])
        np.testing.assert_allclose(f.evaluate(nodes), U, atol=1e-14)
        const = embed_multilinear(g, np.full((1, 27), 2.0))
        np.testing.assert_allclose(const.evaluate(rng.random((100, 3))), 2.0, rtol=1e-14)

    def test_matches_hat_expansion(self, rng):
        g = TorusGrid(2, 3)
        U = rng.standard_normal((1, 9))
        pts = rng.random((50, 2))
        direct = embed_multilinear(g, U).evaluate(pts)
        via_hats = sum(
            U[0, i] * nodal_hat(g, k, pts)
            for i, k in enumerate(np.ndindex(3, 3))
        )
        np.testing.assert_allclose(direct[0], via_hats, atol=1e-13)


class TestRhoTilde:
    def test_equilibrium_exact(self, exchange):
        g = TorusGrid(1, 8)
        w = reference_weights(g, exchange)
        _, gap = rho_tilde(g, w.copy(), w, exchange)
        assert gap < 1e-14

    def test_gap_halves_with_refinement(self, heat):
        prof = [CosineProfile(1.0, (CosineMode(0.4, (1,), 0.7),))]
        gaps = []
        for n in (8, 16, 32, 64):
            g = TorusGrid(1, n)
            w = reference_weights(g, heat)
            c = discretize(g, prof)
            _, gap = rho_tilde(g, c, w, heat)
            gaps.append(gap)
        rates = np.array(gaps[:-1]) / np.array(gaps[1:])
        assert np.all(rates > 2 * 0.8) and np.all(rates < 2 * 1.2)

    def test_spike_difference_local(self, heat):
        g = TorusGrid(1, 8)
        w = reference_weights(g, heat)
        c = np.zeros((1, 8))
        c[0, 3] = 1.0
        field, _ = rho_tilde(g, c, w, heat)
        pc = embed_pc(g, c)
        # difference lives on the cells carrying the spike's hat support
        far = np.array([[0.06], [0.7], [0.9]])
        np.testing.assert_allclose(field(far), pc.evaluate(far), atol=1e-14)
        near = np.array([[3.1 / 8], [3.9 / 8]])
        assert np.max(np.abs(field(near) - pc.evaluate(near))) > 1e-3


class TestNablaN:
    def test_constant(self):
        g = TorusGrid(2, 4)
        assert np.all(nabla_n(g, np.full((1, 16), 3.0)) == 0.0)

    def test_ramp_with_wrap(self):
        g = TorusGrid(1, 4)
        out = nabla_n(g, np.array([[0.0, 0.25, 0.5, 0.75]]))
        np.testing.assert_array_equal(out[0, 0], [1.0, 1.0, 1.0, -3.0])

    def test_l2_bounded_by_slope(self, heat, rng):
        g = TorusGrid(1, 16)
        w = reference_weights(g, heat)
        c = rng.uniform(0.2, 2.0, (1, 16))
        u = np.sqrt(c / w)
        s_diff, _ = slope(g, heat, c, w)
        l2 = float(np.sum(nabla_n(g, u) ** 2) / g.M)
        # s_diff = (1/M) sum 2 delta sqrt(w w) N^2 (du)^2 >= 2 delta_* w_* l2
        assert l2 <= s_diff / (2.0 * 1.0 * 1.0) + 1e-12


class TestEmbeddedContinuityEquation:
    def test_distributional_residual_small_on_solver_output(self, exchange):
        """d/dt <embedded state, phi> matches the embedded flux pairings up to
        central-difference and quadrature tolerance, for 5 trig test functions."""
        g = TorusGrid(1, 16)
        w = reference_weights(g, exchange)
        ic = [CosineProfile(1.0, (CosineMode(0.5, (1,)),)), constant(1.0)]
        c0 = discretize(g, ic)
        traj = integrate(g, exchange, c0, 0.05, dt=1e-4, sample_dt=1e-3, w=w)
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(5):
            phis = [
                CosineProfile(
                    float(rng.uniform(-1, 1)),
                    (CosineMode(float(rng.uniform(-1, 1)), (int(rng.integers(-2, 3)),), float(rng.uniform(0, 6))),),
                )
                for _ in range(2)
            ]
            for m in range(1, len(traj.times) - 1, 10):
                h2 = traj.times[m + 1] - traj.times[m - 1]
                dpair = (
                    pair_embedded_cells(g, traj.states[m + 1], phis)
                    - pair_embedded_cells(g, traj.states[m - 1], phis)
                ) / h2
                flux_pair = pair_embedded_diff(g, traj.flux_diff[m], phis) + pair_embedded_react(
                    g, exchange, traj.flux_react[m], phis
                )
                worst = max(worst, abs(dpair - flux_pair))
        assert worst < 5e-4  # O(sample_dt^2) central difference dominates


def test_property_suite(rng):
    res = suite_embedding_duality(rng, 256)
    assert res.passed, res.failures
