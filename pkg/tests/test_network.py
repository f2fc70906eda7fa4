"""Network definition, validation, detailed balance, conservation laws."""

import numpy as np
import pytest

from edpflow import conservation_laws, kappa_from_rates, make_network, monomial, validate_network
from edpflow.network import DetailedBalanceError, NetworkError
from edpflow.properties import suite_network


class TestValidation:
    def test_exchange_valid_with_growth_flags(self, exchange):
        rep = validate_network(exchange)
        assert rep.valid
        a1, a2 = rep.growth_flags[1]
        assert a1 and a2  # |alpha|_1 = |beta|_1 = 1 <= 3 in d = 1

    def test_zero_kappa_rejected(self):
        with pytest.raises(NetworkError, match="kappa"):
            make_network(2, [((1, 0), (0, 1), 0.0)], (1.0, 1.0), (1.0, 1.0))

    def test_negative_stoichiometry_rejected(self):
        with pytest.raises(NetworkError, match="alpha"):
            make_network(2, [((-1, 0), (0, 1), 1.0)], (1.0, 1.0), (1.0, 1.0))

    def test_nonpositive_diffusion_rejected(self):
        with pytest.raises(NetworkError, match="diffusion"):
            make_network(2, [((1, 0), (0, 1), 1.0)], (1.0, 0.0), (1.0, 1.0))

    def test_growth_flags_depend_on_dimension(self):
        # |alpha|_1 = 4 violates a2 for every d, and a1 for d >= 2
        net = make_network(2, [((4, 0), (0, 1), 1.0)], (1.0, 1.0), (1.0, 1.0))
        rep = validate_network(net)
        assert rep.valid  # growth conditions are informational, not errors
        assert rep.growth_flags[1] == (True, False)  # (4+1)/2 = 2.5 <= 3 but |alpha| > 3
        assert rep.growth_flags[2] == (False, False)  # 2.5 > 2


class TestKappaFromRates:
    def test_flat_reference(self):
        assert kappa_from_rates(3.0, 3.0, (1.0, 1.0), (1, 0), (0, 1)) == 3.0

    def test_tilted_reference(self):
        # 1 * 4^1 = 4 * 1^1 holds; kappa = 4 / sqrt(4)
        assert kappa_from_rates(1.0, 4.0, (4.0, 1.0), (1, 0), (0, 1)) == pytest.approx(2.0)

    def test_violation_reported_with_both_sides(self):
        with pytest.raises(DetailedBalanceError) as err:
            kappa_from_rates(1.0, 2.0, (1.0, 1.0), (1, 0), (0, 1))
        assert err.value.lhs == 1.0 and err.value.rhs == 2.0

    def test_swap_symmetry(self, rng):
        for _ in range(50):
            omega = rng.uniform(0.2, 3.0, 3)
            alpha = rng.integers(0, 3, 3).astype(float)
            beta = rng.integers(0, 3, 3).astype(float)
            k_fw = rng.uniform(0.2, 3.0)
            k_bw = k_fw * monomial(omega, alpha) / monomial(omega, beta)
            k1 = kappa_from_rates(k_fw, k_bw, omega, alpha, beta)
            k2 = kappa_from_rates(k_bw, k_fw, omega, beta, alpha)
            assert k1 == pytest.approx(k2, rel=1e-12)


def _in_span(vec, basis):
    mat = np.stack(basis, axis=1)
    coef, *_ = np.linalg.lstsq(mat, vec, rcond=None)
    return np.allclose(mat @ coef, vec, atol=1e-12)


class TestConservationLaws:
    def test_exchange(self):
        basis = conservation_laws(np.array([[1.0, -1.0]]))
        assert len(basis) == 1
        np.testing.assert_array_equal(basis[0], [1.0, 1.0])

    def test_binary(self):
        basis = conservation_laws(np.array([[1.0, 1.0, -1.0]]))
        assert len(basis) == 2
        for q in basis:
            assert np.all(np.array([[1.0, 1.0, -1.0]]) @ q == 0.0)
        # the hand-derived vectors lie in the computed span
        assert _in_span(np.array([1.0, 0.0, 1.0]), basis)
        assert _in_span(np.array([0.0, 1.0, 1.0]), basis)

    def test_no_reactions_gives_standard_basis(self):
        basis = conservation_laws(np.zeros((0, 3)))
        np.testing.assert_array_equal(np.stack(basis), np.eye(3))

    def test_exact_orthogonality_rational_entries(self):
        gamma = np.array([[0.5, -0.25, 1.0], [1.5, 0.75, -2.0]])
        for q in conservation_laws(gamma):
            assert np.all(gamma @ q == 0.0)


class TestMonomial:
    def test_direct_product(self):
        assert monomial((2.0, 3.0), (1.0, 2.0)) == 18.0

    def test_empty_exponent(self):
        assert monomial((2.0, 3.0), (0.0, 0.0)) == 1.0

    def test_zero_to_zero_is_one(self):
        assert monomial((0.0, 5.0), (0.0, 1.0)) == 5.0

    def test_zero_base_positive_exponent(self):
        assert monomial((0.0, 5.0), (2.0, 0.0)) == 0.0


def test_property_suite(rng):
    res = suite_network(rng, 500)
    assert res.passed, res.failures
