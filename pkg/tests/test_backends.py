"""Numba and numpy kernel backends agree and are individually deterministic."""

import numpy as np
import pytest

from edpflow.kernels import BACKEND, _numpy

try:
    from edpflow.kernels import _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


def _instance(rng, species=3, d=2, n=5, reactions=2):
    m = n**d
    c = rng.uniform(0.0, 3.0, (species, m))
    c[0, 0] = 0.0  # exercise the zero-concentration branch
    w = rng.uniform(0.5, 2.0, (species, m))
    delta = rng.uniform(0.5, 2.0, species)
    kappa = rng.uniform(0.5, 2.0, reactions)
    alpha = rng.integers(0, 3, (reactions, species)).astype(float)
    beta = rng.integers(0, 3, (reactions, species)).astype(float)
    cells = np.arange(m).reshape((n,) * d)
    fwd = np.stack([np.roll(cells, -1, axis=l).ravel() for l in range(d)])
    bwd = np.stack([np.roll(cells, +1, axis=l).ravel() for l in range(d)])
    return c, w, delta, kappa, alpha, beta, alpha - beta, fwd, bwd, float(n) ** 2


def test_selected_backend_is_known():
    assert BACKEND in ("numba", "numpy")


@needs_numba
def test_flux_parity(rng):
    c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2 = _instance(rng)
    np.testing.assert_allclose(
        _numba.diffusive_flux(c, w, delta, fwd, n2),
        _numpy.diffusive_flux(c, w, delta, fwd, n2),
        rtol=1e-13, atol=1e-13,
    )
    np.testing.assert_allclose(
        _numba.reactive_flux(c, w, kappa, alpha, beta),
        _numpy.reactive_flux(c, w, kappa, alpha, beta),
        rtol=1e-13, atol=1e-13,
    )


@needs_numba
def test_adjoint_and_rhs_parity(rng):
    c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2 = _instance(rng)
    F = rng.standard_normal((3, 2, 25))
    J = rng.standard_normal((2, 25))
    np.testing.assert_allclose(
        _numba.ce_adjoint_core(F, J, gamma, bwd),
        _numpy.ce_adjoint_core(F, J, gamma, bwd),
        rtol=1e-13, atol=1e-13,
    )
    np.testing.assert_allclose(
        _numba.rhs(c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2),
        _numpy.rhs(c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2),
        rtol=1e-12, atol=1e-12,
    )


@needs_numba
def test_fused_rhs_equals_composition(rng):
    c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2 = _instance(rng)
    fused = _numba.rhs(c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2)
    composed = _numba.ce_adjoint_core(
        _numba.diffusive_flux(c, w, delta, fwd, n2),
        _numba.reactive_flux(c, w, kappa, alpha, beta),
        gamma,
        bwd,
    )
    np.testing.assert_allclose(fused, composed, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("impl_name", ["numpy", "numba"])
def test_repeat_call_bitwise_deterministic(impl_name, rng):
    if impl_name == "numba" and not HAVE_NUMBA:
        pytest.skip("numba unavailable")
    impl = _numba if impl_name == "numba" else _numpy
    args = _instance(rng)
    a = impl.rhs(*args)
    b = impl.rhs(*args)
    np.testing.assert_array_equal(a, b)
