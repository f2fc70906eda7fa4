"""Numba-jitted lattice kernels; same signatures as the numpy backend.

Loops are serial so reductions stay in a fixed order and runs are
bit-reproducible.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _pow(u, a):
    # mass-action exponents are mostly 0, 1 or 2; avoid the libm pow there
    if a == 1.0:
        return u
    if a == 2.0:
        return u * u
    return u**a


@njit(cache=True)
def diffusive_flux(c, w, delta, nbr_fwd, n2):
    ns, m = c.shape
    d = nbr_fwd.shape[0]
    F = np.empty((ns, d, m))
    for i in range(ns):
        for e in range(d):
            for k in range(m):
                kp = nbr_fwd[e, k]
                F[i, e, k] = (
                    delta[i]
                    * n2
                    * np.sqrt(w[i, k] * w[i, kp])
                    * (c[i, k] / w[i, k] - c[i, kp] / w[i, kp])
                )
    return F


@njit(cache=True)
def reactive_flux(c, w, kappa, alpha, beta):
    nr, ns = alpha.shape
    m = c.shape[1]
    J = np.empty((nr, m))
    for r in range(nr):
        for k in range(m):
            mono_a = 1.0
            mono_b = 1.0
            wmono = 1.0
            for i in range(ns):
                u = c[i, k] / w[i, k]
                if alpha[r, i] != 0.0:
                    mono_a *= _pow(u, alpha[r, i])
                if beta[r, i] != 0.0:
                    mono_b *= _pow(u, beta[r, i])
                g = 0.5 * (alpha[r, i] + beta[r, i])
                if g != 0.0:
                    wmono *= _pow(w[i, k], g)
            J[r, k] = kappa[r] * wmono * (mono_b - mono_a)
    return J


@njit(cache=True)
def ce_adjoint_core(F, J, gamma, nbr_bwd):
    ns, d, m = F.shape
    nr = J.shape[0]
    out = np.zeros((ns, m))
    for i in range(ns):
        for e in range(d):
            for k in range(m):
                out[i, k] += F[i, e, nbr_bwd[e, k]] - F[i, e, k]
    for r in range(nr):
        for i in range(ns):
            g = gamma[r, i]
            if g != 0.0:
                for k in range(m):
                    out[i, k] += g * J[r, k]
    return out


@njit(cache=True)
def rhs(c, w, delta, kappa, alpha, beta, gamma, nbr_fwd, nbr_bwd, n2):
    ns, m = c.shape
    d = nbr_fwd.shape[0]
    nr = alpha.shape[0]
    out = np.zeros((ns, m))
    for i in range(ns):
        for e in range(d):
            for k in range(m):
                kp = nbr_fwd[e, k]
                f = (
                    delta[i]
                    * n2
                    * np.sqrt(w[i, k] * w[i, kp])
                    * (c[i, k] / w[i, k] - c[i, kp] / w[i, kp])
                )
                out[i, k] -= f
                out[i, kp] += f
    for r in range(nr):
        for k in range(m):
            mono_a = 1.0
            mono_b = 1.0
            wmono = 1.0
            for i in range(ns):
                u = c[i, k] / w[i, k]
                if alpha[r, i] != 0.0:
                    mono_a *= _pow(u, alpha[r, i])
                if beta[r, i] != 0.0:
                    mono_b *= _pow(u, beta[r, i])
                g = 0.5 * (alpha[r, i] + beta[r, i])
                if g != 0.0:
                    wmono *= _pow(w[i, k], g)
            jr = kappa[r] * wmono * (mono_b - mono_a)
            for i in range(ns):
                g = gamma[r, i]
                if g != 0.0:
                    out[i, k] += g * jr
    return out
