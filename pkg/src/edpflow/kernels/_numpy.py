"""Pure-numpy reference implementations of the hot lattice kernels.

Shapes: c, w (I, M); F (I, d, M); J (R, M); alpha, beta (R, I);
nbr_fwd, nbr_bwd (d, M) int64; n2 = N^2.
"""

import numpy as np


def diffusive_flux(c, w, delta, nbr_fwd, n2):
    """F[i,e,k] = delta_i * N^2 * sqrt(w_k w_{k+e}) * (c_k/w_k - c_{k+e}/w_{k+e})."""
    u = c / w
    wf = w[:, nbr_fwd]
    return delta[:, None, None] * n2 * np.sqrt(w[:, None, :] * wf) * (u[:, None, :] - u[:, nbr_fwd])


def reactive_flux(c, w, kappa, alpha, beta):
    """J[r,k] = kappa_r * w_k^((a+b)/2) * ((c/w)^beta - (c/w)^alpha)."""
    u = c / w
    mono_a = np.prod(u[None, :, :] ** alpha[:, :, None], axis=1)
    mono_b = np.prod(u[None, :, :] ** beta[:, :, None], axis=1)
    wmono = np.prod(w[None, :, :] ** (0.5 * (alpha + beta))[:, :, None], axis=1)
    return kappa[:, None] * wmono * (mono_b - mono_a)


def ce_adjoint_core(F, J, gamma, nbr_bwd):
    """out[i,k] = sum_e (F[i,e,k-e] - F[i,e,k]) + sum_r gamma[r,i] J[r,k]."""
    d = F.shape[1]
    ax = np.arange(d)[:, None]
    out = (F[:, ax, nbr_bwd] - F).sum(axis=1)
    if J.shape[0]:
        out += gamma.T @ J
    return out


def rhs(c, w, delta, kappa, alpha, beta, gamma, nbr_fwd, nbr_bwd, n2):
    """Right-hand side of the lattice evolution: adjoint of the constitutive fluxes."""
    F = diffusive_flux(c, w, delta, nbr_fwd, n2)
    J = reactive_flux(c, w, kappa, alpha, beta)
    return ce_adjoint_core(F, J, gamma, nbr_bwd)
