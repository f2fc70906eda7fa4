"""Embeddings between lattice fields and functions on the torus.

Three field kinds arise:

  * piecewise-constant cell embeddings (states, reactive fluxes),
  * edge-profile embeddings of diffusive fluxes: affine along their own
    direction (interpolating F/N across neighboring cells), constant
    transversally,
  * continuous multilinear nodal interpolation built from corner weight
    functions (products of one-dimensional tents).

Profiles are represented exactly and evaluated pointwise; integrals against
smooth test functions use per-cell Gauss quadrature of the exact evaluations,
so the adjoint identities hold to quadrature precision (~1e-13).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .grid import TorusGrid, disc_gradient, discretize, gamma_lift, pair_cells, pair_edges, pair_react
from .network import ReactionNetwork


def _corners(d: int) -> np.ndarray:
    return np.array(list(product((0, 1), repeat=d)), dtype=np.int64)


def _flat_index(grid: TorusGrid, j_multi: np.ndarray) -> np.ndarray:
    flat = j_multi[..., 0] % grid.N
    for l in range(1, grid.d):
        flat = flat * grid.N + (j_multi[..., l] % grid.N)
    return flat


@dataclass(frozen=True)
class PiecewiseConstantField:
    """Value of the owning cell everywhere on it."""

    grid: TorusGrid
    values: np.ndarray  # (n_comp, M)

    kind = "constant-per-cell"

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        flat, _, _ = self.grid.locate(np.atleast_2d(x))
        return self.values[:, flat]

    def integral(self) -> np.ndarray:
        """Exact integral per component (equals the weighted lattice mean)."""
        return self.values.sum(axis=1) / self.grid.M

    def l1(self) -> float:
        return float(np.abs(self.values).sum() / self.grid.M)


@dataclass(frozen=True)
class EdgeProfileField:
    """Embedded diffusive flux: affine along each edge direction.

    On cell j, direction e, the profile interpolates F[:, e, j-e]/N at the
    lower face to F[:, e, j]/N at the upper face, constant transversally.
    """

    grid: TorusGrid
    flux: np.ndarray  # (n_comp, d, M)

    kind = "edge-profile"

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Values (n_comp, d, P) of the d directional components."""
        g = self.grid
        flat, frac, _ = g.locate(np.atleast_2d(x))
        out = np.empty((self.flux.shape[0], g.d, flat.size))
        for e in range(g.d):
            s = frac[..., e].ravel()
            jm = g.nbr_bwd[e, flat]
            out[:, e, :] = (s * self.flux[:, e, flat] + (1.0 - s) * self.flux[:, e, jm]) / g.N
        return out

    def l1(self) -> float:
        """Exact integral of |f| (per-cell closed form for |affine|), summed."""
        g = self.grid
        total = 0.0
        for e in range(g.d):
            a = self.flux[:, e, g.nbr_bwd[e]] / g.N
            b = self.flux[:, e, :] / g.N
            same = a * b >= 0
            mean_abs = np.where(
                same,
                0.5 * (np.abs(a) + np.abs(b)),
                (a**2 + b**2) / (2.0 * np.maximum(np.abs(b - a), 1e-300)),
            )
            total += float(mean_abs.sum() / g.M)
        return total


@dataclass(frozen=True)
class MultilinearField:
    """Continuous nodal interpolation: value at lattice node k/N equals U[:, k]."""

    grid: TorusGrid
    nodal: np.ndarray  # (n_comp, M)

    kind = "multilinear-per-cell"

    def _weights(self, x: np.ndarray):
        g = self.grid
        flat, frac, j = g.locate(np.atleast_2d(x))
        corners = _corners(g.d)
        idx = np.empty((len(corners), flat.size), dtype=np.int64)
        wts = np.empty((len(corners), flat.size))
        for n, m in enumerate(corners):
            idx[n] = _flat_index(g, j + m)
            fac = np.ones(flat.size)
            for l in range(g.d):
                sl = frac[..., l].ravel()
                fac = fac * (sl if m[l] else 1.0 - sl)
            wts[n] = fac
        return idx, wts, frac, j

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        idx, wts, _, _ = self._weights(x)
        return np.einsum("cnp,np->cp", self.nodal[:, idx], wts)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Pointwise gradient (n_comp, d, P); piecewise multilinear per cell."""
        g = self.grid
        flat, frac, j = g.locate(np.atleast_2d(x))
        corners = _corners(g.d)
        out = np.zeros((self.nodal.shape[0], g.d, flat.size))
        for m in corners:
            idx = _flat_index(g, j + m)
            vals = self.nodal[:, idx]
            for l in range(g.d):
                fac = np.full(flat.size, float(g.N) if m[l] else -float(g.N))
                for lp in range(g.d):
                    if lp == l:
                        continue
                    slp = frac[..., lp].ravel()
                    fac = fac * (slp if m[lp] else 1.0 - slp)
                out[:, l, :] += vals * fac
        return out


def embed_pc(grid: TorusGrid, values: np.ndarray) -> PiecewiseConstantField:
    return PiecewiseConstantField(grid, np.atleast_2d(np.asarray(values, dtype=float)))


def embed_flux_diff(grid: TorusGrid, F: np.ndarray) -> EdgeProfileField:
    return EdgeProfileField(grid, np.asarray(F, dtype=float))


def embed_flux_react(grid: TorusGrid, J: np.ndarray) -> PiecewiseConstantField:
    return PiecewiseConstantField(grid, np.atleast_2d(np.asarray(J, dtype=float)))


def embed_multilinear(grid: TorusGrid, U: np.ndarray) -> MultilinearField:
    return MultilinearField(grid, np.atleast_2d(np.asarray(U, dtype=float)))


def corner_weight(grid: TorusGrid, m, x: np.ndarray) -> np.ndarray:
    """Corner weight function supported on the first cell [0, 1/N)^d.

    For m in {0,1}^d:  prod_l (N x_l if m_l else 1 - N x_l) on the cell, 0 off
    it.  The 2^d weights are a partition of unity on the cell, each with
    integral (2N)^-d.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float)) % 1.0
    m = np.asarray(m, dtype=int)
    inside = np.all(x * grid.N < 1.0, axis=-1)
    fac = np.ones(x.shape[0])
    for l in range(grid.d):
        t = grid.N * x[:, l]
        fac = fac * np.where(m[l], t, 1.0 - t)
    return np.where(inside, fac, 0.0)


def nodal_hat(grid: TorusGrid, k, x: np.ndarray) -> np.ndarray:
    """Nodal basis function at lattice node k/N: product of periodic tents.

    Values in [0,1], integral N^-d, and the familiy sums to 1 everywhere.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float)) % 1.0
    k = np.atleast_1d(np.asarray(k, dtype=float))
    fac = np.ones(x.shape[0])
    for l in range(grid.d):
        t = (grid.N * x[:, l] - k[l]) % grid.N
        # periodic tent; both branches contribute when N = 1
        fac = fac * (np.maximum(0.0, 1.0 - t) + np.maximum(0.0, t - (grid.N - 1.0)))
    return fac


def nabla_n(grid: TorusGrid, u: np.ndarray) -> np.ndarray:
    """Scaled forward difference quotient N*(u_{k+e} - u_k) per cell and axis."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    return float(grid.N) * (u[:, grid.nbr_fwd] - u[:, None, :])


def rho_tilde(grid: TorusGrid, c: np.ndarray, w: np.ndarray, net: ReactionNetwork):
    """Regularized density: omega_i(x) * (multilinear sqrt(c/w))_i(x)^2.

    Returns (field, l1_gap) where field evaluates the density and l1_gap is
    the quadrature L1 distance to the piecewise-constant embedding of c,
    O(1/N) under bounded diffusive slope.
    """
    u = embed_multilinear(grid, np.sqrt(c / w))

    def evaluate(x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        vals = u.evaluate(x) ** 2
        om = np.stack([p(x) for p in net.reference])
        return om * vals

    pc = embed_pc(grid, c)
    pts, wts = grid.quad_nodes()
    gap = float(np.sum(np.abs(evaluate(pts) - pc.evaluate(pts)) * wts[None, :]))
    return evaluate, gap


# ---------------------------------------------------------------------------
# Adjoint pairings: embedded fields against smooth test functions.
#
# The embedded sides integrate exact field evaluations on a refined Gauss
# grid (embedded profiles are piecewise smooth on any refinement of their own
# lattice); the lattice sides use closed-form cell averages of the cosine
# test functions.  The two computations share nothing, so agreement is a real
# consistency check.
# ---------------------------------------------------------------------------


def _quad_grid(grid: TorusGrid, qgrid, refine: int = 4) -> TorusGrid:
    return qgrid if qgrid is not None else TorusGrid(grid.d, refine * grid.N)


def pair_embedded_cells(grid, values, phis, qgrid=None) -> float:
    """integral of sum_i (embedded values)_i * phi_i  over the torus."""
    pts, wts = _quad_grid(grid, qgrid).quad_nodes()
    field = embed_pc(grid, values).evaluate(pts)
    phi_vals = np.stack([p(pts) for p in phis])
    return float(np.sum(field * phi_vals * wts[None, :]))


def pair_embedded_diff(grid, F, phis, qgrid=None) -> float:
    """integral of sum_{i,e} f_{i,e} * d_e phi_i  (test-function gradients)."""
    pts, wts = _quad_grid(grid, qgrid).quad_nodes()
    f_vals = embed_flux_diff(grid, F).evaluate(pts)
    grads = np.stack([p.gradient(pts).T for p in phis])  # (I, d, P)
    return float(np.sum(f_vals * grads * wts[None, None, :]))


def pair_embedded_react(grid, net, J, phis, qgrid=None) -> float:
    """integral of sum_r j_r * (gamma_r . phi)."""
    pts, wts = _quad_grid(grid, qgrid).quad_nodes()
    j_vals = embed_flux_react(grid, J).evaluate(pts)
    phi_vals = np.stack([p(pts) for p in phis])  # (I, P)
    lifted = net.gamma @ phi_vals  # (R, P)
    return float(np.sum(j_vals * lifted * wts[None, :]))


def discrete_pairings(grid, net, c, F, J, phis):
    """The lattice sides of the three adjoint identities, as a dict.

    Cosine test functions are averaged per cell in closed form; anything else
    falls back to the Gauss-quadrature discretization.
    """
    if all(hasattr(p, "exact_cell_averages") for p in phis):
        phi_cells = np.stack([p.exact_cell_averages(grid.N, grid.d) for p in phis])
    else:
        phi_cells = discretize(grid, phis)
    return {
        "cells": pair_cells(grid, c, phi_cells),
        "diff": pair_edges(grid, F, disc_gradient(grid, phi_cells)),
        "react": pair_react(grid, J, gamma_lift(net, phi_cells)),
    }
