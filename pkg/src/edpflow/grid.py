"""Torus lattice Z^d_N: indexing, discrete calculus, quadrature, discretization.

Field conventions (dense float64 arrays, row-major cell order):

    cell fields   (n_comp, M)        one value per cell, M = N^d
    edge fields   (n_comp, d, M)     forward edges only: [i, e, k] lives on
                                     the edge from cell k to its +e neighbor
    react fields  (n_reactions, M)

All discrete pairings carry the 1/N^d cell weight.  Cells are the half-open
cubes [k/N, (k+1)/N)^d; points on a cell boundary resolve to the lower cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .network import ReactionNetwork

GAUSS_ORDER = 5
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


@dataclass(frozen=True)
class TorusGrid:
    """Uniform periodic lattice with N cells per axis in d <= 3 dimensions."""

    d: int
    N: int
    nbr_fwd: np.ndarray = field(init=False, repr=False, compare=False)
    nbr_bwd: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.d <= 3:
            raise ValueError("grid dimension must be 1, 2 or 3")
        if self.N < 1:
            raise ValueError("grid resolution must be >= 1")
        cells = np.arange(self.M).reshape(self.shape)
        fwd = np.stack([np.roll(cells, -1, axis=l).ravel() for l in range(self.d)])
        bwd = np.stack([np.roll(cells, +1, axis=l).ravel() for l in range(self.d)])
        object.__setattr__(self, "nbr_fwd", fwd)
        object.__setattr__(self, "nbr_bwd", bwd)

    @property
    def M(self) -> int:
        return self.N**self.d

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.d

    @property
    def cell_volume(self) -> float:
        return 1.0 / self.M

    def locate(self, x: np.ndarray):
        """Map points (P, d) to flat cell indices (P,) and fractions (P, d)."""
        x = np.asarray(x, dtype=float) % 1.0
        scaled = x * self.N
        j = np.minimum(scaled.astype(np.int64), self.N - 1)
        frac = scaled - j
        flat = j[..., 0]
        for l in range(1, self.d):
            flat = flat * self.N + j[..., l]
        return flat, frac, j

    def cell_quad(self):
        """Nodes grouped per cell: points (M, Q^d, d) and unit weights (Q^d,).

        The weights sum to 1, so (values @ weights) is a cell average.
        """
        from .expr import cell_centers

        centers = cell_centers(self.N, self.d)
        axis_off = 0.5 * _GL_NODES / self.N
        grids = np.meshgrid(*[axis_off] * self.d, indexing="ij")
        offs = np.stack([g.ravel() for g in grids], axis=-1)
        pts = centers[:, None, :] + offs[None, :, :]
        w = _GL_WEIGHTS / 2.0
        for _ in range(self.d - 1):
            w = np.multiply.outer(w, _GL_WEIGHTS / 2.0).ravel()
        return pts, w / w.sum()

    def quad_nodes(self):
        """All quadrature nodes: points (M*Q^d, d) and weights summing to 1."""
        pts, w = self.cell_quad()
        return pts.reshape(-1, self.d), np.tile(w, self.M) / self.M


def disc_gradient(grid: TorusGrid, phi: np.ndarray) -> np.ndarray:
    """Forward difference per edge with periodic wrap: (phi_{k+e} - phi_k)."""
    phi = np.asarray(phi, dtype=float)
    return phi[..., grid.nbr_fwd] - phi[..., None, :]


def gamma_lift(net: ReactionNetwork, phi: np.ndarray) -> np.ndarray:
    """Per-cell stoichiometric lift: (gamma_r . phi_k) for each reaction r."""
    return net.gamma @ phi


def ce_adjoint(grid: TorusGrid, net: ReactionNetwork, F: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Adjoint of (disc_gradient, gamma_lift): minus discrete divergence plus
    stoichiometric redistribution.

    Satisfies <disc_gradient(phi), F>_N + <gamma_lift(phi), J>_N
            = <phi, ce_adjoint(F, J)>_N to round-off.
    """
    F = np.asarray(F, dtype=float)
    J = np.asarray(J, dtype=float)
    ax = np.arange(grid.d)[:, None]
    div = (F[..., ax, grid.nbr_bwd] - F).sum(axis=-2)
    return div + net.gamma.T @ J


def pair_cells(grid: TorusGrid, a: np.ndarray, b: np.ndarray) -> float:
    """(1/N^d)-weighted inner product of cell fields."""
    return float(np.sum(a * b) / grid.M)


def pair_edges(grid: TorusGrid, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(a * b) / grid.M)


def pair_react(grid: TorusGrid, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(a * b) / grid.M)


def l1_cells(grid: TorusGrid, a: np.ndarray) -> float:
    """Weighted 1-norm (1/N^d) sum |a| over all components and cells."""
    return float(np.sum(np.abs(a)) / grid.M)


def discretize(grid: TorusGrid, profiles) -> np.ndarray:
    """Cell averages by order-5 tensor Gauss-Legendre quadrature per cell.

    Accepts one callable (returns shape (M,)) or a sequence (returns (n, M)).
    """
    single = callable(profiles)
    plist = [profiles] if single else list(profiles)
    pts, w = grid.cell_quad()  # (M, Q, d), (Q,)
    out = np.empty((len(plist), grid.M))
    # chunk cells so the flattened point array stays modest in d=3
    q = w.size
    chunk = max(1, 1_000_000 // q)
    for i, p in enumerate(plist):
        for lo in range(0, grid.M, chunk):
            hi = min(lo + chunk, grid.M)
            vals = p(pts[lo:hi].reshape(-1, grid.d)).reshape(hi - lo, q)
            out[i, lo:hi] = vals @ w
    return out[0] if single else out


def reference_weights(grid: TorusGrid, net: ReactionNetwork) -> np.ndarray:
    """Cell averages of the reference density; inherits its positive bounds."""
    w = discretize(grid, net.reference)
    if np.any(w <= 0) or not np.all(np.isfinite(w)):
        i, k = np.argwhere(~(w > 0))[0]
        raise ValueError(f"reference density cell average is not positive at species {i}, cell {k}")
    return w
