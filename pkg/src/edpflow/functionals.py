"""Discrete gradient-structure functionals on the torus lattice.

Everything here is a plain (1/N^d)-weighted reduction over cells, edges and
reactions: the relative entropy, the dual and primal dissipation potentials,
the relaxed slope, the constitutive fluxes, the b-pairing rate, the
Fenchel-equality gap, and the balance residuals evaluated along recorded
trajectories.  Reductions use numpy sums in a fixed order, so results are
deterministic run to run.

Sign conventions.  The diffusive flux

    F[i,e,k] = delta_i N^2 sqrt(w_k w_{k+e}) (c_k/w_k - c_{k+e}/w_{k+e})

and reactive flux

    J[r,k] = kappa_r w_k^((alpha+beta)/2) ((c/w)^beta - (c/w)^alpha)

are oriented so ce_adjoint(F, J) is the right-hand side of the evolution
(diffusion smooths, reactions relax toward c = w), and along these fluxes

    b_rate(c, ce_adjoint(F, J)) = -(dissipation + slope),

so fenchel_gap := R + S + B vanishes exactly there and is positive for any
other admissible flux pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .cosh import b_pairing, boltzmann_lambda, cstar, perspective
from .grid import TorusGrid, ce_adjoint, l1_cells
from .network import ReactionNetwork

_trapz = getattr(np, "trapezoid", None) or np.trapz


@dataclass(frozen=True)
class FunctionalReport:
    """Pointwise-in-time functional values along a trajectory sample."""

    energy: float
    r_diff: float
    r_react: float
    s_diff: float
    s_react: float

    @property
    def dissipation_rate(self) -> float:
        return self.r_diff + self.r_react + self.s_diff + self.s_react


def energy(grid: TorusGrid, c: np.ndarray, w: np.ndarray) -> float:
    """Relative entropy (1/N^d) sum lambda_B(c/w) * w; zero iff c == w."""
    if np.any(c < 0):
        raise ValueError("energy requires c >= 0")
    return float(np.sum(boltzmann_lambda(c / w) * w) / grid.M)


def _edge_weights(grid: TorusGrid, net: ReactionNetwork, c: np.ndarray) -> np.ndarray:
    """N^2 delta_i sqrt(c_k c_{k+e}) per edge."""
    n2 = float(grid.N) ** 2
    return net.diffusion[:, None, None] * n2 * np.sqrt(c[:, None, :] * c[:, grid.nbr_fwd])


def _react_weights(net: ReactionNetwork, c: np.ndarray) -> np.ndarray:
    """kappa_r c_k^((alpha+beta)/2) per reaction and cell."""
    expo = 0.5 * (net.alpha + net.beta)
    mono = np.prod(c[None, :, :] ** expo[:, :, None], axis=1)
    return net.kappa[:, None] * mono


def dual_dissipation(grid, net, c, xi, zeta) -> float:
    """Cosh dual dissipation with mobility weights sqrt(c_k c_{k+e}) and
    sqrt(c^alpha c^beta); finite for any bounded potentials."""
    diff = np.sum(_edge_weights(grid, net, c) * cstar(xi))
    react = np.sum(_react_weights(net, c) * cstar(zeta)) if net.reactions else 0.0
    return float((diff + react) / grid.M)


def primal_dissipation(grid, net, c, F, J) -> float:
    """Perspective-function primal dissipation; +inf when a flux runs over a
    zero-mobility edge or cell."""
    diff = np.sum(perspective(np.asarray(F, dtype=float), _edge_weights(grid, net, c)))
    react = (
        np.sum(perspective(np.asarray(J, dtype=float), _react_weights(net, c)))
        if net.reactions
        else 0.0
    )
    return float((diff + react) / grid.M)


def slope(grid, net, c, w) -> tuple[float, float]:
    """Relaxed slope (diffusive, reactive); defined for any c >= 0."""
    if np.any(c < 0):
        raise ValueError("slope requires c >= 0")
    n2 = float(grid.N) ** 2
    u_sqrt = np.sqrt(c / w)
    wgeo = np.sqrt(w[:, None, :] * w[:, grid.nbr_fwd])
    s_diff = np.sum(
        2.0 * net.diffusion[:, None, None] * n2 * wgeo
        * (u_sqrt[:, grid.nbr_fwd] - u_sqrt[:, None, :]) ** 2
    )
    s_react = 0.0
    if net.reactions:
        half = 0.5 * (net.alpha + net.beta)
        wmono = np.prod(w[None, :, :] ** half[:, :, None], axis=1)
        ua = np.prod(u_sqrt[None, :, :] ** net.alpha[:, :, None], axis=1)
        ub = np.prod(u_sqrt[None, :, :] ** net.beta[:, :, None], axis=1)
        s_react = np.sum(2.0 * net.kappa[:, None] * wmono * (ua - ub) ** 2)
    return float(s_diff / grid.M), float(s_react / grid.M)


def constitutive_fluxes(grid, net, c, w) -> tuple[np.ndarray, np.ndarray]:
    """Fluxes for which the evolution equation and the Fenchel equality hold."""
    n2 = float(grid.N) ** 2
    F = kernels.diffusive_flux(c, w, net.diffusion, grid.nbr_fwd, n2)
    J = kernels.reactive_flux(c, w, net.kappa, net.alpha, net.beta)
    return F, J


def b_rate(grid: TorusGrid, c, v, w) -> float:
    """(1/N^d) sum b(c/w, v) with b(a, s) = s log a for a > 0 and 0 at a = 0.

    Carries the same 1/N^d weight as the energy so that d/dt energy = b_rate
    along differentiable curves.
    """
    return float(np.sum(b_pairing(c / w, v)) / grid.M)


def evaluate_report(grid, net, c, w, F=None, J=None) -> FunctionalReport:
    """Functional snapshot of a state; fluxes default to the constitutive ones."""
    s_diff, s_react = slope(grid, net, c, w)
    if F is None or J is None:
        F, J = constitutive_fluxes(grid, net, c, w)
    ew = _edge_weights(grid, net, c)
    r_diff = float(np.sum(perspective(np.asarray(F, dtype=float), ew)) / grid.M)
    r_react = (
        float(np.sum(perspective(np.asarray(J, dtype=float), _react_weights(net, c))) / grid.M)
        if net.reactions
        else 0.0
    )
    return FunctionalReport(
        energy=energy(grid, c, w), r_diff=r_diff, r_react=r_react, s_diff=s_diff, s_react=s_react
    )


class FenchelPreconditionError(ValueError):
    pass


def fenchel_gap(grid, net, c, F, J, w) -> float:
    """R + S + B(c, ce_adjoint(F, J)): non-negative, zero iff (F, J) are the
    constitutive fluxes.

    Precondition: wherever c[i,k] = 0 the adjoint must vanish there, otherwise
    the b-pairing drops a -inf * 0 term and the bound is meaningless.
    """
    v = ce_adjoint(grid, net, F, J)
    bad = (c == 0) & (np.abs(v) > 1e-12 * (1.0 + np.max(np.abs(v))))
    if np.any(bad):
        i, k = np.argwhere(bad)[0]
        raise FenchelPreconditionError(
            f"zero concentration with nonzero flux divergence at species {i}, cell {k}"
        )
    r = primal_dissipation(grid, net, c, F, J)
    s_diff, s_react = slope(grid, net, c, w)
    return r + s_diff + s_react + b_rate(grid, c, v, w)


def _require_span(traj, s: float, t: float) -> tuple[int, int]:
    times = traj.times
    if not (s < t):
        raise ValueError("need s < t")
    if s < times[0] - 1e-12 or t > times[-1] + 1e-12:
        raise ValueError(f"[{s}, {t}] outside trajectory span [{times[0]}, {times[-1]}]")
    i = int(np.argmin(np.abs(times - s)))
    j = int(np.argmin(np.abs(times - t)))
    if i == j:
        raise ValueError("s and t resolve to the same sample")
    return i, j


def edb_residual(traj, s: float, t: float) -> float:
    """Energy-dissipation balance over [s, t]:

        E(t) - E(s) + integral of (R + S)

    with the time integral by composite trapezoid over the stored samples.
    Zero (up to time-quadrature error) exactly along solutions; positive for
    any other flux choice satisfying the continuity equation.
    """
    i, j = _require_span(traj, s, t)
    rates = np.array([rep.dissipation_rate for rep in traj.reports[i : j + 1]])
    quad = float(_trapz(rates, traj.times[i : j + 1]))
    return traj.reports[j].energy - traj.reports[i].energy + quad


def ce_residual(traj) -> float:
    """Worst continuity-equation defect over interior samples:

        max_m | (c_{m+1} - c_{m-1}) / (2h) - ce_adjoint(F_m, J_m) |

    in the (1/N^d)-weighted 1-norm.  Second order in the sample spacing for
    solver output with stored constitutive fluxes.
    """
    if len(traj.times) < 3:
        raise ValueError("ce_residual needs at least 3 samples")
    grid, net = traj.grid, traj.network
    worst = 0.0
    for m in range(1, len(traj.times) - 1):
        h2 = traj.times[m + 1] - traj.times[m - 1]
        dc = (traj.states[m + 1] - traj.states[m - 1]) / h2
        defect = dc - ce_adjoint(grid, net, traj.flux_diff[m], traj.flux_react[m])
        worst = max(worst, l1_cells(grid, defect))
    return worst
