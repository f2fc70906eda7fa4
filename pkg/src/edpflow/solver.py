"""Positivity-preserving time integration of the lattice reaction-diffusion ODE.

Schemes: explicit-euler, rk4 (default), implicit-euler (damped Newton with an
analytic Jacobian; intended for stiff, large-N runs).  Positivity is enforced
by reject-and-halve on the step size rather than clipping, which would break
conservation laws and the energy-dissipation accounting.

All time-discretization choices here (schemes, step policies, tolerances) are
artifact decisions; the modelled system itself is a continuous-time ODE.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import kernels
from .functionals import FunctionalReport, constitutive_fluxes, evaluate_report
from .grid import TorusGrid, reference_weights
from .network import ReactionNetwork

SCHEMES = ("explicit-euler", "rk4", "implicit-euler")

DT_FLOOR = 1e-12
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50


class SolverError(RuntimeError):
    pass


class DtUnderflowError(SolverError):
    pass


class NewtonError(SolverError):
    pass


@dataclass
class Trajectory:
    """Time-sampled states, constitutive fluxes and functional evaluations."""

    grid: TorusGrid
    network: ReactionNetwork
    weights: np.ndarray  # (I, M) reference cell averages
    times: np.ndarray  # (S,)
    states: np.ndarray  # (S, I, M)
    flux_diff: np.ndarray  # (S, I, d, M)
    flux_react: np.ndarray  # (S, R, M)
    reports: list[FunctionalReport]
    meta: dict = field(default_factory=dict)

    def energies(self) -> np.ndarray:
        return np.array([r.energy for r in self.reports])

    def dissipation_rates(self) -> np.ndarray:
        return np.array([r.dissipation_rate for r in self.reports])


def rhs(grid: TorusGrid, net: ReactionNetwork, w: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Adjoint of the constitutive fluxes; vanishes exactly at c = w."""
    return kernels.rhs(
        np.ascontiguousarray(c, dtype=float),
        w,
        net.diffusion,
        net.kappa,
        net.alpha,
        net.beta,
        net.gamma,
        grid.nbr_fwd,
        grid.nbr_bwd,
        float(grid.N) ** 2,
    )


def default_dt(grid: TorusGrid, net: ReactionNetwork, w: np.ndarray, c0: np.ndarray) -> float:
    """0.2 / (diffusive stiffness + crude reaction Lipschitz bound).

    The diffusive part 2*d*N^2*max(delta) dominates at large N; the reaction
    bound uses kappa, the current max of c/w and the monomial degrees.
    """
    stiff_diff = 2.0 * grid.d * float(grid.N) ** 2 * float(np.max(net.diffusion))
    lip = 0.0
    if net.reactions:
        m = max(1.0, float(np.max(c0 / w)))
        wmax = max(1.0, float(np.max(w)))
        for r in range(net.reactions):
            deg_a = float(np.sum(net.alpha[r]))
            deg_b = float(np.sum(net.beta[r]))
            p = max(deg_a, deg_b)
            whalf = wmax ** (0.5 * (deg_a + deg_b))
            lip += float(net.kappa[r]) * (deg_a + deg_b) * whalf * m ** max(p - 1.0, 0.0)
        lip *= float(np.max(np.abs(net.gamma)))
    return 0.2 / (stiff_diff + lip)


def _diffusion_matrix(grid: TorusGrid, net: ReactionNetwork, w: np.ndarray) -> sp.csr_matrix:
    """Sparse linear operator of the diffusive part, block-diagonal in species."""
    m, d = grid.M, grid.d
    blocks = []
    for i in range(net.species):
        wi = w[i]
        rows, cols, vals = [], [], []
        delta_n2 = net.diffusion[i] * float(grid.N) ** 2
        for e in range(d):
            kp = grid.nbr_fwd[e]
            km = grid.nbr_bwd[e]
            g_fwd = delta_n2 * np.sqrt(wi * wi[kp])
            g_bwd = delta_n2 * np.sqrt(wi * wi[km])
            k = np.arange(m)
            rows += [k, k, k]
            cols += [kp, km, k]
            vals += [g_fwd / wi[kp], g_bwd / wi[km], -(g_fwd + g_bwd) / wi]
        blocks.append(
            sp.coo_matrix(
                (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                shape=(m, m),
            )
        )
    return sp.block_diag(blocks, format="csr")


def _reaction_jacobian(grid: TorusGrid, net: ReactionNetwork, w: np.ndarray, c: np.ndarray):
    """Jacobian of the reaction part: block-diagonal over cells, dense in species.

    Concentrations are floored at 1e-30 in the derivative only; the Newton
    residual stays exact, an inexact Jacobian merely slows convergence.
    """
    if not net.reactions:
        return sp.csr_matrix((net.species * grid.M, net.species * grid.M))
    m = grid.M
    u = c / w
    cf = np.maximum(c, 1e-30)
    expo = 0.5 * (net.alpha + net.beta)
    wm = np.prod(w[None, :, :] ** expo[:, :, None], axis=1)  # (R, M)
    ua = np.prod(u[None, :, :] ** net.alpha[:, :, None], axis=1)
    ub = np.prod(u[None, :, :] ** net.beta[:, :, None], axis=1)
    # dJ[r]/dc[j] = kappa_r wm * (beta_j ub - alpha_j ua) / c_j
    dj = (
        net.kappa[:, None, None]
        * wm[:, None, :]
        * (net.beta[:, :, None] * ub[:, None, :] - net.alpha[:, :, None] * ua[:, None, :])
        / cf[None, :, :]
    )  # (R, J, M)
    block = np.einsum("ri,rjm->ijm", net.gamma, dj)  # (I, J, M)
    ns = net.species
    k = np.arange(m)
    rows = (np.arange(ns)[:, None, None] * m + k).repeat(ns, axis=1)
    cols = np.broadcast_to((np.arange(ns)[None, :, None] * m + k), (ns, ns, m))
    return sp.coo_matrix(
        (block.ravel(), (rows.ravel(), cols.ravel())),
        shape=(ns * m, ns * m),
    ).tocsr()


def _implicit_euler_step(grid, net, w, c, dt, lmat):
    """Solve x = c + dt*f(x) by damped Newton, residual tolerance 1e-12."""
    ns, m = c.shape
    x = c.copy()
    scale = 1.0 + float(np.max(np.abs(c)))
    gx = x - c - dt * rhs(grid, net, w, x)
    for _ in range(NEWTON_MAX_ITER):
        norm = float(np.max(np.abs(gx)))
        if norm <= NEWTON_TOL * scale:
            return x
        jac = sp.identity(ns * m, format="csr") - dt * (
            lmat + _reaction_jacobian(grid, net, w, x)
        )
        delta = spla.spsolve(jac.tocsc(), -gx.ravel()).reshape(ns, m)
        alpha = 1.0
        while alpha > 1e-6:
            x_new = x + alpha * delta
            g_new = x_new - c - dt * rhs(grid, net, w, x_new)
            if np.all(np.isfinite(g_new)) and float(np.max(np.abs(g_new))) <= (1 - 0.5 * alpha) * norm:
                break
            alpha *= 0.5
        else:
            raise NewtonError(f"implicit step stalled at residual {norm:.3e}")
        x, gx = x_new, g_new
    norm = float(np.max(np.abs(gx)))
    if norm <= NEWTON_TOL * scale:
        return x
    raise NewtonError(f"no Newton convergence after {NEWTON_MAX_ITER} iterations (residual {norm:.3e})")


def step(grid, net, w, c, dt, scheme="rk4", _lmat=None):
    """One step of the named scheme from state c; no positivity policing here."""
    if scheme == "explicit-euler":
        return c + dt * rhs(grid, net, w, c)
    if scheme == "rk4":
        k1 = rhs(grid, net, w, c)
        k2 = rhs(grid, net, w, c + 0.5 * dt * k1)
        k3 = rhs(grid, net, w, c + 0.5 * dt * k2)
        k4 = rhs(grid, net, w, c + dt * k3)
        return c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if scheme == "implicit-euler":
        lmat = _diffusion_matrix(grid, net, w) if _lmat is None else _lmat
        return _implicit_euler_step(grid, net, w, c, dt, lmat)
    raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")


def integrate(
    grid: TorusGrid,
    net: ReactionNetwork,
    c0: np.ndarray,
    T: float,
    *,
    scheme: str = "rk4",
    dt: float | None = None,
    sample_dt: float | None = None,
    w: np.ndarray | None = None,
) -> Trajectory:
    """Advance c0 over [0, T], sampling states, fluxes and functionals.

    Any step producing a negative or non-finite component is rejected and the
    step size halved (it stays halved); below the 1e-12 floor integration
    aborts.  Samples sit on an equispaced lattice covering [0, T] (sample_dt
    is snapped to the nearest divisor of T).
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")
    c0 = np.asarray(c0, dtype=float)
    if c0.shape != (net.species, grid.M):
        raise ValueError(
            f"initial state has shape {c0.shape}, expected {(net.species, grid.M)}"
        )
    if np.any(c0 < 0):
        raise ValueError("initial state must be non-negative")
    if w is None:
        w = reference_weights(grid, net)
    c = np.array(c0, dtype=float)
    if sample_dt is None:
        sample_dt = T / 100.0
    n_samples = max(1, round(T / sample_dt))
    times = np.linspace(0.0, T, n_samples + 1)
    dt0 = default_dt(grid, net, w, c0) if dt is None else float(dt)
    policy = "auto:0.2/(2dN^2 max(delta) + Lip_react)" if dt is None else f"fixed:{dt0:g}"

    lmat = _diffusion_matrix(grid, net, w) if scheme == "implicit-euler" else None
    states = np.empty((n_samples + 1,) + c.shape)
    flux_diff = np.empty((n_samples + 1, net.species, grid.d, grid.M))
    flux_react = np.empty((n_samples + 1, net.reactions, grid.M))
    reports: list[FunctionalReport] = []

    def record(idx, state):
        states[idx] = state
        fd, fr = constitutive_fluxes(grid, net, state, w)
        flux_diff[idx], flux_react[idx] = fd, fr
        reports.append(evaluate_report(grid, net, state, w, F=fd, J=fr))

    record(0, c)
    cur_dt = dt0
    if cur_dt < DT_FLOOR:
        raise DtUnderflowError(
            f"step size {cur_dt:g} below the floor {DT_FLOOR:g} before the first step"
        )
    n_steps = 0
    n_rejections = 0
    for m in range(1, n_samples + 1):
        t = times[m - 1]
        t_end = times[m]
        while t < t_end - 1e-14 * T:
            h = min(cur_dt, t_end - t)
            c_try = step(grid, net, w, c, h, scheme, _lmat=lmat)
            if not np.all(np.isfinite(c_try)) or np.any(c_try < 0):
                n_rejections += 1
                cur_dt *= 0.5
                if cur_dt < DT_FLOOR:
                    raise DtUnderflowError(
                        f"step size underflow at t={t:.6g} (floor {DT_FLOOR:g})"
                    )
                continue
            c = c_try
            t += h
            n_steps += 1
        record(m, c)

    meta = {
        "scheme": scheme,
        "dt_policy": policy,
        "dt_initial": dt0,
        "dt_final": cur_dt,
        "sample_dt": float(times[1] - times[0]) if n_samples else T,
        "n_steps": n_steps,
        "n_rejections": n_rejections,
    }
    return Trajectory(grid, net, w, times, states, flux_diff, flux_react, reports, meta)


@dataclass(frozen=True)
class BoxReport:
    inside: bool
    first_violation: tuple[int, int, int, float] | None  # (sample, species, cell, value)
    max_exceedance: float


def bounding_box_check(traj: Trajectory, box) -> BoxReport:
    """Check every sample against per-species intervals [lo_i, hi_i].

    box: array-like of shape (species, 2).  Useful for exchange-type systems,
    where rectangles containing the initial data and the reference state are
    positively invariant.
    """
    box = np.asarray(box, dtype=float)
    lo = box[:, 0][None, :, None]
    hi = box[:, 1][None, :, None]
    below = lo - traj.states
    above = traj.states - hi
    exceed = np.maximum(below, above)
    worst = float(np.max(exceed))
    if worst <= 0:
        return BoxReport(True, None, worst)
    s, i, k = np.unravel_index(int(np.argmax(exceed)), exceed.shape)
    return BoxReport(False, (int(s), int(i), int(k), float(traj.states[s, i, k])), worst)
