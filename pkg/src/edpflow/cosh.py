"""Scalar convex-duality kernel around the cosh dissipation pair.

The dual density is cstar(sigma) = 4*cosh(sigma/2) - 4 and its Legendre
conjugate has the closed form

    c_of_s(s) = 2*s*arcsinh(s/2) - 2*sqrt(s^2 + 4) + 4.

Alongside the pair live the perspective extension perspective(s, w) =
w*c_of_s(s/w) (with the chi_0 limit at w = 0), the Boltzmann function,
a brute-force Legendre oracle used to cross-check the closed forms, and
the superlinear infimal convolution of two superlinear functions.

All functions accept scalars or numpy arrays and are pure; they can be
called concurrently without shared state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import xlogy

#: Default brute-force conjugation grid: the maximizer of sigma*s - cstar(sigma)
#: is 2*arcsinh(s/2) < 8 for |s| <= 50, so [-60, 60] is a generous bracket.
LEGENDRE_GRID = np.linspace(-60.0, 60.0, 200_000)

# w below this threshold is treated as the w=0 (chi_0) limit of the
# perspective function to avoid s/w overflowing to inf*0 = nan.
_TINY_W = 1e-300


@dataclass(frozen=True)
class ScalarFn:
    """Evaluation rule plus optional derivative, both vectorized."""

    fn: Callable[[np.ndarray], np.ndarray]
    derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, x):
        return self.fn(x)


def cstar(sigma):
    """4*cosh(sigma/2) - 4; even, convex, zero at zero.

    Overflows saturate to +inf, which is a legal extended value here.
    """
    sigma = np.asarray(sigma, dtype=float)
    with np.errstate(over="ignore"):
        return 4.0 * np.cosh(sigma / 2.0) - 4.0


def cstar_prime(sigma):
    """Derivative 2*sinh(sigma/2) of cstar."""
    sigma = np.asarray(sigma, dtype=float)
    with np.errstate(over="ignore"):
        return 2.0 * np.sinh(sigma / 2.0)


def c_of_s(s):
    """Legendre conjugate of cstar: 2*s*arcsinh(s/2) - 2*sqrt(s^2+4) + 4.

    np.arcsinh and np.hypot keep the formula stable far beyond |s| = 1e150.
    """
    s = np.asarray(s, dtype=float)
    return 2.0 * s * np.arcsinh(s / 2.0) - 2.0 * np.hypot(s, 2.0) + 4.0


def c_prime(s):
    """Derivative 2*arcsinh(s/2) of c_of_s; odd and increasing."""
    s = np.asarray(s, dtype=float)
    return 2.0 * np.arcsinh(s / 2.0)


def perspective(s, w):
    """Perspective extension: w*c_of_s(s/w) for w>0, chi_0(s) for w=0.

    chi_0 is 0 at s=0 and +inf otherwise; jointly convex in (s, w).
    Raises for negative w.
    """
    s = np.asarray(s, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("perspective requires w >= 0")
    tiny = w < _TINY_W
    safe_w = np.where(tiny, 1.0, w)
    with np.errstate(invalid="ignore", over="ignore"):
        val = safe_w * c_of_s(s / safe_w)
    limit = np.where(s == 0.0, 0.0, np.inf)
    out = np.where(tiny, limit, val)
    return out if out.ndim else float(out)


def perspective_dw(s, w):
    """d/dw of the perspective function: 4 - 2*sqrt((s/w)^2 + 4) <= 0."""
    s = np.asarray(s, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise ValueError("perspective_dw requires w > 0")
    return 4.0 - 2.0 * np.hypot(s / w, 2.0)


def boltzmann_lambda(r):
    """Boltzmann function r*log(r) - r + 1, continuously extended by 1 at r=0."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("boltzmann_lambda requires r >= 0")
    out = xlogy(r, r) - r + 1.0
    return out if out.ndim else float(out)


def b_pairing(a, s):
    """Pairing s*log(a) for a>0 and 0 for a=0 (regardless of s)."""
    a = np.asarray(a, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(a < 0):
        raise ValueError("b_pairing requires a >= 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(a > 0, s * np.log(np.where(a > 0, a, 1.0)), 0.0)
    return out if out.ndim else float(out)


def legendre_oracle(f, s: float, grid: Optional[np.ndarray] = None) -> float:
    """Brute-force conjugate sup_sigma (sigma*s - f(sigma)) over a finite grid.

    Always a lower bound on the true conjugate; with the default grid it is
    accurate to ~1e-6 for the cosh pair on |s| <= 50.
    """
    g = LEGENDRE_GRID if grid is None else np.asarray(grid, dtype=float)
    if g.size == 0:
        raise ValueError("legendre_oracle requires a non-empty grid")
    return float(np.max(g * s - f(g)))


def xi_superlinear(phi, psi, s: float, *, log_w_bracket=(-16.0, 16.0), tol=1e-10) -> float:
    """inf_{w>0} ( w*phi(s/w) + psi(w) ) by golden-section in log(w).

    Requirements on the inputs: phi even, superlinear, with s*phi'(s) >= phi(s)
    (so w -> w*phi(s/w) is non-increasing); psi non-decreasing, superlinear,
    psi(0+) = 0.  Under these the objective is unimodal in w and the result is
    even in s and non-decreasing in |s|.
    """
    s = float(s)
    if s == 0.0:
        # w -> 0+ limit: w*phi(0) -> 0 and psi(0+) = 0.
        return 0.0

    def objective(t: float) -> float:
        w = np.exp(t)
        return float(w * phi(s / w) + psi(w))

    lo, hi = map(float, log_w_bracket)
    # Coarse scan to certify an interior bracket before refining.
    ts = np.linspace(lo, hi, 65)
    vals = np.array([objective(t) for t in ts])
    imin = int(np.argmin(vals))
    if imin == 0 or imin == len(ts) - 1:
        raise ArithmeticError(
            "xi_superlinear: no interior minimum in w-bracket "
            f"[{np.exp(lo):.3e}, {np.exp(hi):.3e}] for s={s!r}; "
            f"edge values {vals[0]!r}, {vals[-1]!r}"
        )
    a, b = ts[imin - 1], ts[imin + 1]
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = objective(c), objective(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = objective(d)
    return objective(0.5 * (a + b))


#: Ready-made ScalarFn handles for the duality oracles.
CSTAR = ScalarFn(cstar, cstar_prime)
C = ScalarFn(c_of_s, c_prime)
