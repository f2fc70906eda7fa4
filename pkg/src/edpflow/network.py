"""Static problem definition: species, reactions, coefficients, reference density.

A network bundles stoichiometric vectors (alpha, beta) with rate constants
kappa (already in symmetric detailed-balance form), diffusion coefficients,
and the positive reference density per species.  Instances are immutable
after validation and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .expr import CosineProfile, constant, profile_from_json, profile_to_json


class NetworkError(ValueError):
    pass


class DetailedBalanceError(NetworkError):
    def __init__(self, lhs: float, rhs: float):
        self.lhs, self.rhs = lhs, rhs
        super().__init__(
            f"detailed balance violated: k_fw*omega^alpha = {lhs!r} "
            f"!= k_bw*omega^beta = {rhs!r}"
        )


@dataclass(frozen=True)
class ReactionNetwork:
    species: int
    alpha: np.ndarray  # (reactions, species) >= 0
    beta: np.ndarray  # (reactions, species) >= 0
    kappa: np.ndarray  # (reactions,) > 0
    diffusion: np.ndarray  # (species,) > 0
    reference: tuple[CosineProfile, ...]  # one positive profile per species

    @property
    def reactions(self) -> int:
        return self.alpha.shape[0]

    @property
    def gamma(self) -> np.ndarray:
        """Net stoichiometry alpha - beta, one row per reaction."""
        return self.alpha - self.beta

    def conservation_basis(self) -> list[np.ndarray]:
        return conservation_laws(self.gamma)


def make_network(species, reactions, diffusion, reference) -> ReactionNetwork:
    """Build a network from plain sequences.

    reactions: iterable of (alpha, beta, kappa) triples.
    reference: per-species constants or CosineProfile instances.
    """
    rs = list(reactions)
    alpha = np.array([np.asarray(a, dtype=float) for a, _, _ in rs], dtype=float)
    beta = np.array([np.asarray(b, dtype=float) for _, b, _ in rs], dtype=float)
    kappa = np.array([float(k) for _, _, k in rs], dtype=float)
    if not rs:
        alpha = np.zeros((0, species))
        beta = np.zeros((0, species))
        kappa = np.zeros((0,))
    ref = tuple(
        p if isinstance(p, CosineProfile) else constant(float(p)) for p in reference
    )
    net = ReactionNetwork(
        species=int(species),
        alpha=alpha,
        beta=beta,
        kappa=kappa,
        diffusion=np.asarray(diffusion, dtype=float),
        reference=ref,
    )
    report = validate_network(net)
    if not report.valid:
        raise NetworkError("; ".join(report.violations))
    return net


@dataclass
class ValidationReport:
    valid: bool
    violations: list[str] = field(default_factory=list)
    # Informational growth flags per dimension d: {d: (a1_holds, a2_holds)}
    growth_flags: dict[int, tuple[bool, bool]] = field(default_factory=dict)

    def p_crit(self, d: int) -> float:
        return 1.0 + 2.0 / d


def validate_network(net: ReactionNetwork, dims=(1, 2, 3)) -> ValidationReport:
    """Check hard invariants; report growth conditions as informational flags.

    Hard requirements: kappa > 0, diffusion > 0, alpha/beta componentwise >= 0,
    shapes consistent, reference density positive (checked on a sample grid).
    The growth flags record, per dimension d, whether
    (a1)  |alpha + beta|_1 / 2 <= 1 + 2/d          for every reaction, and
    (a2)  |alpha|_1 <= 1 + 2/d and |beta|_1 <= 1 + 2/d  additionally hold;
    they gate only the continuum-limit study, never the discrete machinery.
    """
    v: list[str] = []
    i_star = net.species
    if i_star < 1:
        v.append("species must be >= 1")
    for name, arr, cols in (("alpha", net.alpha, i_star), ("beta", net.beta, i_star)):
        if arr.ndim != 2 or arr.shape[1] != cols:
            v.append(f"{name} must have shape (reactions, {cols})")
        elif np.any(arr < 0):
            r, i = np.argwhere(arr < 0)[0]
            v.append(f"{name}[{r},{i}] = {arr[r, i]!r} is negative")
    if net.kappa.shape != (net.alpha.shape[0],):
        v.append("kappa must have one entry per reaction")
    elif np.any(net.kappa <= 0):
        r = int(np.argwhere(net.kappa <= 0)[0, 0])
        v.append(f"kappa[{r}] = {net.kappa[r]!r} is not positive")
    if net.diffusion.shape != (i_star,):
        v.append("diffusion must have one entry per species")
    elif np.any(net.diffusion <= 0):
        i = int(np.argwhere(net.diffusion <= 0)[0, 0])
        v.append(f"diffusion[{i}] = {net.diffusion[i]!r} is not positive")
    if len(net.reference) != i_star:
        v.append("reference density must have one profile per species")
    else:
        for i, prof in enumerate(net.reference):
            dp = len(prof.modes[0].freq) if prof.modes else 1
            rng = np.random.default_rng(0)
            pts = rng.random((512, dp))
            vals = prof(pts)
            if np.any(vals <= 0) or not np.all(np.isfinite(vals)):
                v.append(f"reference[{i}] is not positive on sampled points")

    flags: dict[int, tuple[bool, bool]] = {}
    a_l1 = np.abs(net.alpha).sum(axis=1) if net.reactions else np.zeros(0)
    b_l1 = np.abs(net.beta).sum(axis=1) if net.reactions else np.zeros(0)
    for d in dims:
        p = 1.0 + 2.0 / d
        a1 = bool(np.all(0.5 * (a_l1 + b_l1) <= p))
        a2 = a1 and bool(np.all(a_l1 <= p) and np.all(b_l1 <= p))
        flags[d] = (a1, a2)
    return ValidationReport(valid=not v, violations=v, growth_flags=flags)


def monomial(c, gamma) -> float:
    """prod_i c_i^gamma_i with the 0^0 = 1 convention (c, gamma >= 0)."""
    c = np.asarray(c, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    return float(np.prod(c**gamma))


def kappa_from_rates(k_fw, k_bw, omega, alpha, beta, rtol: float = 1e-10) -> float:
    """Symmetric rate constant from forward/backward rates at equilibrium omega.

    Requires detailed balance k_fw*omega^alpha == k_bw*omega^beta (relative
    tolerance rtol); returns kappa = k_fw*omega^alpha / omega^((alpha+beta)/2).
    """
    omega = np.asarray(omega, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    lhs = k_fw * monomial(omega, alpha)
    rhs = k_bw * monomial(omega, beta)
    if abs(lhs - rhs) > rtol * max(abs(lhs), abs(rhs)):
        raise DetailedBalanceError(lhs, rhs)
    return lhs / monomial(omega, (alpha + beta) / 2.0)


def _rational_nullspace(rows: list[list[Fraction]], n: int) -> list[np.ndarray]:
    """Exact right null space of the given rational matrix via RREF."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][col]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -mat[prow][fc]
        basis.append(_smallest_integer_vector(vec))
    return basis


def _smallest_integer_vector(vec: list[Fraction]) -> np.ndarray:
    denom_lcm = 1
    for x in vec:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    # Sign convention: first nonzero entry positive.
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return np.array(ints, dtype=float)


def conservation_laws(gamma: np.ndarray) -> list[np.ndarray]:
    """Basis of vectors q with q . gamma_r = 0 for every reaction r.

    Elimination runs over exact rationals (every float is an exact rational),
    so q . gamma_r vanishes exactly for the returned basis.  Vectors are
    scaled to smallest-integer form when possible.  An empty list means only
    the trivial law exists; with no reactions the standard basis is returned.
    """
    gamma = np.atleast_2d(np.asarray(gamma, dtype=float))
    n = gamma.shape[1]
    if gamma.shape[0] == 0 or not np.any(gamma):
        return [np.eye(n)[i] for i in range(n)]
    rows = [[Fraction(float(x)) for x in row] for row in gamma]
    return _rational_nullspace(rows, n)


def network_from_json(obj: dict, d: int = 1) -> ReactionNetwork:
    """Parse the scenario "network" object (d fixes profile mode lengths).

    Each reaction carries alpha, beta and either a symmetric constant kappa or
    a (k_fw, k_bw) pair, the latter being converted through the equilibrium
    values of the reference density (its torus means).
    """
    species = int(obj["species"])
    reference = [profile_from_json(p, d) for p in obj["reference_density"]]
    omega_mean = np.array([p.mean() for p in reference])
    reactions = []
    for rx in obj["reactions"]:
        alpha = np.asarray(rx["alpha"], dtype=float)
        beta = np.asarray(rx["beta"], dtype=float)
        if "kappa" in rx:
            kappa = float(rx["kappa"])
        else:
            kappa = kappa_from_rates(float(rx["k_fw"]), float(rx["k_bw"]), omega_mean, alpha, beta)
        reactions.append((alpha, beta, kappa))
    return make_network(species, reactions, obj["diffusion"], reference)


def network_to_json(net: ReactionNetwork) -> dict:
    return {
        "species": net.species,
        "reactions": [
            {"alpha": list(a), "beta": list(b), "kappa": float(k)}
            for a, b, k in zip(net.alpha, net.beta, net.kappa)
        ],
        "diffusion": list(net.diffusion),
        "reference_density": [profile_to_json(p) for p in net.reference],
    }
