"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one `[criterion N] PASS/FAIL` line (visible with -s, or in
the captured output of a failing run) including the measured quantities and
elapsed time.

Criterion 10's two "change by <= 10%" clauses are asserted verbatim and are
expected to fail: the perspective and Boltzmann quadratures converge as
eps -> 0 but only like powers of log(1/eps), so between eps = 1e-2 and 1e-6
they still move by ~84% and ~23% for the pinned exponents (no admissible
exponent pair settles faster).  The bounded-versus-divergent substance is
covered, and green, in the module property suite.
"""

import time

import numpy as np

from edpflow import (
    bounding_box_check,
    conservation_laws,
    constitutive_fluxes,
    discretize,
    edb_residual,
    fenchel_gap,
    integrate,
    primal_dissipation,
    slope,
)
from edpflow.cosh import c_of_s, cstar, legendre_oracle
from edpflow.continuum import convergence_study
from edpflow.expr import CosineMode, CosineProfile, constant
from edpflow.grid import TorusGrid, reference_weights
from edpflow.properties import (
    counterexample_quadratures,
    run_all,
    suite_embedding_duality,
)

HEAT_IC = [CosineProfile(1.0, (CosineMode(0.5, (1,)),))]
BINARY_IC = [
    CosineProfile(1.0, (CosineMode(0.3, (1,)),)),
    CosineProfile(1.0, (CosineMode(-0.2, (1,), 1.1),)),
    CosineProfile(0.8, (CosineMode(0.1, (2,)),)),
]


class _Report:
    def __init__(self, num, label):
        self.num, self.label = num, label
        self.t0 = time.perf_counter()

    def done(self, passed, detail):
        status = "PASS" if passed else "FAIL"
        dt = time.perf_counter() - self.t0
        print(f"[criterion {self.num:2d}] {status} ({dt:5.2f}s) {self.label}: {detail}")
        return passed


def test_criterion_01_cosh_calculus_suite():
    rep = _Report(1, "cosh identities, bounds, monotonicities, magical estimate")
    results = run_all(
        seed=20240809,
        counts=50_000,
        names=(
            "cosh-identities",
            "cosh-bounds",
            "perspective-monotone",
            "magical-estimate",
            "perspective-convex",
        ),
    )
    total = sum(r.checked for r in results)
    failures = [f for r in results for f in r.failures]
    ok = rep.done(not failures and total >= 100_000, f"{total} samples, failures={failures}")
    assert ok


def test_criterion_02_legendre_oracle():
    rep = _Report(2, "closed-form conjugate vs brute-force grid supremum")
    rng = np.random.default_rng(2)
    s = rng.uniform(-50.0, 50.0, 1000)
    err = max(abs(legendre_oracle(cstar, v) - c_of_s(v)) for v in s)
    ok = rep.done(err <= 1e-4, f"max |closed form - oracle| = {err:.3e} over 1000 points")
    assert ok


def test_criterion_03_fenchel_equality(exchange, binary):
    rep = _Report(3, "balance-equality gap at and away from the constitutive fluxes")
    rng = np.random.default_rng(3)
    worst_scaled = -np.inf
    min_perturbed = np.inf
    n_states = 0
    for net in (exchange, binary):
        for d, n in ((1, 8), (2, 4)):
            grid = TorusGrid(d, n)
            w = reference_weights(grid, net)
            for _ in range(25):
                c = rng.uniform(0.2, 4.0, (net.species, grid.M))
                F, J = constitutive_fluxes(grid, net, c, w)
                r = primal_dissipation(grid, net, c, F, J)
                s = sum(slope(grid, net, c, w))
                gap = fenchel_gap(grid, net, c, F, J, w)
                worst_scaled = max(worst_scaled, gap / (1e-9 * (r + s + 1.0)))
                min_perturbed = min(min_perturbed, fenchel_gap(grid, net, c, 2 * F, 2 * J, w))
                n_states += 1
    ok = rep.done(
        worst_scaled <= 1.0 and min_perturbed > 0.0,
        f"{n_states} states; worst gap = {worst_scaled:.3f} of budget; "
        f"min perturbed gap = {min_perturbed:.3e}",
    )
    assert ok


def test_criterion_04_discrete_edb(exchange):
    rep = _Report(4, "balance residual of an RK4 exchange run, refining dt and sampling")
    grid = TorusGrid(1, 16)
    w = reference_weights(grid, exchange)
    ic = [CosineProfile(1.0, (CosineMode(0.5, (1,)),)), constant(1.0)]
    c0 = discretize(grid, ic)

    traj = integrate(grid, exchange, c0, 1.0, dt=1e-4, sample_dt=1e-3, w=w)
    res = edb_residual(traj, 0.0, 1.0)
    rs = res - (traj.reports[-1].energy - traj.reports[0].energy)
    budget = 1e-4 * (1.0 + rs)

    traj2 = integrate(grid, exchange, c0, 1.0, dt=5e-5, sample_dt=5e-4, w=w)
    res2 = edb_residual(traj2, 0.0, 1.0)
    ratio = abs(res) / abs(res2)
    # composite-trapezoid asymptotics put the exact ratio at 4*(1 - a^2 h^2/80),
    # a hair below 4; allow 0.1% for that while still pinning second order
    ok = rep.done(
        abs(res) <= budget and ratio >= 4.0 * (1.0 - 1e-3),
        f"|L| = {abs(res):.3e} <= {budget:.3e}; refinement ratio = {ratio:.4f}",
    )
    assert ok


def test_criterion_05_exchange_closed_form(exchange):
    rep = _Report(5, "homogeneous exchange against c1(t) = 1 + exp(-2t)")
    grid = TorusGrid(1, 1)
    w = np.ones((2, 1))
    traj = integrate(grid, exchange, np.array([[2.0], [0.0]]), 1.0, dt=1e-3, sample_dt=0.1, w=w)
    err = abs(traj.states[-1][0, 0] - (1.0 + np.exp(-2.0)))
    ok = rep.done(err <= 1e-8, f"abs error at t=1: {err:.3e}")
    assert ok


def test_criterion_06_lattice_eigen_decay(heat):
    rep = _Report(6, "heat-mode decay rate vs 2 N^2 (1 - cos(2 pi/N))")
    n = 32
    grid = TorusGrid(1, n)
    w = reference_weights(grid, heat)
    c0 = discretize(grid, HEAT_IC)
    T = 0.01
    traj = integrate(grid, heat, c0, T, dt=2e-4, sample_dt=T, w=w)
    z = np.exp(-2j * np.pi * np.arange(n) / n)
    amp = lambda state: abs(np.sum(state[0] * z)) * 2 / n
    lam_measured = np.log(amp(traj.states[0]) / amp(traj.states[-1])) / T
    lam_exact = 2 * n**2 * (1 - np.cos(2 * np.pi / n))
    rel = abs(lam_measured - lam_exact) / lam_exact
    ok = rep.done(rel <= 1e-6, f"measured {lam_measured:.9g} vs exact {lam_exact:.9g} (rel {rel:.2e})")
    assert ok


def test_criterion_07_conservation(exchange, binary):
    rep = _Report(7, "conserved combinations drift along T=1 trajectories")
    worst = 0.0
    for net, ic in ((exchange, [CosineProfile(1.0, (CosineMode(0.5, (1,)),)), constant(1.0)]),
                    (binary, BINARY_IC)):
        basis = conservation_laws(net.gamma)
        assert basis, "networks under test must have nontrivial conservation laws"
        grid = TorusGrid(1, 8)
        w = reference_weights(grid, net)
        c0 = discretize(grid, ic)
        traj = integrate(grid, net, c0, 1.0, sample_dt=0.05, w=w)
        for q in basis:
            masses = np.array(
                [q @ (traj.states[m].sum(axis=1) / grid.M) for m in range(len(traj.times))]
            )
            worst = max(worst, float(np.max(np.abs(masses - masses[0])) / (abs(masses[0]) or 1.0)))
    ok = rep.done(worst <= 1e-10, f"worst relative drift = {worst:.3e}")
    assert ok


def test_criterion_08_embedding_dualities():
    rep = _Report(8, "adjoint pairings and hat-function properties")
    rng = np.random.default_rng(8)
    res = suite_embedding_duality(rng, 8192)
    ok = rep.done(res.passed, f"{res.checked} checks, failures={res.failures}")
    assert ok


def test_criterion_09_edp_convergence_study(heat, binary):
    rep = _Report(9, "refinement ladders: reference order, Cauchy trend, energy gaps")
    heat_ladder = convergence_study(heat, 1, [8, 16, 32, 64], HEAT_IC, 0.02, sample_dt=0.002)
    binary_ladder = convergence_study(binary, 1, [8, 16, 32, 64], BINARY_IC, 0.25, sample_dt=0.005)
    orders_ok = all(o >= 1.8 for o in heat_ladder.ref_orders)
    cauchy_ok = binary_ladder.cauchy_monotone()
    gaps_ok = binary_ladder.energy_gaps_monotone(n_times=11)
    ok = rep.done(
        orders_ok and cauchy_ok and gaps_ok,
        f"heat orders {['%.2f' % o for o in heat_ladder.ref_orders]}; "
        f"binary cauchy {['%.2e' % c for c in binary_ladder.cauchy]} "
        f"(monotone={cauchy_ok}); energy gaps monotone at 11 times: {gaps_ok}",
    )
    assert ok


def test_criterion_10_counterexample_regression():
    rep = _Report(10, "divergent C(s) quadrature vs bounded companions (verbatim thresholds)")
    q_c2, q_p2, q_l2 = counterexample_quadratures(1e-2)
    q_c6, q_p6, q_l6 = counterexample_quadratures(1e-6)
    growth = q_c6 / q_c2
    change_p = abs(q_p6 - q_p2) / q_p2
    change_l = abs(q_l6 - q_l2) / q_l2
    ok = rep.done(
        growth >= 2.0 and change_p <= 0.10 and change_l <= 0.10,
        f"C(s) growth {growth:.3f}x (need >= 2); perspective change {change_p:.1%}, "
        f"Boltzmann change {change_l:.1%} (need <= 10%; unattainable at these eps)",
    )
    assert growth >= 2.0
    assert change_p <= 0.10, (
        f"perspective quadrature changed by {change_p:.1%} between eps=1e-2 and 1e-6; "
        "the integral converges, but only like a power of log(1/eps) "
        "(limit 6.1613, values 1.1982 -> 2.2085), so a 10% settling threshold "
        "at these eps cannot be met by any admissible exponent pair"
    )
    assert change_l <= 0.10, (
        f"Boltzmann quadrature changed by {change_l:.1%} (limit 0.8801, values "
        "0.3756 -> 0.4619); same slow log-power settling as the perspective integral"
    )
    assert ok


def test_criterion_11_bounding_box(exchange):
    rep = _Report(11, "exchange trajectory confined to the unit box")
    grid = TorusGrid(1, 16)
    w = reference_weights(grid, exchange)
    ic = [
        CosineProfile(0.5, (CosineMode(0.5, (1,)),)),
        CosineProfile(0.5, (CosineMode(-0.3, (2,)),)),
    ]
    c0 = discretize(grid, ic)
    traj = integrate(grid, exchange, c0, 1.0, dt=2e-4, sample_dt=0.02, w=w)
    box = [[0.0, 1.0 + 1e-12], [0.0, 1.0 + 1e-12]]
    result = bounding_box_check(traj, box)
    ok = rep.done(
        result.inside,
        f"max exceedance {result.max_exceedance:.3e} over {len(traj.times)} samples",
    )
    assert ok
