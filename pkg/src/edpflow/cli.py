"""Command-line interface.

Subcommands:

    simulate    run a scenario and persist the trajectory + functionals CSV
    edb-check   evaluate the balance residual of a stored trajectory
    converge    run a resolution ladder and write the convergence report
    props       execute the seeded property suites

Exit codes: 0 success, 1 configuration error (message names the JSON path),
2 solver failure.  EDPFLOW_THREADS caps ladder-level parallelism and
EDPFLOW_BACKEND selects the kernel implementation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .continuum import convergence_study
from .functionals import edb_residual, fenchel_gap
from .grid import TorusGrid, discretize, reference_weights
from .io import read_trajectory, write_trajectory
from .network import NetworkError
from .properties import run_all
from .scenario import ScenarioError, load_scenario
from .solver import SolverError, integrate

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edpflow", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one scenario and write artifacts")
    sim.add_argument("--scenario", required=True, help="scenario JSON path")
    sim.add_argument("--out", default=None, help="output directory")
    sim.add_argument("--format", choices=("csv", "binary"), default=None)

    chk = sub.add_parser("edb-check", help="energy-dissipation balance of a stored run")
    chk.add_argument("--traj", required=True, help="trajectory directory")
    chk.add_argument("--s", type=float, default=None, help="interval start (default: first sample)")
    chk.add_argument("--t", type=float, default=None, help="interval end (default: last sample)")
    chk.add_argument("--tol", type=float, default=1e-3, help="acceptance tolerance on |L|")

    conv = sub.add_parser("converge", help="resolution-ladder study")
    conv.add_argument("--scenario", required=True)
    conv.add_argument("--out", default=None)

    pr = sub.add_parser("props", help="run the property suites")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--counts", type=int, default=256)
    pr.add_argument(
        "--mutate",
        choices=("none", "flip-constitutive-sign"),
        default="none",
        help=argparse.SUPPRESS,  # fault-injection hook for self-tests
    )
    return p


def _cmd_simulate(args) -> int:
    sc = load_scenario(args.scenario)
    if sc.N is None:
        raise ScenarioError("scenario invalid at $.grid: simulate needs a single N")
    outdir = args.out or sc.out_directory
    if outdir is None:
        raise ScenarioError("scenario invalid at $.output.directory: no output directory given")
    fmt = args.format or (sc.out_formats[0] if sc.out_formats else "csv")
    grid = TorusGrid(sc.d, sc.N)
    w = reference_weights(grid, sc.network)
    c0 = discretize(grid, sc.initial)
    traj = integrate(
        grid, sc.network, c0, sc.T, scheme=sc.scheme, dt=sc.dt, sample_dt=sc.sample_dt, w=w
    )
    write_trajectory(traj, outdir, fmt=fmt)
    print(f"simulate: wrote {len(traj.times)} samples to {outdir} "
          f"(scheme={sc.scheme}, steps={traj.meta['n_steps']}, "
          f"rejections={traj.meta['n_rejections']})")
    return EXIT_OK


def _cmd_edb_check(args) -> int:
    traj = read_trajectory(args.traj)
    s = traj.times[0] if args.s is None else args.s
    t = traj.times[-1] if args.t is None else args.t
    res = edb_residual(traj, s, t)
    gaps = np.array(
        [
            fenchel_gap(
                traj.grid, traj.network, traj.states[m], traj.flux_diff[m],
                traj.flux_react[m], traj.weights,
            )
            for m in range(len(traj.times))
        ]
    )
    e = traj.energies()
    i = int(np.argmin(np.abs(traj.times - s)))
    j = int(np.argmin(np.abs(traj.times - t)))
    rs_int = res - (e[j] - e[i])
    print(f"E({traj.times[i]:g}) = {e[i]:.12g}")
    print(f"E({traj.times[j]:g}) = {e[j]:.12g}")
    print(f"int (R+S) dt      = {rs_int:.12g}")
    print(f"L[{traj.times[i]:g},{traj.times[j]:g}]      = {res:.12g}")
    print(f"fenchel gap: max = {np.max(gaps):.3e}, mean = {np.mean(gaps):.3e}")
    ok = abs(res) <= args.tol
    print(f"edb-check: {'PASS' if ok else 'FAIL'} (|L| <= {args.tol:g})")
    return EXIT_OK if ok else EXIT_SOLVER


def _cmd_converge(args) -> int:
    sc = load_scenario(args.scenario)
    if not sc.N_list or len(sc.N_list) < 3:
        raise ScenarioError("scenario invalid at $.grid.N_list: converge needs >= 3 levels")
    outdir = Path(args.out or sc.out_directory or ".")
    report = convergence_study(
        sc.network, sc.d, sc.N_list, sc.initial, sc.T,
        scheme=sc.scheme, dt=sc.dt, sample_dt=sc.sample_dt,
    )
    outdir.mkdir(parents=True, exist_ok=True)
    report.to_csv(outdir / "convergence.csv")
    report.to_json(outdir / "convergence.json")
    summary = report.summary()
    print(f"converge: cauchy differences {['%.3e' % c for c in report.cauchy]}")
    if report.ref_errors:
        print(f"converge: reference errors  {['%.3e' % e for e in report.ref_errors]}")
        print(f"converge: measured orders   {['%.2f' % o for o in report.ref_orders]}")
    ok = report.cauchy_monotone()
    print(f"converge: {'PASS' if ok else 'FAIL'} (monotone decreasing Cauchy differences); "
          f"growth flags a1={summary['growth_flag_a1']} a2={summary['growth_flag_a2']}")
    return EXIT_OK if ok else EXIT_SOLVER


def _cmd_props(args) -> int:
    if args.counts <= 0:
        print("props: WARNING empty run (counts <= 0)")
        return EXIT_OK
    flux_fn = None
    if args.mutate == "flip-constitutive-sign":
        from .functionals import constitutive_fluxes

        def flux_fn(grid, net, c, w):
            F, J = constitutive_fluxes(grid, net, c, w)
            return -F, -J

    results = run_all(seed=args.seed, counts=args.counts, flux_fn=flux_fn)
    bad = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"props: [{status}] {r.name} ({r.checked} checks)")
        for f in r.failures[:3]:
            print(f"props:        counterexample: {f}")
        bad += not r.passed
    print(f"props: {len(results) - bad}/{len(results)} suites passed (seed={args.seed})")
    return EXIT_OK if bad == 0 else EXIT_SOLVER


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "edb-check":
            return _cmd_edb_check(args)
        if args.command == "converge":
            return _cmd_converge(args)
        if args.command == "props":
            return _cmd_props(args)
    except (ScenarioError, NetworkError, OSError, IOError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as err:
        print(f"solver error: {err}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
