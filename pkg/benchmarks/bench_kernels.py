#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the fused right-hand side and the flux kernels on representative
lattice sizes, then a short RK4 integration through the public solver with
each backend selected via EDPFLOW_BACKEND.

Usage: python benchmarks/bench_kernels.py [--repeat 200]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def build_instance(rng, species, d, n, reactions):
    m = n**d
    c = rng.uniform(0.1, 3.0, (species, m))
    w = rng.uniform(0.5, 2.0, (species, m))
    delta = rng.uniform(0.5, 2.0, species)
    kappa = rng.uniform(0.5, 2.0, reactions)
    alpha = rng.integers(0, 3, (reactions, species)).astype(float)
    beta = rng.integers(0, 3, (reactions, species)).astype(float)
    cells = np.arange(m).reshape((n,) * d)
    fwd = np.stack([np.roll(cells, -1, axis=l).ravel() for l in range(d)])
    bwd = np.stack([np.roll(cells, +1, axis=l).ravel() for l in range(d)])
    return c, w, delta, kappa, alpha, beta, alpha - beta, fwd, bwd, float(n) ** 2


def time_fn(fn, args, repeat):
    fn(*args)  # warm-up (includes jit compilation for the numba backend)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def bench_kernels(repeat):
    from edpflow.kernels import _numpy

    try:
        from edpflow.kernels import _numba
    except ImportError:
        _numba = None
        print("numba unavailable; timing the numpy backend only")

    rng = np.random.default_rng(0)
    cases = [("d=1 N=64 I=3 R=1", (3, 1, 64, 1)), ("d=2 N=32 I=3 R=2", (3, 2, 32, 2)),
             ("d=3 N=16 I=2 R=1", (2, 3, 16, 1))]
    header = f"{'case':<20} {'kernel':<16} {'numpy':>12} {'numba':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, shape in cases:
        inst = build_instance(rng, *shape)
        c, w, delta, kappa, alpha, beta, gamma, fwd, bwd, n2 = inst
        flux_args = {
            "diffusive_flux": (c, w, delta, fwd, n2),
            "reactive_flux": (c, w, kappa, alpha, beta),
            "rhs": inst,
        }
        for name, args in flux_args.items():
            t_np = time_fn(getattr(_numpy, name), args, repeat)
            if _numba is not None:
                t_nb = time_fn(getattr(_numba, name), args, repeat)
                print(f"{label:<20} {name:<16} {t_np*1e6:>10.1f}us {t_nb*1e6:>10.1f}us {t_np/t_nb:>8.1f}x")
            else:
                print(f"{label:<20} {name:<16} {t_np*1e6:>10.1f}us {'-':>12} {'-':>9}")


INTEGRATE_SNIPPET = """
import time
import numpy as np
import edpflow as ef
from edpflow.expr import CosineProfile, CosineMode
from edpflow.grid import TorusGrid, reference_weights
from edpflow.kernels import BACKEND

net = ef.make_network(3, [((1,1,0),(0,0,1),1.0)], (1.0,1.0,1.0), (1.0,1.0,1.0))
g = TorusGrid(1, 64)
w = reference_weights(g, net)
ic = [CosineProfile(1.0, (CosineMode(0.3,(1,)),)),
      CosineProfile(1.0, (CosineMode(-0.2,(1,),1.1),)),
      CosineProfile(0.8, (CosineMode(0.1,(2,)),))]
c0 = ef.discretize(g, ic)
ef.integrate(g, net, c0, 0.002, sample_dt=0.002, w=w)  # warm-up
t0 = time.perf_counter()
traj = ef.integrate(g, net, c0, 0.05, sample_dt=0.05, w=w)
dt = time.perf_counter() - t0
print(f"integrate[{BACKEND}]: {dt:.3f}s for {traj.meta['n_steps']} RK4 steps "
      f"({dt/traj.meta['n_steps']*1e6:.1f}us/step)")
"""


def bench_integrate():
    for backend in ("numpy", "numba"):
        env = dict(os.environ, EDPFLOW_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", INTEGRATE_SNIPPET], env=env, capture_output=True, text=True
        )
        out = proc.stdout.strip() or proc.stderr.strip()
        print(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    bench_kernels(args.repeat)
    print()
    bench_integrate()


if __name__ == "__main__":
    main()
