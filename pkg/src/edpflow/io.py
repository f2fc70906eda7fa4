"""Trajectory persistence.

A trajectory directory contains:

    meta.json         run metadata: grid, network, scheme, step policy,
                      sample times, and the shape/filename of every array
    functionals.csv   one row per sample: t, E, R_diff, R_react, S_diff,
                      S_react, L_cum (header preceded by a units comment)
    states.*          (S, I, M)     concentrations per sample
    flux_diff.*       (S, I, d, M)  diffusive fluxes per sample
    flux_react.*      (S, R, M)     reactive fluxes per sample

Arrays are CSV (one row per sample, %.17g, round-trip exact) or raw binary
little-endian float64 (``<f8``), chosen by the ``--format`` flag.  Output is
written in a fixed order with fixed formatting, so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .functionals import evaluate_report
from .grid import TorusGrid, reference_weights
from .network import network_from_json, network_to_json
from .solver import Trajectory

_trapz = getattr(np, "trapezoid", None) or np.trapz

FUNCTIONAL_COLUMNS = ("t", "E", "R_diff", "R_react", "S_diff", "S_react", "L_cum")
FUNCTIONAL_UNITS = (
    "# units: t=time; E=relative entropy; R_diff,R_react=flux dissipation rates; "
    "S_diff,S_react=slope dissipation rates; L_cum=cumulative balance residual on [0,t]"
)


def functional_rows(traj: Trajectory) -> np.ndarray:
    e = traj.energies()
    rates = traj.dissipation_rates()
    n = len(traj.times)
    l_cum = np.empty(n)
    for m in range(n):
        l_cum[m] = e[m] - e[0] + float(_trapz(rates[: m + 1], traj.times[: m + 1]))
    cols = [
        traj.times,
        e,
        np.array([r.r_diff for r in traj.reports]),
        np.array([r.r_react for r in traj.reports]),
        np.array([r.s_diff for r in traj.reports]),
        np.array([r.s_react for r in traj.reports]),
        l_cum,
    ]
    return np.stack(cols, axis=1)


def write_functionals_csv(traj: Trajectory, path: Path) -> None:
    rows = functional_rows(traj)
    with open(path, "w", newline="") as fh:
        fh.write(FUNCTIONAL_UNITS + "\n")
        fh.write(",".join(FUNCTIONAL_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def _write_array(arr: np.ndarray, base: Path, name: str, fmt: str) -> dict:
    flat = arr.reshape(arr.shape[0], -1)
    if fmt == "binary":
        fn = f"{name}.bin"
        arr.astype("<f8").tofile(base / fn)
    else:
        fn = f"{name}.csv"
        with open(base / fn, "w", newline="") as fh:
            fh.write("# one row per sample; row-major flattening of shape "
                     f"{list(arr.shape[1:])}\n")
            for row in flat:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    return {"file": fn, "shape": list(arr.shape)}


def _read_array(base: Path, entry: dict, fmt: str) -> np.ndarray:
    path = base / entry["file"]
    shape = tuple(entry["shape"])
    if 0 in shape:  # e.g. reactive fluxes of a pure-diffusion run
        return np.zeros(shape)
    if fmt == "binary":
        return np.fromfile(path, dtype="<f8").reshape(shape)
    data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    return data.reshape(shape)


def write_trajectory(traj: Trajectory, outdir, fmt: str = "csv") -> Path:
    if fmt not in ("csv", "binary"):
        raise ValueError(f"format must be 'csv' or 'binary', got {fmt!r}")
    base = Path(outdir)
    base.mkdir(parents=True, exist_ok=True)
    arrays = {
        "states": _write_array(traj.states, base, "states", fmt),
        "flux_diff": _write_array(traj.flux_diff, base, "flux_diff", fmt),
        "flux_react": _write_array(traj.flux_react, base, "flux_react", fmt),
    }
    meta = {
        "format": fmt,
        "dtype": "<f8",
        "grid": {"d": traj.grid.d, "N": traj.grid.N},
        "network": network_to_json(traj.network),
        "times": [float(t) for t in traj.times],
        "arrays": arrays,
        **{k: v for k, v in traj.meta.items()},
    }
    with open(base / "meta.json", "w") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
        fh.write("\n")
    write_functionals_csv(traj, base / "functionals.csv")
    return base


def export_field_samples(field, d: int, m: int, path, fmt: str = "csv") -> Path:
    """Sample a torus field on an m-point-per-axis uniform grid for plotting.

    Writes the sample coordinates and all field components; CSV rows are
    one evaluation point each, binary is raw little-endian float64 of the
    (points, coords + components) table.
    """
    axes = np.meshgrid(*[np.arange(m) / m] * d, indexing="ij")
    pts = np.stack([a.ravel() for a in axes], axis=-1)
    vals = field.evaluate(pts) if hasattr(field, "evaluate") else field(pts)
    vals = np.atleast_2d(vals)
    if vals.ndim == 3:  # directional components: flatten (comp, dir) pairs
        vals = vals.reshape(-1, vals.shape[-1])
    table = np.concatenate([pts, vals.T], axis=1)
    path = Path(path)
    if fmt == "binary":
        table.astype("<f8").tofile(path)
    else:
        header = ",".join([f"x{l}" for l in range(d)] + [f"v{j}" for j in range(vals.shape[0])])
        with open(path, "w", newline="") as fh:
            fh.write(header + "\n")
            for row in table:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    return path


def read_trajectory(outdir) -> Trajectory:
    base = Path(outdir)
    try:
        with open(base / "meta.json") as fh:
            meta = json.load(fh)
    except (FileNotFoundError, json.JSONDecodeError) as err:
        raise IOError(f"unreadable trajectory directory {base}: {err}") from err
    grid = TorusGrid(int(meta["grid"]["d"]), int(meta["grid"]["N"]))
    net = network_from_json(meta["network"], grid.d)
    fmt = meta["format"]
    states = _read_array(base, meta["arrays"]["states"], fmt)
    flux_diff = _read_array(base, meta["arrays"]["flux_diff"], fmt)
    flux_react = _read_array(base, meta["arrays"]["flux_react"], fmt)
    w = reference_weights(grid, net)
    reports = [
        evaluate_report(grid, net, states[m], w, F=flux_diff[m], J=flux_react[m])
        for m in range(states.shape[0])
    ]
    extra = {
        k: v
        for k, v in meta.items()
        if k not in ("format", "dtype", "grid", "network", "times", "arrays")
    }
    return Trajectory(
        grid=grid,
        network=net,
        weights=w,
        times=np.asarray(meta["times"], dtype=float),
        states=states,
        flux_diff=flux_diff,
        flux_react=flux_react,
        reports=reports,
        meta=extra,
    )
