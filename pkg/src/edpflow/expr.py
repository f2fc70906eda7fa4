"""Closed-form spatial profiles on the unit torus [0,1)^d.

A profile is a finite cosine series

    p(x) = const + sum_j  amp_j * cos(2*pi * m_j . x + phase_j)

with integer mode vectors ``m_j``.  This tiny expression language covers all
reference densities and initial conditions accepted by the scenario format,
while keeping gradients and exact cell averages available in closed form
(the latter serve as independent oracles for the quadrature-based
discretization).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CosineMode:
    amplitude: float
    freq: tuple[int, ...]
    phase: float = 0.0


@dataclass(frozen=True)
class CosineProfile:
    """const + sum of cosine modes; callable on points of shape (..., d)."""

    const: float = 0.0
    modes: tuple[CosineMode, ...] = field(default_factory=tuple)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape[:-1], self.const, dtype=float)
        for m in self.modes:
            freq = np.asarray(m.freq, dtype=float)
            out += m.amplitude * np.cos(TWO_PI * (x @ freq) + m.phase)
        return out

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Pointwise gradient, shape (..., d)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=float)
        for m in self.modes:
            freq = np.asarray(m.freq, dtype=float)
            s = -m.amplitude * TWO_PI * np.sin(TWO_PI * (x @ freq) + m.phase)
            out += s[..., None] * freq
        return out

    def exact_cell_averages(self, n: int, d: int) -> np.ndarray:
        """Exact averages over the n^d row-major cells of side 1/n.

        The average of cos(2*pi*m.x + phi) over a cube centred at c with side
        h is cos(2*pi*m.c + phi) * prod_l sinc(m_l * h).
        """
        centers = cell_centers(n, d)
        out = np.full(n**d, self.const, dtype=float)
        for m in self.modes:
            freq = np.asarray(m.freq, dtype=float)
            damp = np.prod(np.sinc(freq / n))
            out += m.amplitude * damp * np.cos(TWO_PI * (centers @ freq) + m.phase)
        return out

    def mean(self) -> float:
        """Exact integral over the torus (all nonzero modes average out)."""
        total = self.const
        for m in self.modes:
            if all(f == 0 for f in m.freq):
                total += m.amplitude * np.cos(m.phase)
        return total


def cell_centers(n: int, d: int) -> np.ndarray:
    """Centers of the n^d row-major cells, shape (n^d, d)."""
    axes = np.meshgrid(*[(np.arange(n) + 0.5) / n] * d, indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=-1)


def constant(value: float, d: int = 1) -> CosineProfile:
    return CosineProfile(const=float(value), modes=())


def profile_from_json(obj, d: int) -> CosineProfile:
    """Parse a scenario profile: a bare number or {const, modes:[...]}."""
    if isinstance(obj, (int, float)):
        return constant(float(obj), d)
    if not isinstance(obj, dict):
        raise ValueError(f"profile must be a number or an object, got {type(obj).__name__}")
    modes = []
    for k, entry in enumerate(obj.get("modes", [])):
        freq = tuple(int(f) for f in entry["freq"])
        if len(freq) != d:
            raise ValueError(f"modes[{k}].freq has length {len(freq)}, expected d={d}")
        modes.append(CosineMode(float(entry["amplitude"]), freq, float(entry.get("phase", 0.0))))
    return CosineProfile(const=float(obj.get("const", 0.0)), modes=tuple(modes))


def profile_to_json(p: CosineProfile):
    if not p.modes:
        return p.const
    return {
        "const": p.const,
        "modes": [
            {"amplitude": m.amplitude, "freq": list(m.freq), "phase": m.phase} for m in p.modes
        ],
    }
