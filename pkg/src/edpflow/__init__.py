"""Reaction-diffusion systems with mass-action kinetics on discrete tori.

The package simulates the lattice evolution, evaluates the gradient-structure
functionals (relative entropy, cosh-type dissipation potentials, relaxed
slope), embeds lattice data into torus functions, and runs grid-refinement
convergence studies.
"""

from .cosh import b_pairing, boltzmann_lambda, c_of_s, c_prime, cstar, cstar_prime, perspective
from .expr import CosineMode, CosineProfile
from .grid import TorusGrid, ce_adjoint, disc_gradient, discretize, gamma_lift, reference_weights
from .network import ReactionNetwork, conservation_laws, kappa_from_rates, make_network, monomial, validate_network
from .functionals import (
    FunctionalReport,
    b_rate,
    ce_residual,
    constitutive_fluxes,
    dual_dissipation,
    edb_residual,
    energy,
    fenchel_gap,
    primal_dissipation,
    slope,
)
from .solver import Trajectory, bounding_box_check, integrate, rhs, step

__all__ = [
    "CosineMode",
    "CosineProfile",
    "FunctionalReport",
    "ReactionNetwork",
    "TorusGrid",
    "Trajectory",
    "b_pairing",
    "b_rate",
    "boltzmann_lambda",
    "bounding_box_check",
    "c_of_s",
    "c_prime",
    "ce_adjoint",
    "ce_residual",
    "conservation_laws",
    "constitutive_fluxes",
    "cstar",
    "cstar_prime",
    "disc_gradient",
    "discretize",
    "dual_dissipation",
    "edb_residual",
    "energy",
    "fenchel_gap",
    "gamma_lift",
    "integrate",
    "kappa_from_rates",
    "make_network",
    "monomial",
    "perspective",
    "primal_dissipation",
    "reference_weights",
    "rhs",
    "slope",
    "step",
    "validate_network",
]

__version__ = "0.1.0"
