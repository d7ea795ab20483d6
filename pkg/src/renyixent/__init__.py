"""Rényi and natural Rényi differential cross-entropies for exponential families,
with Gaussian-process and Markov-source rates and independent numerical oracles."""

from .closed_form import (
    SHANNON,
    AlphaOrder,
    Measure,
    Method,
    XentResult,
    generic_natural_renyi_xent,
    generic_renyi_xent,
    natural_renyi_xent,
    renyi_entropy,
    renyi_xent,
    shannon_xent,
)
from .distributions import (
    FAMILIES,
    Beta,
    Chi,
    ChiScaled,
    ChiSquared,
    Exponential,
    Family,
    Gamma,
    Gaussian,
    Gumbel,
    HalfNormal,
    Laplace,
    MaxwellBoltzmann,
    MultivariateGaussian,
    Pareto,
    Rayleigh,
    make_family,
)
from .errors import *  # noqa: F401,F403
from .oracle import OracleReport, Verdict, certify

__version__ = "0.1.0"

__all__ = [
    "SHANNON", "AlphaOrder", "Measure", "Method", "XentResult",
    "renyi_xent", "natural_renyi_xent", "shannon_xent", "renyi_entropy",
    "generic_renyi_xent", "generic_natural_renyi_xent",
    "FAMILIES", "Family", "make_family", "Beta", "Chi", "ChiScaled", "ChiSquared", "Exponential",
    "Gamma", "Gaussian", "Gumbel", "HalfNormal", "Laplace", "MaxwellBoltzmann",
    "MultivariateGaussian", "Pareto", "Rayleigh",
    "OracleReport", "Verdict", "certify",
]
