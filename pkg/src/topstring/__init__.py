"""Exact and high-precision checks of topological-string amplitudes.

Submodules: :mod:`exact` (rationals, Bernoulli, zeta), :mod:`qseries`
(truncated series, eta, polylogarithms), :mod:`torus`, :mod:`conifold`,
:mod:`geometry` (special geometry, GW data, anomaly, OSV),
:mod:`matrix_model` and :mod:`cli`.
"""

from .exact import ExactScalar, bernoulli, chi_g, hodge_c3, sigma1, weighted_power_sum, zeta_int
from .report import DualityReport

__version__ = "0.1.0"

__all__ = [
    "ExactScalar",
    "DualityReport",
    "bernoulli",
    "chi_g",
    "hodge_c3",
    "sigma1",
    "weighted_power_sum",
    "zeta_int",
]
