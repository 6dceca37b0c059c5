"""Genus-one amplitude of the elliptic-curve target.

F_1(t, tau) = -log(sqrt(Im t) |eta(t)|^2) - log(sqrt(Im tau) |eta(tau)|^2)

Derivative conventions
----------------------
With Wirtinger derivatives, d/dt d/dtbar = (1/4)(d_x^2 + d_y^2) and
d/dt d/dtbar F_1 = 1/(8 (Im t)^2).  The normalization 1/(2 (Im t)^2) quoted
for this anomaly corresponds to d/dt = d_x - i d_y (no factor 1/2), so that
d/dt d/dtbar is the flat Laplacian.  :func:`torus_anomaly_check` supports
both via ``convention`` and tags every report with the one used.  The
instanton expansion uses the ordinary holomorphic derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple

import mpmath

from ._precision import DEFAULT_PREC, check_step, to_mpc, workprec
from .qseries import TruncatedSeries, dedekind_eta, series_algebra
from .report import DualityReport

__all__ = [
    "ModuliPoint",
    "torus_f1",
    "torus_anomaly_check",
    "anomaly_convergence",
    "torus_instanton_coeffs",
    "hnf_matrices",
    "hnf_count",
    "ANOMALY_CONVENTIONS",
]

# convention name -> factor applied to the flat Laplacian
ANOMALY_CONVENTIONS = {"laplacian": 1, "wirtinger": Fraction(1, 4)}


@dataclass(frozen=True)
class ModuliPoint:
    """Kahler modulus ``t`` and complex-structure modulus ``tau``."""

    t: mpmath.mpc
    tau: mpmath.mpc

    def __post_init__(self):
        t, tau = to_mpc(self.t), to_mpc(self.tau)
        if t.imag <= 0 or tau.imag <= 0:
            raise ValueError(f"moduli must lie in the upper half plane: t={t}, tau={tau}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "tau", tau)


def _half(z, terms: int) -> mpmath.mpf:
    return -mpmath.log(mpmath.sqrt(z.imag) * abs(dedekind_eta(z, terms, mpmath.mp.prec)) ** 2)


def torus_f1(p: ModuliPoint, terms: int = 50, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """F_1 at ``p``; real-valued, returned as an mpf."""
    with workprec(prec):
        return _half(p.t, terms) + _half(p.tau, terms)


def _laplacian(f, z, h) -> mpmath.mpf:
    return (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h) - 4 * f(z)) / h**2


def _mixed_fd(p: ModuliPoint, which: str, step, terms: int, convention: str):
    factor = ANOMALY_CONVENTIONS[convention]
    if which == "t":
        f = lambda z: torus_f1(ModuliPoint(z, p.tau), terms, mpmath.mp.prec)
        z = p.t
    else:
        f = lambda z: torus_f1(ModuliPoint(p.t, z), terms, mpmath.mp.prec)
        z = p.tau
    return _laplacian(f, z, step) * mpmath.mpf(factor.numerator) / factor.denominator


def _target(z, convention: str) -> mpmath.mpf:
    factor = ANOMALY_CONVENTIONS[convention]
    return mpmath.mpf(factor.numerator) / factor.denominator / (2 * z.imag**2)


def torus_anomaly_check(
    p: ModuliPoint,
    step=1e-5,
    prec: int = DEFAULT_PREC,
    terms: int = 80,
    convention: str = "laplacian",
    tolerance: float = 1e-6,
) -> DualityReport:
    """Central-difference d/dt d/dtbar F_1 against its closed form.

    The report compares the ``t`` direction; the ``tau`` direction is in
    ``details["tau"]`` as a report of its own.
    """
    if convention not in ANOMALY_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    tag = f"anomaly:{convention}"
    with workprec(prec):
        reports = {}
        for which, z in (("t", p.t), ("tau", p.tau)):
            h = check_step(step, 2, prec, scale=z.imag / 4)
            fd = _mixed_fd(p, which, h, terms, convention)
            reports[which] = DualityReport.compare_numeric(
                fd, _target(z, convention), tag, tolerance, direction=which, step=h
            )
    t_rep = reports["t"]
    t_rep.details["tau"] = reports["tau"]
    return t_rep


def anomaly_convergence(
    p: ModuliPoint,
    step=1e-5,
    halvings: int = 3,
    prec: int = DEFAULT_PREC,
    terms: int = 80,
    convention: str = "laplacian",
) -> Tuple[List[mpmath.mpf], List[mpmath.mpf]]:
    """Signed deviations (FD minus target) in ``t`` for step, step/2, ...

    Returns ``(deviations, ratios)`` with ratios of consecutive deviations;
    second-order convergence shows ratios near 4.
    """
    with workprec(prec):
        h = mpmath.mpf(step)
        devs = []
        for _ in range(halvings + 1):
            check_step(h, 2, prec, scale=p.t.imag / 4)
            devs.append(_mixed_fd(p, "t", h, terms, convention) - _target(p.t, convention))
            h /= 2
        ratios = [devs[i] / devs[i + 1] for i in range(halvings)]
    return devs, ratios


def torus_instanton_coeffs(nmax: int) -> List[Fraction]:
    """q-expansion of (i/2pi) dF_1/dt with tbar -> infinity, through q^nmax.

    In that limit only -log eta(t) survives, and
    (i/2pi) d/dt (-log eta) = q d/dq log eta = 1/24 + q d/dq log prod(1 - q^n).
    The product logarithm is taken with exact series algebra.
    """
    if nmax < 1:
        raise ValueError(f"nmax must be >= 1, got {nmax}")
    prod = TruncatedSeries.monomial(0, nmax, 1)
    for n in range(1, nmax + 1):
        prod = prod * (1 - TruncatedSeries.monomial(n, nmax, 1))
    logp = series_algebra(prod, None, "log")
    coeffs = [Fraction(c) for c in logp.x_derivative()]
    coeffs[0] += Fraction(1, 24)
    return coeffs


def hnf_matrices(n: int) -> Iterator[Tuple[int, int, int]]:
    """Upper-triangular Hermite normal forms (a b; 0 d), ad = n, 0 <= b < d."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for b in range(d):
            yield a, b, d


def hnf_count(n: int) -> int:
    """Number of index-n sublattices of Z^2, by explicit enumeration."""
    return sum(1 for _ in hnf_matrices(n))
