"""Prepotentials, periods, Yukawa couplings and the moduli-space Kahler metric.

Derivatives are Wirtinger: d_i = (d_{x_i} - i d_{y_i})/2 with t^i = x_i + i y_i,
so for the cubic model e^{-K} ~ (Im t)^3 the metric is 3/(4 (Im t)^2).

Kahler potential conventions for :func:`kahler_potential`:

``bilinear``
    e^{-K} = i (Xbar^I F_I - X^I Fbar_I) with X = (1, t), F_0 = 2F - t^a d_a F.
``flat``
    the same quantity written in flat coordinates,
    i (2F - 2Fbar - (t - tbar)^a (d_a F + dbar_a Fbar)).
``flat-literal``
    i (4F - 4Fbar + tbar^a d_a F - t^a dbar_a Fbar), kept for comparison only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from typing import Callable, List, NamedTuple, Optional, Sequence

import mpmath
import numpy as np

from .._fd import mixed_partial, unit
from .._precision import DEFAULT_PREC, to_mpc, workprec
from ..report import DualityReport

__all__ = [
    "GeometryDomainError",
    "PrepotentialSpec",
    "PeriodVector",
    "KahlerData",
    "KahlerNorm",
    "euler_check",
    "homogeneity_residual",
    "yukawa_from_prepotential",
    "kahler_from_periods",
    "kahler_potential",
    "kahler_metric",
]


class GeometryDomainError(ValueError):
    """Point outside the region where the construction makes sense."""


@dataclass(frozen=True)
class PrepotentialSpec:
    """Weight-2 homogeneous prepotential F(X^0, ..., X^h).

    ``evaluator`` maps the period list X to F(X).  ``flat_form`` is
    t -> F(1, t) in the X^0 = 1 gauge; whichever of the two is missing is
    derived from the other.
    """

    evaluator: Optional[Callable[[Sequence], object]] = None
    flat_form: Optional[Callable[[Sequence], object]] = None
    declared_degree: int = 2

    def __post_init__(self):
        if self.evaluator is None and self.flat_form is None:
            raise ValueError("need an evaluator or a flat form")

    def __call__(self, X: Sequence):
        if self.evaluator is not None:
            return self.evaluator(list(X))
        x0 = X[0]
        return x0**2 * self.flat_form([x / x0 for x in X[1:]])

    def flat(self, t: Sequence):
        if self.flat_form is not None:
            return self.flat_form(list(t))
        return self.evaluator([mpmath.mpc(1)] + list(t))


def homogeneity_residual(F: PrepotentialSpec, X: Sequence, s, prec: int = DEFAULT_PREC):
    """|F(sX) - s^2 F(X)|."""
    with workprec(prec):
        X = [to_mpc(x) for x in X]
        s = to_mpc(s)
        return abs(F([s * x for x in X]) - s**F.declared_degree * F(X))


@dataclass(frozen=True)
class PeriodVector:
    """alpha-periods X^I and beta-periods F_I."""

    X: tuple
    F_I: tuple

    def __post_init__(self):
        if len(self.X) != len(self.F_I):
            raise ValueError("X and F_I must have equal length")

    @classmethod
    def from_prepotential(cls, F: PrepotentialSpec, X: Sequence, step=None, prec: int = DEFAULT_PREC):
        """F_I = dF/dX^I by central differences."""
        with workprec(prec):
            X = [to_mpc(x) for x in X]
            n = len(X)
            grad = tuple(+mixed_partial(F, X, [unit(n, a)], step, prec) for a in range(n))
            return cls(tuple(X), grad)


def euler_check(
    F: PrepotentialSpec,
    X: Sequence,
    F_I: Optional[Sequence] = None,
    step=None,
    prec: int = DEFAULT_PREC,
    tolerance: float = 1e-25,
) -> DualityReport:
    """Euler relation sum_I X^I F_I = 2 F(X) for a weight-2 prepotential."""
    with workprec(prec):
        X = [to_mpc(x) for x in X]
        if all(x == 0 for x in X):
            raise ValueError("degenerate period vector (all zero)")
        if F_I is None:
            F_I = PeriodVector.from_prepotential(F, X, step, prec).F_I
        lhs = mpmath.fsum(x * f for x, f in zip(X, F_I))
        rhs = F.declared_degree * F(X)
        return DualityReport.compare_numeric(
            lhs, rhs, "euler:weight2", tolerance, judge="abs"
        )


def yukawa_from_prepotential(
    F: PrepotentialSpec, t: Sequence, step=None, prec: int = DEFAULT_PREC
) -> np.ndarray:
    """C_ijk = d^3 F / dt^i dt^j dt^k of the flat form, as an (h, h, h) array.

    Each sorted index triple is differenced once and copied to its
    permutations, so the tensor is symmetric by construction.
    """
    with workprec(prec):
        t = [to_mpc(x) for x in t]
        h = len(t)
        C = np.empty((h, h, h), dtype=object)
        for idx in combinations_with_replacement(range(h), 3):
            val = mixed_partial(F.flat, t, [unit(h, a) for a in idx], step, prec)
            for perm in set(permutations(idx)):
                C[perm] = +val
        return C


class KahlerNorm(NamedTuple):
    """e^{-K} after normalization; ``sign`` is -1 when the raw value was negative."""

    value: mpmath.mpf
    sign: int


def kahler_from_periods(P: PeriodVector, prec: int = DEFAULT_PREC) -> KahlerNorm:
    """e^{-K} = i (sum Xbar^I F_I - sum X^I Fbar_I), made positive.

    The overall phase of Omega is conventional; a negative raw value is
    flipped and the flip recorded in ``sign``.
    """
    with workprec(prec):
        val = 1j * mpmath.fsum(
            mpmath.conj(x) * f - x * mpmath.conj(f) for x, f in zip(P.X, P.F_I)
        )
        val = val.real
        if val == 0:
            raise GeometryDomainError("degenerate point: e^{-K} vanishes")
        sign = 1 if val > 0 else -1
        return KahlerNorm(sign * val, sign)


def _raw_exp_minus_k(F: PrepotentialSpec, t: List, convention: str, prec: int):
    h = len(t)
    dF = [mixed_partial(F.flat, t, [unit(h, a)], None, prec) for a in range(h)]
    f = F.flat(t)
    if convention == "bilinear":
        # F_0 = 2F - t^a dF_a by the Euler relation, F_a = dF_a, X = (1, t)
        X = [mpmath.mpc(1)] + t
        FI = [2 * f - mpmath.fsum(ta * da for ta, da in zip(t, dF))] + dF
        raw = 1j * mpmath.fsum(mpmath.conj(x) * g - x * mpmath.conj(g) for x, g in zip(X, FI))
    elif convention == "flat":
        # the bilinear form in the X^0 = 1 gauge: 2F - 2Fbar - (t - tbar)(dF + dFbar)
        raw = 1j * (
            2 * f
            - 2 * mpmath.conj(f)
            - mpmath.fsum((ta - mpmath.conj(ta)) * (da + mpmath.conj(da)) for ta, da in zip(t, dF))
        )
    elif convention == "flat-literal":
        # 4F - 4Fbar + tbar dF - t dFbar; for F = t^3 this is i(30 x^2 y - 2 y^3),
        # not a function of Im t alone, so it does not reproduce the bilinear form
        raw = 1j * (
            4 * f
            - 4 * mpmath.conj(f)
            + mpmath.fsum(mpmath.conj(ta) * da - ta * mpmath.conj(da) for ta, da in zip(t, dF))
        )
    else:
        raise ValueError(f"unknown Kahler convention {convention!r}")
    return raw.real


def kahler_potential(
    F: PrepotentialSpec,
    t: Sequence,
    convention: str = "bilinear",
    sign: Optional[int] = None,
    prec: int = DEFAULT_PREC,
):
    """K(t) = -log(sign * e^{-K}); ``sign`` defaults to whatever makes it positive."""
    with workprec(prec):
        t = [to_mpc(x) for x in t]
        raw = _raw_exp_minus_k(F, t, convention, prec)
        if sign is None:
            sign = 1 if raw > 0 else -1
        val = sign * raw
        if val <= 0:
            raise GeometryDomainError(
                f"e^(-K) = {mpmath.nstr(val, 8)} <= 0 at t = {t}: outside the Kahler cone"
            )
        return -mpmath.log(val), sign


@dataclass(frozen=True)
class KahlerData:
    """K, the Hermitian metric G_{i jbar}, Yukawa C_ijk and its conjugate."""

    K: mpmath.mpf
    G: mpmath.matrix
    C: np.ndarray
    Cbar: np.ndarray
    sign: int = 1


def kahler_metric(
    F: PrepotentialSpec,
    t: Sequence,
    convention: str = "bilinear",
    step=None,
    prec: int = DEFAULT_PREC,
    with_yukawa: bool = True,
) -> KahlerData:
    """K and G_{i jbar} = d_i dbar_j K by mixed central differences.

    G_{i jbar} = [K_{x_i x_j} + K_{y_i y_j} + i (K_{x_i y_j} - K_{y_i x_j})] / 4.
    The sign normalizing e^{-K} is fixed at ``t`` and reused at every stencil
    point, so leaving the positive region raises instead of flipping.
    """
    with workprec(prec):
        t = [to_mpc(x) for x in t]
        h = len(t)
        K0, sign = kahler_potential(F, t, convention, None, prec)
        Kf = lambda pt: kahler_potential(F, pt, convention, sign, prec)[0]
        G = mpmath.matrix(h, h)
        for i in range(h):
            for j in range(i, h):
                ex_i, ex_j = unit(h, i), unit(h, j)
                ey_i, ey_j = unit(h, i, 1j), unit(h, j, 1j)
                xx = mixed_partial(Kf, t, [ex_i, ex_j], step, prec)
                yy = mixed_partial(Kf, t, [ey_i, ey_j], step, prec)
                xy = mixed_partial(Kf, t, [ex_i, ey_j], step, prec)
                yx = mixed_partial(Kf, t, [ey_i, ex_j], step, prec)
                g = mpmath.mpc(xx + yy, xy - yx) / 4
                G[i, j] = g
                G[j, i] = mpmath.conj(g)
        for i in range(h):
            G[i, i] = mpmath.mpc(G[i, i].real, 0)
        evals = mpmath.eighe(G, eigvals_only=True)
        if min(evals[k] for k in range(h)) <= 0:
            raise GeometryDomainError(f"metric not positive definite at t = {t}")
        if with_yukawa:
            C = yukawa_from_prepotential(F, t, None, prec)
            Cbar = np.vectorize(mpmath.conj, otypes=[object])(C)
        else:
            C = Cbar = np.empty((h, h, h), dtype=object)
        return KahlerData(K0, G, C, Cbar, sign)
