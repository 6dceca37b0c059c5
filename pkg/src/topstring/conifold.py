"""U(N) Chern-Simons theory on S^3 against closed strings on the resolved conifold.

The Chern-Simons partition function is

    Z = exp(i pi N(N-1)/8) (k+N)^{-N/2} sqrt((k+N)/N)
        * prod_{s=1}^{N-1} [2 sin(s pi/(k+N))]^{N-s}

with lambda = 2 pi/(k+N) and 't Hooft coupling t = i lambda N.  The closed
string side is

    F_g(q) = int c_{g-1}^3 - chi_g/(2g-3)! Li_{3-2g}(q).

Conventions
-----------
Expanding -log Z at fixed t gives, for every g >= 2,

    [lambda^{2g-2}] (-log Z) = (-1)^{g-1} F_g(q = exp(-t)),

i.e. the closed-string coupling is i lambda and the instanton weight is
exp(-t) (equivalently exp(t): only even powers of t occur).  This is
``Q_EXP_MINUS_T`` and the default.  ``Q_EXP_IT`` (q = exp(i t), coupling
lambda) agrees only up to the sign (-1)^{g-1+n/2} on the t^n coefficient, so it
matches at (g, n) = (2, 2) but not at (2, 4); ``Q_EXP_2PI_IT`` is off by
(2 pi)^n as well.  Both are kept for comparison and every report records the
convention in force.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import mpmath

from ._precision import DEFAULT_PREC, to_mpc, workprec
from .exact import ExactScalar, chi_g, hodge_c3, weighted_power_sum, zeta_int
from .qseries import TruncatedSeries, polylog_neg, polylog_neg_mu_coeffs
from .report import DualityReport

__all__ = [
    "Q_EXP_MINUS_T",
    "Q_EXP_IT",
    "CONVENTIONS",
    "Q_EXP_2PI_IT",
    "CSPoint",
    "CouplingPair",
    "IllConditionedError",
    "cs_log_partition",
    "cs_partition",
    "cs_free_energy",
    "cs_log_winding",
    "instanton_parameter",
    "conifold_fg",
    "closed_string_fg",
    "duality_instanton_identity",
    "GenusFit",
    "fit_genus_expansion",
    "scaled_family",
    "duality_numeric_fit",
    "MultiSeries",
    "generating_function_pack",
]

Q_EXP_MINUS_T = "q=exp(-t),gs=i*lambda"
Q_EXP_IT = "q=exp(i*t)"
Q_EXP_2PI_IT = "q=exp(2*pi*i*t)"
CONVENTIONS = (Q_EXP_MINUS_T, Q_EXP_IT, Q_EXP_2PI_IT)


class IllConditionedError(ArithmeticError):
    def __init__(self, cond, prec: int):
        self.cond = cond
        self.prec = prec
        super().__init__(
            f"least-squares basis condition number {mpmath.nstr(cond, 5)} "
            f"exceeds what {prec} bits can resolve"
        )


@dataclass(frozen=True)
class CSPoint:
    N: int
    k: int
    precision_bits: int = DEFAULT_PREC

    def __post_init__(self):
        if self.N < 1 or self.k < 1:
            raise ValueError(f"need N >= 1 and k >= 1, got N={self.N}, k={self.k}")

    def couplings(self) -> "CouplingPair":
        with workprec(self.precision_bits):
            lam = 2 * mpmath.pi / (self.k + self.N)
            return CouplingPair(mpmath.mpc(lam), mpmath.mpc(0, lam * self.N))


@dataclass(frozen=True)
class CouplingPair:
    """String coupling ``lam`` and 't Hooft coupling ``t``."""

    lam: mpmath.mpc
    t: mpmath.mpc


def cs_log_partition(p: CSPoint) -> mpmath.mpc:
    """log Z summed term by term, so no branch cut is ever crossed."""
    N, k = p.N, p.k
    with workprec(p.precision_bits):
        kn = mpmath.mpf(k + N)
        re = -N * mpmath.log(kn) / 2 + mpmath.log(kn / N) / 2
        for s in range(1, N):
            re += (N - s) * mpmath.log(2 * mpmath.sin(s * mpmath.pi / kn))
        im = mpmath.pi * N * (N - 1) / 8
        return mpmath.mpc(re, im)


def cs_partition(p: CSPoint) -> mpmath.mpc:
    with workprec(p.precision_bits):
        return mpmath.exp(cs_log_partition(p))


def cs_log_winding(p: CSPoint) -> int:
    """Integer w with  log Z (term-wise) = principal log Z + 2 pi i w."""
    with workprec(p.precision_bits):
        im = cs_log_partition(p).imag
        return int(mpmath.floor((im + mpmath.pi) / (2 * mpmath.pi)))


def cs_free_energy(p: CSPoint, branch: str = "principal") -> mpmath.mpc:
    """-log Z.  ``branch="principal"`` keeps Im in (-pi, pi]; ``"continuous"``
    returns the term-wise sum (see :func:`cs_log_winding` for the offset)."""
    with workprec(p.precision_bits):
        logz = cs_log_partition(p)
        if branch == "continuous":
            return -logz
        if branch != "principal":
            raise ValueError(f"unknown branch {branch!r}")
        w = cs_log_winding(p)
        principal = logz - 2j * mpmath.pi * w
        if principal.imag <= -mpmath.pi:
            principal += 2j * mpmath.pi
        return -principal


def instanton_parameter(t, convention: str = Q_EXP_MINUS_T, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    with workprec(prec):
        t = to_mpc(t)
        if convention == Q_EXP_MINUS_T:
            return mpmath.exp(-t)
        if convention == Q_EXP_IT:
            return mpmath.exp(1j * t)
        if convention == Q_EXP_2PI_IT:
            return mpmath.exp(2j * mpmath.pi * t)
        raise ValueError(f"unknown instanton convention {convention!r}")


def conifold_fg(g: int, q, prec: int = DEFAULT_PREC):
    """Genus-g resolved-conifold free energy at instanton parameter ``q``.

    Exact (a Fraction) for rational ``q``; otherwise an mpc.  The closed form
    continues the instanton sum to any q != 1, which is needed on the unit
    circle where q = exp(-t) lands for imaginary t.
    """
    if g < 2:
        raise ValueError(f"conifold_fg needs g >= 2, got {g}")
    pref = chi_g(g) / factorial(2 * g - 3)
    if isinstance(q, (int, Fraction)):
        return hodge_c3(g) - pref * polylog_neg(2 * g - 3, Fraction(q))
    with workprec(prec):
        q = to_mpc(q)
        h = hodge_c3(g)
        return (
            mpmath.mpf(h.numerator) / h.denominator
            - mpmath.mpf(pref.numerator) / pref.denominator * polylog_neg(2 * g - 3, q, prec)
        )


def closed_string_fg(g: int, t, convention: str = Q_EXP_MINUS_T, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """Closed-side prediction for the lambda^{2g-2} coefficient of -log Z."""
    with workprec(prec):
        val = conifold_fg(g, instanton_parameter(t, convention, prec), prec)
        if convention == Q_EXP_MINUS_T:
            val *= (-1) ** (g - 1)
        return val


def _open_string_coefficient(g: int, n: int) -> Tuple[ExactScalar, Dict]:
    """Coefficient of lambda^{2g-2} t^n in -log Z from the sine expansion.

    log(2 sin(x/2)) = log x - sum_m zeta(2m) x^{2m} / (m (2 pi)^{2m}); weighting
    by (N - s) and summing over s turns the x^{2m} terms into
    lambda^{2m} W_m(N).  With N = t/(i lambda), N^j lambda^{2m} becomes
    (i)^{-j} t^j lambda^{2m-j}, so (g, n) needs j = n and m = g - 1 + n/2.
    """
    if n % 2:
        return ExactScalar(0), {"m": None}
    m = g - 1 + n // 2
    w = weighted_power_sum(m)
    w_n = w[n] if n < len(w) else Fraction(0)
    two_pi = ExactScalar(Fraction(2), 1)
    val = zeta_int(2 * m) * two_pi ** (-2 * m) / m * w_n * ExactScalar.i() ** (-n)
    return val, {"m": m, "W_coeff": w_n}


def duality_instanton_identity(g: int, n: int, convention: str = Q_EXP_MINUS_T) -> DualityReport:
    """Exact check of F_{g,n} between the Chern-Simons and conifold sides.

    The closed side is the t^n coefficient of -chi_g/(2g-3)! Li_{3-2g}(q) with
    q = exp(c t): zeta(3-2g-n) c^n / n!, where c = -1, i or 2 pi i by
    convention, times (-1)^{g-1} for the i lambda coupling of
    ``Q_EXP_MINUS_T``.  Log-bearing and polar terms are not part of the
    comparison.
    """
    if g < 2 or n < 1:
        raise ValueError(f"need g >= 2 and n >= 1, got g={g}, n={n}")
    lhs, info = _open_string_coefficient(g, n)
    mu = polylog_neg_mu_coeffs(g, n).coeffs[n]
    if convention == Q_EXP_MINUS_T:
        scale = ExactScalar((-1) ** (n + g - 1))
    elif convention == Q_EXP_IT:
        scale = ExactScalar.i() ** n
    elif convention == Q_EXP_2PI_IT:
        scale = ExactScalar(Fraction(2), 1, 1) ** n
    else:
        raise ValueError(f"unknown instanton convention {convention!r}")
    rhs = -ExactScalar(chi_g(g) / factorial(2 * g - 3)) * mu * scale
    return DualityReport.compare_exact(lhs, rhs, convention, g=g, n=n, **info)


# --- numeric large-N fit ---------------------------------------------------------

STRUCTURAL_TERMS = ("lambda^-1", "log lambda")


@dataclass
class GenusFit:
    """Least-squares fit of -log Z over a family at fixed 't Hooft coupling.

    ``coefficients[g]`` multiplies lambda^{2g-2}.  ``structural`` holds the
    fitted coefficients of lambda^{-1} (phase prefactor) and log(lambda)
    (genus-one logarithm), when those basis functions were included.
    """

    coefficients: Dict[int, mpmath.mpc]
    structural: Dict[str, mpmath.mpc]
    residual: mpmath.mpf
    condition: mpmath.mpf
    lambdas: List[mpmath.mpf]
    t: Optional[mpmath.mpc] = None
    precision_bits: int = DEFAULT_PREC


def scaled_family(base: CSPoint, size: int) -> List[CSPoint]:
    """Members j = 1..size with N_j = j N_0 and k_j + N_j = j (k_0 + N_0)."""
    return [CSPoint(j * base.N, j * base.k, base.precision_bits) for j in range(1, size + 1)]


def _lstsq(A, b, prec: int):
    """Real-matrix least squares for a complex right-hand side."""
    re = mpmath.matrix([x.real for x in b])
    im = mpmath.matrix([x.imag for x in b])
    xr, rr = mpmath.qr_solve(A, re)
    xi, ri = mpmath.qr_solve(A, im)
    return [mpmath.mpc(xr[i], xi[i]) for i in range(A.cols)], mpmath.sqrt(rr**2 + ri**2)


def fit_genus_expansion(
    points: Sequence[CSPoint],
    gmax: int,
    structural_terms: bool = True,
    prec: Optional[int] = None,
) -> GenusFit:
    """Fit -log Z_j = sum_{g=0}^{gmax} c_g lambda_j^{2g-2} (+ structural terms).

    The continuous branch of log Z is used so members never differ by 2 pi i.
    """
    if gmax < 0:
        raise ValueError("gmax must be >= 0")
    prec = prec or min(p.precision_bits for p in points)
    nunk = gmax + 1 + (len(STRUCTURAL_TERMS) if structural_terms else 0)
    if len(points) < max(gmax + 2, nunk):
        raise ValueError(
            f"underdetermined fit: {len(points)} family members for {nunk} unknowns"
        )
    with workprec(prec):
        lams, rows, rhs = [], [], []
        for p in points:
            lam = 2 * mpmath.pi / (p.k + p.N)
            lams.append(lam)
            row = [lam ** (2 * g - 2) for g in range(gmax + 1)]
            if structural_terms:
                row += [1 / lam, mpmath.log(lam)]
            rows.append(row)
            rhs.append(cs_free_energy(CSPoint(p.N, p.k, prec), branch="continuous"))
        A = mpmath.matrix(rows)
        sv = mpmath.svd_r(A, compute_uv=False)
        svals = [sv[i] for i in range(len(sv))]
        cond = max(svals) / min(svals) if min(svals) > 0 else mpmath.inf
        if cond == mpmath.inf or mpmath.log(cond, 2) > prec - 40:
            raise IllConditionedError(cond, prec)
        # column scaling keeps the QR well balanced across lambda^{-2} .. lambda^{2gmax-2}
        norms = [mpmath.norm(A.column(c)) for c in range(A.cols)]
        As = A.copy()
        for r in range(A.rows):
            for c in range(A.cols):
                As[r, c] = A[r, c] / norms[c]
        xs, res = _lstsq(As, rhs, prec)
        x = [xs[c] / norms[c] for c in range(A.cols)]
        coeffs = {g: x[g] for g in range(gmax + 1)}
        structural = dict(zip(STRUCTURAL_TERMS, x[gmax + 1 :])) if structural_terms else {}
        ratios = {Fraction(p.N, p.k + p.N) for p in points}
        t = None
        if len(ratios) == 1:
            r = ratios.pop()
            t = mpmath.mpc(0, 2 * mpmath.pi * r.numerator / r.denominator)
        return GenusFit(coeffs, structural, res, cond, lams, t, prec)


def duality_numeric_fit(
    base: CSPoint,
    family_size: int,
    gmax: int,
    prec: Optional[int] = None,
    structural_terms: bool = True,
    tolerance: float = 1e-3,
    convention: str = Q_EXP_MINUS_T,
) -> DualityReport:
    """Extract genus coefficients from exact Z values and compare to conifold F_g.

    The family keeps t = 2 pi i N_0/(k_0 + N_0) fixed while lambda shrinks as
    1/j.  Besides lambda^{2g-2}, g = 0..gmax, the basis carries lambda^{-1}
    (from the phase prefactor) and log(lambda) (genus-one logarithm) unless
    ``structural_terms`` is off; without them the fit does not converge.

    The report's lhs/rhs and verdict concern c_2 against the closed-side F_2
    in ``convention``; genera 2..gmax are in ``details["per_genus"]``, where
    the top genus is always the least resolved.
    """
    if family_size < gmax + 2:
        raise ValueError(
            f"family_size {family_size} too small for gmax {gmax} (need >= gmax + 2)"
        )
    if gmax < 2:
        raise ValueError("gmax must be >= 2 to compare any genus")
    prec = prec or base.precision_bits
    fit = fit_genus_expansion(scaled_family(base, family_size), gmax, structural_terms, prec)
    with workprec(prec):
        per_genus = {}
        for g in range(2, gmax + 1):
            fg = closed_string_fg(g, fit.t, convention, prec)
            per_genus[g] = DualityReport.compare_numeric(fit.coefficients[g], fg, convention, tolerance)
    worst = max(r.rel_dev for r in per_genus.values())
    head = per_genus[2]
    return DualityReport(
        lhs=head.lhs,
        rhs=head.rhs,
        abs_dev=head.abs_dev,
        rel_dev=head.rel_dev,
        convention_tag=convention,
        tolerance=tolerance,
        details={"per_genus": per_genus, "fit": fit, "worst_rel_dev": worst},
    )


# --- generating functions over boundary types ------------------------------------


@dataclass(frozen=True)
class MultiSeries:
    """Sparse polynomial sum_n F_n t_1^{n_1} ... t_k^{n_k}."""

    labels: Tuple[str, ...]
    terms: Mapping[Tuple[int, ...], object] = field(default_factory=dict)

    def __getitem__(self, exponents: Tuple[int, ...]):
        return self.terms.get(tuple(exponents), 0)

    def evaluate(self, values: Sequence):
        total = 0
        for exps, c in self.terms.items():
            mono = c
            for v, e in zip(values, exps):
                mono = mono * v**e
            total = total + mono
        return total


def generating_function_pack(
    coefficients: Mapping[Union[int, Tuple[int, ...]], object],
    labels: Sequence[str] = ("t",),
    order: Optional[int] = None,
) -> Union[TruncatedSeries, MultiSeries]:
    """Accumulate F_{g; n_1..n_k} into sum F t_1^{n_1} ... t_k^{n_k}.

    Keys are boundary-count tuples (plain ints allowed for one label).  With a
    single label the result is a :class:`TruncatedSeries` in that variable, of
    ``order`` (default: highest count present).
    """
    labels = tuple(labels)
    if not labels:
        raise ValueError("need at least one boundary label")
    terms: Dict[Tuple[int, ...], object] = {}
    for key, c in coefficients.items():
        exps = (key,) if isinstance(key, int) else tuple(key)
        if len(exps) != len(labels):
            raise ValueError(f"boundary counts {exps} do not match labels {labels}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative boundary count in {exps}")
        if c == 0:
            continue
        terms[exps] = terms.get(exps, 0) + c
    if len(labels) > 1:
        return MultiSeries(labels, terms)
    top = max((e[0] for e in terms), default=0)
    if order is None:
        order = top
    coeffs = [0] * (order + 1)
    for (e,), c in terms.items():
        if e <= order:
            coeffs[e] = c
    return TruncatedSeries(coeffs, order, labels[0])
