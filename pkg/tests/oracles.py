"""Independent reference computations used by the tests.

Each oracle takes a different route from the library code it checks:
brute-force sums, numeric quadrature, mpmath special functions or a
different recurrence.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import mpmath
import numpy as np


# --- exact arithmetic ---------------------------------------------------------------


def bernoulli_recurrence(n: int) -> Fraction:
    """B_n from sum_{k=0}^{m} C(m+1, k) B_k = 0 (B_1 = -1/2)."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B[n]


def chi_g_closed(g: int) -> Fraction:
    """(-1)^{g-1} |B_2g| / (2g (2g - 2))."""
    return (-1) ** (g - 1) * abs(bernoulli_recurrence(2 * g)) / (2 * g * (2 * g - 2))


def hodge_c3_closed(g: int) -> Fraction:
    """|B_2g| |B_{2g-2}| / (2g (2g-2) (2g-2)!)."""
    b = abs(bernoulli_recurrence(2 * g)) * abs(bernoulli_recurrence(2 * g - 2))
    return b / (2 * g * (2 * g - 2) * math.factorial(2 * g - 2))


def weighted_power_sum_brute(m: int, N: int) -> int:
    return sum((N - s) * s ** (2 * m) for s in range(1, N))


def sigma1_brute(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def polylog_neg_brute(m: int, q: Fraction, terms: int) -> Fraction:
    return sum(Fraction(n) ** m * q**n for n in range(1, terms + 1))


# --- q-series -------------------------------------------------------------------------


def eta_qpochhammer(tau):
    """q^{1/24} (q; q)_inf via mpmath.qp."""
    tau = mpmath.mpc(tau)
    q = mpmath.exp(2j * mpmath.pi * tau)
    return mpmath.exp(2j * mpmath.pi * tau / 24) * mpmath.qp(q)


def divisor_sum_expansion(nmax: int):
    """q d/dq log prod (1 - q^n) = -sum sigma1(n) q^n by divisor loops."""
    c = [Fraction(0)] * (nmax + 1)
    for d in range(1, nmax + 1):
        for k in range(d, nmax + 1, d):
            c[k] -= d
    return c


# --- Chern-Simons ----------------------------------------------------------------------


def cs_pair_product(N: int, k: int):
    """Z from a product over pairs i < j instead of multiplicities (N - s)."""
    kn = mpmath.mpf(k + N)
    z = mpmath.exp(1j * mpmath.pi * N * (N - 1) / 8) * kn ** (-mpmath.mpf(N) / 2) * mpmath.sqrt(kn / N)
    for i, j in combinations(range(1, N + 1), 2):
        z *= 2 * mpmath.sin((j - i) * mpmath.pi / kn)
    return z


def closed_side_taylor(g: int, n: int, sign: int = -1):
    """t^n coefficient of -chi_g/(2g-3)! Li_{3-2g}(e^{sign t}), polar part dropped.

    Li_{-m}(e^mu) = (d/dmu)^m [e^mu / (1 - e^mu)].  The regular function
    e^mu/(1 - e^mu) + 1/mu is expanded with mpmath.taylor on a circle of
    radius 1/2 (its nearest poles are at 2 pi i), then differentiated m times
    term by term.  No Bernoulli numbers or zeta values enter.
    """
    from topstring.exact import chi_g

    m = 2 * g - 3
    pref = chi_g(g) / math.factorial(m)
    pref = mpmath.mpf(pref.numerator) / pref.denominator
    h = lambda mu: mpmath.exp(mu) / (1 - mpmath.exp(mu)) + 1 / mu
    a = mpmath.taylor(h, 0, n + m, method="quad", radius=mpmath.mpf(1) / 2)
    coeff = a[n + m] * mpmath.factorial(n + m) / mpmath.factorial(n)
    return -pref * coeff * sign**n


# --- special geometry -------------------------------------------------------------------


def cubic_exp_minus_k(kappa, y):
    """|e^{-K}| = (4/3) kappa y^3 for F = kappa t^3/6."""
    return mpmath.mpf(4) / 3 * kappa * y**3


def cubic_metric(y):
    return mpmath.mpf(3) / (4 * y**2)


def quantum_yukawa_brute(kappa, N0: dict, q: Fraction, a: int, b: int, c: int, mmax: int):
    """kappa_abc + sum_n sum_{m <= mmax} n_a n_b n_c N0_n q^{nm} (one modulus q)."""
    total = Fraction(kappa)
    for n, N in N0.items():
        for m in range(1, mmax + 1):
            total += n[a] * n[b] * n[c] * N * q ** (sum(n) * m)
    return total


def yukawa_coeffs_brute(kappa, N0: dict, dmax: int, a=0, b=0, c=0):
    """Total-degree coefficients via explicit (n, m) double loop."""
    coeffs = [Fraction(0)] * (dmax + 1)
    coeffs[0] = Fraction(kappa)
    for n, N in N0.items():
        for m in range(1, dmax + 1):
            d = m * sum(n)
            if d <= dmax:
                coeffs[d] += n[a] * n[b] * n[c] * N
    return coeffs


def genus1_brute(chat: int, c2a, N0: dict, N1: dict, a: int, qmax: int):
    """Double loops over (n, m) and (n, m, j) of the three genus-one terms."""
    c = [Fraction(0)] * (qmax + 1)
    c[0] = Fraction((-1) ** chat * c2a, 24)
    for n, N in N1.items():
        # m q^{mn} / (1 - q^{mn}) = sum_j m q^{jmn}
        for m in range(1, qmax + 1):
            for j in range(1, qmax + 1):
                d = j * m * sum(n)
                if d <= qmax:
                    c[d] -= n[a] * N * m
    for n, N in N0.items():
        for m in range(1, qmax + 1):
            d = m * sum(n)
            if d <= qmax:
                c[d] -= Fraction(n[a] * N, 12)
    return c


# --- anomaly ---------------------------------------------------------------------------


def manufactured_f1_quadrature(c, y0, ys):
    """F_1(y) with (1/4) F_1'' = c / y^2, F_1(y0) = F_1'(y0) = 0, by quadrature.

    F_1(y) = 4 int_{y0}^{y} (y - s) c / s^2 ds.
    """
    out = {}
    for y in ys:
        out[y] = 4 * mpmath.quad(lambda s: (y - s) * c / s**2, [y0, y])
    return out


# --- matrix model ----------------------------------------------------------------------


def heine_z(coeffs, N: int, lam: float, prec: int = 80):
    """c_N N! det[m_{i+j}] with moments m_k = int x^k exp(-W/lambda) dx."""
    with mpmath.workprec(prec):
        W = lambda x: sum(mpmath.mpf(c) * x**k for k, c in enumerate(coeffs))
        m = [mpmath.quad(lambda x, k=k: x**k * mpmath.exp(-W(x) / lam), [-mpmath.inf, 0, mpmath.inf])
             for k in range(2 * N - 1)]
        H = mpmath.matrix(N, N)
        for i in range(N):
            for j in range(N):
                H[i, j] = m[i + j]
        cN = mpmath.pi ** (mpmath.mpf(N * (N - 1)) / 2) / mpmath.fprod(mpmath.factorial(j) for j in range(1, N + 1))
        return float(cN * mpmath.factorial(N) * mpmath.det(H))


def monte_carlo_quartic_n2(g4: float, lam: float, samples: int, seed: int):
    """Z for W = x^2/2 + g4 x^4/4, N = 2, sampling the Gaussian part.

    Returns (estimate, standard error).
    """
    rng = np.random.default_rng(seed)
    x = rng.normal(0.0, math.sqrt(lam), size=(samples, 2))
    f = (x[:, 0] - x[:, 1]) ** 2 * np.exp(-g4 * (x**4).sum(axis=1) / (4 * lam))
    scale = (2 * math.pi * lam) * math.pi / 2  # Gaussian normalization times c_2
    return scale * f.mean(), scale * f.std(ddof=1) / math.sqrt(samples)
