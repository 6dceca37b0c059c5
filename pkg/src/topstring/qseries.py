"""Truncated power series, the Dedekind eta function and Li_{-m} in closed form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, List, Optional, Sequence, Tuple

import mpmath

from ._precision import DEFAULT_PREC, to_mpc, workprec
from .exact import ExactScalar, poly_eval, zeta_int

__all__ = [
    "SeriesError",
    "TruncatedSeries",
    "series_algebra",
    "dedekind_eta",
    "eta_truncation_bound",
    "polylog_neg",
    "eulerian_numerator",
    "MuExpansion",
    "polylog_neg_mu_coeffs",
]


class SeriesError(ValueError):
    """A series operation precondition failed at a specific coefficient."""

    def __init__(self, op: str, index: int, value: Any, reason: str):
        self.op = op
        self.index = index
        self.value = value
        super().__init__(f"{op}: coefficient [{index}] = {value}: {reason}")


def _is_zero(c) -> bool:
    return c == 0


class TruncatedSeries:
    """Power series a_0 + a_1 x + ... + a_order x^order, known only to ``order``.

    Coefficients may be ints, Fractions, :class:`ExactScalar` or mpmath
    numbers.  Binary operations produce a result at the smaller of the two
    orders; nothing ever extends the order silently.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs: Sequence, order: Optional[int] = None, var: str = "q"):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self._c: Tuple = tuple(coeffs)
        self.var = var

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1, var: str = "q"):
        c = [0] * (order + 1)
        if power <= order:
            c[power] = coeff
        return cls(c, order, var)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> List:
        return list(self._c)

    def __getitem__(self, n):
        return self._c[n]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __repr__(self):
        return f"TruncatedSeries({list(self._c)!r}, order={self.order}, var={self.var!r})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self._c, other._c)
        )

    __hash__ = None

    def _common(self, other: "TruncatedSeries") -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = list(self._c)
            c[0] = c[0] + other
            return TruncatedSeries(c, self.order, self.var)
        n = self._common(other)
        return TruncatedSeries(
            [self._c[k] + other._c[k] for k in range(n + 1)], n, self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self._c], self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self._c], self.order, self.var)
        n = self._common(other)
        a, b = self._c, other._c
        out = []
        for k in range(n + 1):
            acc = 0
            for j in range(k + 1):
                if not _is_zero(a[j]) and not _is_zero(b[k - j]):
                    acc = acc + a[j] * b[k - j]
            out.append(acc)
        return TruncatedSeries(out, n, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.invert()
        return TruncatedSeries([c / other for c in self._c], self.order, self.var)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = TruncatedSeries.monomial(0, self.order, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "TruncatedSeries":
        """d/dx; the top coefficient is unknown afterwards, so order drops by one."""
        if self.order == 0:
            raise SeriesError("derivative", 0, self._c[0], "order-0 series")
        return TruncatedSeries(
            [k * self._c[k] for k in range(1, self.order + 1)], self.order - 1, self.var
        )

    def x_derivative(self) -> "TruncatedSeries":
        """x d/dx, which keeps the order."""
        return TruncatedSeries([k * c for k, c in enumerate(self._c)], self.order, self.var)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(x)); ``inner`` must have zero constant term."""
        if not _is_zero(inner[0]):
            raise SeriesError("compose", 0, inner[0], "inner series needs zero constant term")
        n = self._common(inner)
        inner = TruncatedSeries(inner.coeffs, n, inner.var)
        acc = TruncatedSeries.monomial(0, n, self._c[n], inner.var)
        for k in range(n - 1, -1, -1):
            acc = acc * inner + self._c[k]
        return acc

    def invert(self) -> "TruncatedSeries":
        a = self._c
        if _is_zero(a[0]):
            raise SeriesError("invert", 0, a[0], "constant term must be nonzero")
        inv0 = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
        b = [inv0]
        for n in range(1, self.order + 1):
            acc = 0
            for k in range(1, n + 1):
                if not _is_zero(a[k]):
                    acc = acc + a[k] * b[n - k]
            b.append(-(acc * inv0))
        return TruncatedSeries(b, self.order, self.var)

    def log(self) -> "TruncatedSeries":
        """log of a series with unit constant term."""
        f = self._c
        if f[0] != 1:
            raise SeriesError("log", 0, f[0], "constant term must be 1")
        g = [0]
        for n in range(1, self.order + 1):
            acc = n * f[n]
            for k in range(1, n):
                if not _is_zero(g[k]) and not _is_zero(f[n - k]):
                    acc = acc - k * g[k] * f[n - k]
            g.append(_div_int(acc, n))
        return TruncatedSeries(g, self.order, self.var)

    def exp(self) -> "TruncatedSeries":
        """exp of a series; exact coefficient types need a zero constant term."""
        f = self._c
        if _is_zero(f[0]):
            g0 = 1
        elif isinstance(f[0], (mpmath.mpf, mpmath.mpc)):
            g0 = mpmath.exp(f[0])
        else:
            raise SeriesError("exp", 0, f[0], "exact exp needs zero constant term")
        g = [g0]
        for n in range(1, self.order + 1):
            acc = 0
            for k in range(1, n + 1):
                if not _is_zero(f[k]):
                    acc = acc + k * f[k] * g[n - k]
            g.append(_div_int(acc, n))
        return TruncatedSeries(g, self.order, self.var)

    def evaluate(self, x):
        return poly_eval(self._c, x)


def _div_int(x, n: int):
    if isinstance(x, int):
        return Fraction(x, n)
    return x / n


_UNARY = ("log", "exp", "invert")


def series_algebra(a: TruncatedSeries, b: Optional[TruncatedSeries], op: str) -> TruncatedSeries:
    """Dispatch ``op`` in {add, mul, compose, log, exp, invert}.

    ``compose`` computes a(b(x)); unary operations ignore ``b``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compose":
        return a.compose(b)
    if op in _UNARY:
        return getattr(a, op)()
    raise ValueError(f"unknown series operation {op!r}")


# --- Dedekind eta ------------------------------------------------------------


def eta_truncation_bound(tau, terms: int, prec: int = DEFAULT_PREC):
    """Relative error bound of the ``terms``-factor product.

    The omitted tail prod_{n>terms}(1-q^n) differs from 1 by at most
    |q|^{terms+1} / (1-|q|) up to second-order terms.
    """
    with workprec(prec):
        aq = mpmath.exp(-2 * mpmath.pi * to_mpc(tau).imag)
        return aq ** (terms + 1) / (1 - aq)


def dedekind_eta(tau, terms: int = 50, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """eta(tau) = q^{1/24} prod_{n=1}^{terms} (1 - q^n), q = exp(2 pi i tau).

    q^{1/24} is taken as exp(2 pi i tau / 24), i.e. defined on the upper half
    plane rather than through a root of q.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    with workprec(prec):
        tau = to_mpc(tau)
        if tau.imag <= 0:
            raise ValueError(f"dedekind_eta needs Im(tau) > 0, got {tau}")
        two_pi_i_tau = 2j * mpmath.pi * tau
        q = mpmath.exp(two_pi_i_tau)
        prod = mpmath.mpc(1)
        qn = mpmath.mpc(1)
        for _ in range(terms):
            qn *= q
            prod *= 1 - qn
        return +(mpmath.exp(two_pi_i_tau / 24) * prod)


# --- Negative-order polylogarithms ---------------------------------------------


@lru_cache(maxsize=None)
def eulerian_numerator(m: int) -> Tuple[Fraction, ...]:
    """P_m with Li_{-m}(q) = P_m(q) / (1 - q)^{m+1}, coefficients lowest first.

    Built by applying q d/dq to q/(1-q) ``m`` times:
    q d/dq [P/(1-q)^e] = [q P' (1-q) + e q P] / (1-q)^{e+1}.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return (Fraction(0), Fraction(1))
    p = list(eulerian_numerator(m - 1))
    e = m
    out = [Fraction(0)] * (len(p) + 1)
    for k, c in enumerate(p):
        # q P' (1 - q) contributes k c q^k - k c q^{k+1}; e q P contributes e c q^{k+1}
        out[k] += k * c
        out[k + 1] += (e - k) * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def polylog_neg(m: int, q, prec: int = DEFAULT_PREC):
    """Li_{-m}(q) = sum_{n>=1} n^m q^n as a closed rational function.

    Exact for int/Fraction ``q`` (any q != 1, i.e. the analytic continuation);
    numeric ``q`` needs |q| < 1 only for agreement with the series itself.
    """
    if m < 0:
        raise ValueError(f"order must be non-negative, got {m}")
    num = eulerian_numerator(m)
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        if q == 1:
            raise ZeroDivisionError("Li_{-m} has a pole at q = 1")
        return poly_eval(num, q) / (1 - q) ** (m + 1)
    with workprec(prec):
        q = to_mpc(q)
        if q == 1:
            raise ZeroDivisionError("Li_{-m} has a pole at q = 1")
        return poly_eval([mpmath.mpf(c.numerator) / c.denominator for c in num], q) / (
            1 - q
        ) ** (m + 1)


@dataclass(frozen=True)
class MuExpansion:
    """Li_{3-2g}(e^mu) = polar_coeff * mu^polar_power + sum_j coeffs[j] mu^j."""

    g: int
    coeffs: List[ExactScalar]
    polar_coeff: Fraction
    polar_power: int


def polylog_neg_mu_coeffs(g: int, jmax: int) -> MuExpansion:
    """Expansion of Li_{3-2g}(e^mu) around mu = 0.

    The regular part has coefficients zeta(3-2g-j)/j!; the single polar term
    Gamma(2g-2) mu^{2-2g} is kept apart from them.
    """
    if g < 2:
        raise ValueError(f"g must be >= 2, got {g}")
    if jmax < 0:
        raise ValueError(f"jmax must be >= 0, got {jmax}")
    coeffs = [zeta_int(3 - 2 * g - j) / factorial(j) for j in range(jmax + 1)]
    return MuExpansion(g, coeffs, Fraction(factorial(2 * g - 3)), 2 - 2 * g)
