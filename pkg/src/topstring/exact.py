"""Exact rational constants: Bernoulli numbers, zeta at integers, divisor and
power sums, and the moduli-space constants chi_g and the c_{g-1}^3 Hodge integral.

Rationals are :class:`fractions.Fraction`.  Quantities that carry powers of
pi or of the imaginary unit are :class:`ExactScalar` monomials, so identities
such as the pi-cancellation inside the Hodge integral are checked as exact
equalities rather than to a tolerance.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional, Sequence, Union

__all__ = [
    "Rational",
    "ExactScalar",
    "ExactArithmeticError",
    "bernoulli",
    "zeta_int",
    "sigma1",
    "weighted_power_sum",
    "poly_eval",
    "chi_g",
    "hodge_c3",
]

Rational = Fraction
RationalLike = Union[int, Fraction]


class ExactArithmeticError(ValueError):
    """Raised for out-of-range indices or sums that leave a single monomial."""


@dataclass(frozen=True)
class ExactScalar:
    """``coeff * pi**pi_power * i**i_power`` with ``i_power`` in {0, 1}.

    Even powers of ``i`` are folded into the sign of ``coeff`` on construction,
    and zero is normalized to ``(0, 0, 0)`` so equality is structural.
    """

    coeff: Fraction
    pi_power: int = 0
    i_power: int = 0

    def __post_init__(self):
        c = Fraction(self.coeff)
        ip = self.i_power % 4
        if ip >= 2:
            c = -c
            ip -= 2
        if c == 0:
            object.__setattr__(self, "coeff", Fraction(0))
            object.__setattr__(self, "pi_power", 0)
            object.__setattr__(self, "i_power", 0)
            return
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "pi_power", int(self.pi_power))
        object.__setattr__(self, "i_power", ip)

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot treat {type(x).__name__} as an exact scalar")

    @classmethod
    def i(cls) -> "ExactScalar":
        return cls(Fraction(1), 0, 1)

    @classmethod
    def pi(cls, power: int = 1) -> "ExactScalar":
        return cls(Fraction(1), power, 0)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.pi_power == 0 and self.i_power == 0

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ExactArithmeticError(f"{self} is not a rational number")
        return self.coeff

    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if (self.pi_power, self.i_power) != (other.pi_power, other.i_power):
            raise ExactArithmeticError(
                f"sum of different monomials: {self} + {other}"
            )
        return ExactScalar(self.coeff + other.coeff, self.pi_power, self.i_power)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.coeff, self.pi_power, self.i_power)

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(
            self.coeff * other.coeff,
            self.pi_power + other.pi_power,
            self.i_power + other.i_power,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of exact zero")
        # 1/i = -i
        return ExactScalar(1 / self.coeff, -self.pi_power, -self.i_power)

    def __truediv__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return ExactScalar(self.coeff**n, self.pi_power * n, self.i_power * n)

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.coeff, self.pi_power, self.i_power) == (
            other.coeff,
            other.pi_power,
            other.i_power,
        )

    def __hash__(self):
        return hash((self.coeff, self.pi_power, self.i_power))

    def to_complex(self, prec: int = 256):
        """Numerical value as an ``mpmath.mpc`` at ``prec`` bits."""
        import mpmath

        with mpmath.workprec(prec):
            v = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            v *= mpmath.pi**self.pi_power
            return mpmath.mpc(0, v) if self.i_power else mpmath.mpc(v, 0)

    def __str__(self):
        parts = [str(self.coeff)]
        if self.pi_power:
            parts.append("pi" if self.pi_power == 1 else f"pi^{self.pi_power}")
        if self.i_power:
            parts.append("i")
        return "*".join(parts)


# --- Bernoulli numbers -----------------------------------------------------

_lock = threading.Lock()
_bernoulli: List[Fraction] = [Fraction(1)]


def _extend_bernoulli(n: int) -> None:
    # Akiyama-Tanigawa produces B_1 = +1/2; the table stores the modern B_1 = -1/2.
    with _lock:
        if n < len(_bernoulli):
            return
        n = max(n, 2 * len(_bernoulli))
        a = [Fraction(0)] * (n + 1)
        table = []
        for m in range(n + 1):
            a[m] = Fraction(1, m + 1)
            for j in range(m, 0, -1):
                a[j - 1] = j * (a[j - 1] - a[j])
            table.append(-a[0] if m == 1 else a[0])
        # publish in one assignment so readers never see a half-built table
        _bernoulli[:] = table


def bernoulli(n: int, convention: str = "modern") -> Fraction:
    """Bernoulli number.

    ``convention="modern"`` gives B_n with B_1 = -1/2.  ``"classical_abs"``
    gives the older indexing |B_{2n}| (B_1 = 1/6, B_2 = 1/30, ...), which is
    the one used in the moduli-space Euler characteristic formula.
    """
    if n < 0:
        raise ExactArithmeticError(f"Bernoulli index must be >= 0, got {n}")
    if convention == "classical_abs":
        if n == 0:
            raise ExactArithmeticError("classical Bernoulli numbers start at index 1")
        return abs(bernoulli(2 * n))
    if convention != "modern":
        raise ValueError(f"unknown Bernoulli convention {convention!r}")
    if n >= 3 and n % 2:
        return Fraction(0)
    if n >= len(_bernoulli):
        _extend_bernoulli(n)
    return _bernoulli[n]


def zeta_int(s: int) -> ExactScalar:
    """Riemann zeta at an even positive or a non-positive integer, exactly."""
    if s == 0:
        return ExactScalar(Fraction(-1, 2))
    if s < 0:
        n = -s
        return ExactScalar(-bernoulli(n + 1) / (n + 1))
    if s == 1:
        raise ZeroDivisionError("zeta has a pole at s = 1")
    if s % 2:
        raise ExactArithmeticError(f"zeta({s}) at odd s >= 3 has no closed form")
    m = s // 2
    c = (-1) ** (m + 1) * bernoulli(2 * m) * Fraction(2**s, 2 * factorial(2 * m))
    return ExactScalar(c, s)


def sigma1(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    if n < 1:
        raise ExactArithmeticError(f"sigma1 needs n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


def _power_sum_poly(p: int) -> List[Fraction]:
    """Coefficients of sum_{s=0}^{N-1} s^p as a polynomial in N (Faulhaber)."""
    coeffs = [Fraction(0)] * (p + 2)
    for j in range(p + 1):
        coeffs[p + 1 - j] += comb(p + 1, j) * bernoulli(j) / (p + 1)
    return coeffs


def poly_eval(coeffs: Sequence[RationalLike], x):
    """Horner evaluation, lowest-degree coefficient first."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def weighted_power_sum(
    m: int, N: Optional[RationalLike] = None
) -> Union[List[Fraction], Fraction]:
    """W_m(N) = sum_{s=1}^{N-1} (N - s) s^{2m}.

    With ``N=None`` returns the exact polynomial in N (coefficient list, index
    equals power, length 2m+3); otherwise its value at ``N``.
    """
    if m < 0:
        raise ExactArithmeticError(f"m must be >= 0, got {m}")
    p = 2 * m
    # N * sum s^p - sum s^{p+1}; Faulhaber counts 0**0 = 1 at s = 0 when p = 0
    sp = _power_sum_poly(p)
    sp1 = _power_sum_poly(p + 1)
    if p == 0:
        sp[0] -= 1
    poly = [Fraction(0)] * (p + 3)
    for j, c in enumerate(sp):
        poly[j + 1] += c
    for j, c in enumerate(sp1):
        poly[j] -= c
    if N is None:
        return poly
    return Fraction(poly_eval(poly, Fraction(N)))


def chi_g(g: int) -> Fraction:
    """Orbifold Euler characteristic of the moduli space of genus-g curves."""
    if g < 2:
        raise ExactArithmeticError(f"chi_g needs g >= 2, got {g}")
    return Fraction((-1) ** (g - 1), 2 * g * (2 * g - 2)) * bernoulli(
        g, "classical_abs"
    )


def hodge_c3(g: int, exact: bool = False) -> Union[Fraction, ExactScalar]:
    """Integral of c_{g-1}^3 over the moduli space of genus-g curves.

    Evaluated as (-1)^{g-1} (2 pi)^{2-2g} 2 zeta(2g-2) chi_g in exact monomial
    arithmetic; the powers of pi cancel identically.  ``exact=True`` returns
    the :class:`ExactScalar` itself.
    """
    if g < 2:
        raise ExactArithmeticError(f"hodge_c3 needs g >= 2, got {g}")
    two_pi = ExactScalar(Fraction(2), 1)
    val = (
        ExactScalar(Fraction((-1) ** (g - 1)))
        * two_pi ** (2 - 2 * g)
        * 2
        * zeta_int(2 * g - 2)
        * chi_g(g)
    )
    if exact:
        return val
    return val.to_rational()
