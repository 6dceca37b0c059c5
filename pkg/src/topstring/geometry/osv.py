"""Right-hand side of the black-hole / topological-string relation.

Evaluates |exp(-F(X))|^2 = exp(-2 Re F(X)) at the attractor point
X^I = p^I + i phi^I.  The exponent is kept in log space, so huge values come
back as mpf without overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath

from .._precision import DEFAULT_PREC, workprec

__all__ = ["OSVCharges", "OSVDivergenceError", "attractor_periods", "osv_log_assemble", "osv_assemble"]


class OSVDivergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class OSVCharges:
    """Magnetic charges ``p`` and electric potentials ``phi``."""

    p: tuple
    phi: tuple

    def __post_init__(self):
        if len(self.p) != len(self.phi):
            raise ValueError(f"p and phi must have equal length, got {len(self.p)} and {len(self.phi)}")
        if not self.p:
            raise ValueError("empty charge vector")
        if any(int(x) != x for x in self.p):
            raise ValueError(f"magnetic charges must be integers: {self.p}")
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        object.__setattr__(self, "phi", tuple(self.phi))


def attractor_periods(charges: OSVCharges) -> list:
    return [mpmath.mpc(p, mpmath.mpf(phi)) for p, phi in zip(charges.p, charges.phi)]


def osv_log_assemble(F_total: Callable[[Sequence], object], charges: OSVCharges, prec: int = DEFAULT_PREC):
    """log |exp(-F)|^2 = -2 Re F at X = p + i phi."""
    with workprec(prec):
        X = attractor_periods(charges)
        try:
            F = mpmath.mpmathify(F_total(X))
        except ZeroDivisionError as exc:
            raise OSVDivergenceError(f"F diverges at X = {X}") from exc
        if not mpmath.isfinite(F):
            raise OSVDivergenceError(f"F is not finite at X = {X}: {F}")
        return -2 * mpmath.re(F)


def osv_assemble(F_total: Callable[[Sequence], object], charges: OSVCharges, prec: int = DEFAULT_PREC):
    """|exp(-F(p + i phi))|^2 as a real mpf."""
    with workprec(prec):
        return mpmath.exp(osv_log_assemble(F_total, charges, prec))
