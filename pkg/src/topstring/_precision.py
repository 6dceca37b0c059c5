"""Working-precision handling on top of mpmath's process-wide context.

mpmath keeps its precision in a single global context, so every numeric entry
point enters :func:`workprec`, which serializes precision changes behind one
re-entrant lock.  Values returned to callers keep the mantissa they were
computed with.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager

import mpmath

DEFAULT_PREC = 256

_lock = threading.RLock()


class StepSizeError(ValueError):
    """Finite-difference step incompatible with the point or the precision."""


@contextmanager
def workprec(bits: int):
    if bits < 16:
        raise ValueError(f"precision must be at least 16 bits, got {bits}")
    with _lock, mpmath.workprec(int(bits)):
        yield


def default_step(prec: int, order: int) -> mpmath.mpf:
    """Finite-difference step for an order-``order`` derivative.

    Central differences with one Richardson level leave O(h^4) truncation and
    O(eps / h^order) roundoff; 2^{-p/(order+4)} balances the two.
    """
    return mpmath.ldexp(mpmath.mpf(1), -(prec // (order + 4)))


def check_step(step, order: int, prec: int, scale=None, truncation_order: int = 2):
    """Reject steps where roundoff would swamp truncation error.

    Roundoff of an order-``order`` stencil grows like 2^{-prec} / h^order and
    truncation like h^truncation_order, so we need
    h^(order + truncation_order) > 2^{-prec}.  ``scale`` bounds the step from
    above (distance to the domain boundary).
    """
    step = mpmath.mpf(step)
    if step <= 0:
        raise StepSizeError(f"step must be positive, got {step}")
    if scale is not None and step >= scale:
        raise StepSizeError(f"step {mpmath.nstr(step, 5)} too large for scale {mpmath.nstr(scale, 5)}")
    floor = mpmath.ldexp(mpmath.mpf(1), -prec)
    if step ** (order + truncation_order) <= floor:
        raise StepSizeError(
            f"step {mpmath.nstr(step, 5)} below the roundoff floor at {prec} bits"
        )
    return step


def to_mpc(x) -> mpmath.mpc:
    if isinstance(x, (mpmath.mpc, complex)):
        return mpmath.mpc(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    return mpmath.mpc(x)
