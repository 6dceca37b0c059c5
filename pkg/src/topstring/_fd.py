"""Central finite differences with one Richardson level.

``mixed_partial(f, x, dirs, h)`` approximates D_{d1} ... D_{dk} f(x), where each
D_d is the central difference along the displacement vector ``d``.  The
product stencil sums over all 2^k sign patterns, so repeated directions give
the usual wide stencils (e.g. [f(3h) - 3f(h) + 3f(-h) - f(-3h)] / (2h)^3).
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Sequence

import mpmath

from ._precision import check_step, default_step, workprec


def _stencil(f: Callable, x: Sequence, dirs: Sequence[Sequence], h):
    k = len(dirs)
    total = 0
    for signs in product((1, -1), repeat=k):
        pt = list(x)
        for s, d in zip(signs, dirs):
            for a, da in enumerate(d):
                if da:
                    pt[a] = pt[a] + s * h * da
        w = 1
        for s in signs:
            w *= s
        total += w * f(pt)
    return total / (2 * h) ** k


def mixed_partial(f: Callable, x: Sequence, dirs: Sequence[Sequence], h=None, prec=None, richardson=True):
    """Mixed directional derivative of ``f`` at ``x``.

    ``f`` takes a list of mpmath numbers.  Evaluation runs with guard bits
    sized to cancel the stencil's 1/h^k roundoff amplification.
    """
    prec = prec or mpmath.mp.prec
    order = len(dirs)
    if order == 0:
        return f(list(x))
    h = default_step(prec, order) if h is None else mpmath.mpf(h)
    guard = int(-mpmath.log(h, 2) * order) + 32
    with workprec(prec + guard):
        check_step(h, order, prec + guard)
        d1 = _stencil(f, x, dirs, h)
        if not richardson:
            return d1
        d2 = _stencil(f, x, dirs, h / 2)
        return (4 * d2 - d1) / 3


def unit(n: int, a: int, scale=1):
    v = [0] * n
    v[a] = scale
    return v
