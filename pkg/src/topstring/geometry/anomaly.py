"""Holomorphic-anomaly residuals on one-modulus grids.

Fields are sampled on a uniform square grid t = origin + h (i_x + i i_y), stored
as arrays indexed ``[i_x, i_y]``.  Derivatives are Wirtinger,
d = (d_x - i d_y)/2, so d dbar = (d_x^2 + d_y^2)/4, matching the metric
convention G = d dbar K used by :func:`kahler_metric`.

Genus one::

    d dbar F_1 = 1/2 |C|^2 e^{2K} G^{-2} - (chi/24 - 1) G

Higher genus (one modulus)::

    dbar F_g = 1/2 Cbar e^{2K} G^{-2} (D D F_{g-1} + sum_{r=1}^{g-1} D F_r D F_{g-r})

Covariant derivative on a section of L^w carrying r lower indices::

    D f = d f + w (dK) f - r (d log G) f

with w = 2 - 2g for F_g.  One modulus means the Christoffel symbol is d log G.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Tuple

import mpmath
import numpy as np

from .._precision import DEFAULT_PREC, to_mpc, workprec

__all__ = [
    "KahlerField",
    "GridTooCoarseError",
    "MissingLowerGenusError",
    "ResidualResult",
    "kahler_field",
    "sample_field",
    "wirtinger",
    "laplacian",
    "anomaly_rhs_g1",
    "anomaly_residual_g1",
    "covariant_derivative",
    "anomaly_prefactor",
    "anomaly_rhs_g",
]


class GridTooCoarseError(ValueError):
    def __init__(self, estimate, tolerance, step):
        self.estimate, self.tolerance, self.step = estimate, tolerance, step
        super().__init__(
            f"grid too coarse: truncation estimate {mpmath.nstr(estimate, 5)} exceeds "
            f"tolerance {tolerance} at step {mpmath.nstr(step, 5)}; refine the grid"
        )


class MissingLowerGenusError(KeyError):
    def __init__(self, r: int, what: str = "entry"):
        self.r = r
        super().__init__(f"lower-genus {what} missing for r = {r}")

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class KahlerField:
    """K, G and C sampled on a uniform grid with spacing ``step``."""

    K: np.ndarray
    G: np.ndarray
    C: np.ndarray
    step: object
    origin: object = 0

    def __post_init__(self):
        if not (self.K.shape == self.G.shape == self.C.shape):
            raise ValueError("K, G, C must share one grid shape")
        if len(self.K.shape) != 2 or min(self.K.shape) < 3:
            raise ValueError(f"need a 2-D grid of at least 3x3 points, got {self.K.shape}")

    @property
    def Cbar(self) -> np.ndarray:
        return _map(mpmath.conj, self.C)

    @property
    def shape(self):
        return self.K.shape


def _map(fn, arr: np.ndarray) -> np.ndarray:
    return np.vectorize(fn, otypes=[object])(arr)


def sample_field(fn: Callable, origin, step, n: int, prec: int = DEFAULT_PREC) -> np.ndarray:
    """fn(t) on the n x n grid t = origin + step (i_x + i i_y)."""
    with workprec(prec):
        origin, step = to_mpc(origin), mpmath.mpf(step)
        out = np.empty((n, n), dtype=object)
        for ix in range(n):
            for iy in range(n):
                out[ix, iy] = fn(origin + step * mpmath.mpc(ix, iy))
        return out


def kahler_field(K_fn, G_fn, C_fn, origin, step, n: int, prec: int = DEFAULT_PREC) -> KahlerField:
    """Sample analytic K, G, C on an n x n grid."""
    return KahlerField(
        sample_field(K_fn, origin, step, n, prec),
        sample_field(G_fn, origin, step, n, prec),
        sample_field(C_fn, origin, step, n, prec),
        mpmath.mpf(step),
        to_mpc(origin),
    )


def _partial(arr: np.ndarray, axis: int, h) -> np.ndarray:
    """Second-order first derivative; central inside, one-sided on the edges."""
    a = np.moveaxis(arr, axis, 0)
    out = np.empty_like(a)
    out[1:-1] = (a[2:] - a[:-2]) / (2 * h)
    out[0] = (-3 * a[0] + 4 * a[1] - a[2]) / (2 * h)
    out[-1] = (3 * a[-1] - 4 * a[-2] + a[-3]) / (2 * h)
    return np.moveaxis(out, 0, axis)


def wirtinger(arr: np.ndarray, h, conjugate: bool = False) -> np.ndarray:
    """d = (d_x - i d_y)/2, or dbar = (d_x + i d_y)/2 with ``conjugate``."""
    s = 1j if conjugate else -1j
    return (_partial(arr, 0, h) + s * _partial(arr, 1, h)) / 2


def laplacian(arr: np.ndarray, h, stride: int = 1) -> np.ndarray:
    """Five-point flat Laplacian at spacing stride*h on interior points.

    The result has the input's shape with ``None`` where the stencil does
    not fit.
    """
    s = stride
    out = np.full(arr.shape, None, dtype=object)
    H = s * h
    out[s:-s, s:-s] = (
        arr[2 * s:, s:-s] + arr[:-2 * s, s:-s] + arr[s:-s, 2 * s:] + arr[s:-s, :-2 * s]
        - 4 * arr[s:-s, s:-s]
    ) / H**2
    return out


def anomaly_rhs_g1(C, Cbar, K, G, chi):
    """1/2 C Cbar e^{2K} G^{-2} - (chi/24 - 1) G, pointwise."""
    return C * Cbar * mpmath.exp(2 * K) / (2 * G**2) - (mpmath.mpf(chi) / 24 - 1) * G


@dataclass(frozen=True)
class ResidualResult:
    max_residual: object
    residuals: np.ndarray
    truncation_estimate: object = None


def anomaly_residual_g1(
    data: KahlerField,
    F1: np.ndarray,
    chi: int,
    tolerance: Optional[float] = None,
    prec: int = DEFAULT_PREC,
) -> ResidualResult:
    """|d dbar F_1 - RHS| on interior grid points.

    d dbar F_1 is a quarter of the five-point Laplacian.  With ``tolerance``
    set, the O(h^2) truncation error of d dbar F_1 is estimated by Richardson
    as |L_h - L_2h|/12 (a third of the Laplacian difference, quartered) where
    both stencils fit; if that exceeds the tolerance the grid is too coarse
    and :class:`GridTooCoarseError` is raised.
    """
    if F1.shape != data.shape:
        raise ValueError(f"F1 grid {F1.shape} does not match Kahler grid {data.shape}")
    h = data.step
    with workprec(prec):
        lhs = laplacian(F1, h)
        rhs = np.full(F1.shape, None, dtype=object)
        res = np.full(F1.shape, None, dtype=object)
        worst = mpmath.mpf(0)
        nx, ny = F1.shape
        for ix in range(1, nx - 1):
            for iy in range(1, ny - 1):
                C = data.C[ix, iy]
                rhs[ix, iy] = anomaly_rhs_g1(C, mpmath.conj(C), data.K[ix, iy], data.G[ix, iy], chi)
                r = abs(lhs[ix, iy] / 4 - rhs[ix, iy])
                res[ix, iy] = r
                worst = max(worst, r)
        estimate = None
        if tolerance is not None:
            if min(nx, ny) < 5:
                raise GridTooCoarseError(mpmath.inf, tolerance, h)
            wide = laplacian(F1, h, stride=2)
            estimate = max(
                abs(lhs[ix, iy] - wide[ix, iy]) / 12
                for ix in range(2, nx - 2)
                for iy in range(2, ny - 2)
            )
            if estimate > tolerance:
                raise GridTooCoarseError(estimate, tolerance, h)
    return ResidualResult(worst, res, estimate)


def covariant_derivative(f: np.ndarray, data: KahlerField, weight, rank: int = 0) -> np.ndarray:
    """D f = d f + weight (dK) f - rank (d log G) f on the grid."""
    h = data.step
    dK = wirtinger(data.K, h)
    dlogG = wirtinger(_map(mpmath.log, data.G), h)
    return wirtinger(f, h) + weight * dK * f - rank * dlogG * f


def anomaly_prefactor(data: KahlerField) -> np.ndarray:
    """Cbar e^{2K} G^{-2} on the grid."""
    return data.Cbar * _map(mpmath.exp, 2 * data.K) / data.G**2


def anomaly_rhs_g(
    g: int,
    lower: Mapping[int, Tuple],
    data: Optional[KahlerField] = None,
    prefactor=None,
):
    """1/2 P (DD F_{g-1} + sum_r DF_r DF_{g-r}) with P = Cbar e^{2K} G^{-2}.

    ``lower[r]`` is (F_r, D F_r, DD F_r); DD is only read for r = g - 1.
    Entries may be scalars or grid arrays.  ``prefactor`` overrides P;
    otherwise it is built from ``data``.
    """
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    for r in range(1, g):
        if r not in lower or lower[r] is None:
            raise MissingLowerGenusError(r)
    dd = lower[g - 1][2] if len(lower[g - 1]) > 2 else None
    if dd is None:
        raise MissingLowerGenusError(g - 1, "second covariant derivative")
    if prefactor is None:
        if data is None:
            raise ValueError("pass KahlerField data or an explicit prefactor")
        prefactor = anomaly_prefactor(data)
    total = dd
    for r in range(1, g):
        total = total + lower[r][1] * lower[g - r][1]
    return prefactor * total / 2
