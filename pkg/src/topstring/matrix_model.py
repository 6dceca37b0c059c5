"""Hermitian one-matrix integrals at small N.

Z(W, N, lambda) = c_N int prod dx_i Delta(x)^2 exp(-sum_i W(x_i) / lambda)

The angular constant is c_N = pi^{N(N-1)/2} / prod_{j=1}^N j!, fixed so that
W = x^2/2 reproduces the entrywise Gaussian value 2^{N/2} (pi lambda)^{N^2/2}.
The eigenvalue integral uses a tensor Gauss-Legendre rule on a window around
the minimum of W, doubling the node count until two rules agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "PotentialSpec",
    "NonConfiningError",
    "QuadratureError",
    "angular_constant",
    "mm_gaussian_exact",
    "mm_eigen_log_z",
    "mm_eigen_z",
    "ThooftFit",
    "mm_thooft_fit",
    "MAX_N",
]

MAX_N = 4
# integrand cut at exp(-WINDOW) relative to its peak
WINDOW = 60.0


class NonConfiningError(ValueError):
    pass


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PotentialSpec:
    """Polynomial W(x), coefficients lowest degree first."""

    coefficients: Tuple[float, ...]

    def __post_init__(self):
        c = [float(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        if len(c) < 3:
            raise ValueError(f"W must have degree >= 2, got coefficients {self.coefficients}")
        if c[-1] <= 0:
            raise ValueError(f"leading coefficient must be positive, got {c[-1]}")
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def gaussian(cls) -> "PotentialSpec":
        return cls((0.0, 0.0, 0.5))

    @classmethod
    def quartic(cls, g4: float) -> "PotentialSpec":
        """x^2/2 + g4 x^4/4."""
        return cls((0.0, 0.0, 0.5, 0.0, g4 / 4))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def confining(self) -> bool:
        return self.degree % 2 == 0

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coefficients)

    def minimum(self) -> float:
        """Location of the global minimum on the real line."""
        if not self.confining:
            raise NonConfiningError(f"odd-degree W is unbounded below: degree {self.degree}")
        dW = np.polynomial.polynomial.polyder(self.coefficients)
        roots = np.polynomial.polynomial.polyroots(dW)
        real = [r.real for r in roots if abs(r.imag) < 1e-9]
        return min(real, key=self)


def angular_constant(N: int) -> float:
    return math.pi ** (N * (N - 1) / 2) / math.prod(math.factorial(j) for j in range(1, N + 1))


def mm_gaussian_exact(N: int, lam: float) -> float:
    """2^{N/2} (pi lambda)^{N^2/2}."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return 2 ** (N / 2) * (math.pi * lam) ** (N * N / 2)


def _window(W: PotentialSpec, N: int, lam: float) -> Tuple[float, float]:
    x0 = W.minimum()
    w0 = W(x0)

    def excess(x):
        return (W(x) - w0) / lam - 2 * (N - 1) * math.log1p(abs(x - x0))

    bounds = []
    for sign in (-1, 1):
        step = 1.0
        while excess(x0 + sign * step) < WINDOW:
            step *= 2
            if step > 1e8:
                raise NonConfiningError("integrand does not decay")
        lo, hi = step / 2, step
        for _ in range(60):
            mid = (lo + hi) / 2
            if excess(x0 + sign * mid) < WINDOW:
                lo = mid
            else:
                hi = mid
        bounds.append(x0 + sign * hi)
    return bounds[0], bounds[1]


def _tensor_integral(W: PotentialSpec, N: int, lam: float, a: float, b: float, n: int) -> float:
    """Gauss-Legendre rule with n nodes per axis of Delta^2 exp(-(W - Wmin)/lambda)."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    x = (b - a) / 2 * nodes + (a + b) / 2
    w = weights * (b - a) / 2 * np.exp(-(W(x) - W(W.minimum())) / lam)
    if N == 1:
        return float(np.sum(w))
    # sum over the first axis in node order; remaining axes vectorized
    grids = np.meshgrid(*([x] * (N - 1)), indexing="ij")
    wgrid = np.ones_like(grids[0])
    for g in np.meshgrid(*([w] * (N - 1)), indexing="ij"):
        wgrid = wgrid * g
    rest = np.ones_like(grids[0])
    for i, j in combinations(range(N - 1), 2):
        rest = rest * (grids[i] - grids[j]) ** 2
    rest = rest * wgrid
    total = 0.0
    for x1, w1 in zip(x, w):
        v = np.ones_like(rest)
        for g in grids:
            v = v * (x1 - g) ** 2
        total += w1 * float(np.sum(v * rest))
    return total


def mm_eigen_log_z(
    W: PotentialSpec, N: int, lam: float, tol: float = 1e-12, max_nodes: Optional[int] = None
) -> float:
    """log Z by adaptive tensor quadrature."""
    if not 1 <= N <= MAX_N:
        raise ValueError(f"N must be in 1..{MAX_N}, got {N}")
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if not W.confining:
        raise NonConfiningError(f"W of odd degree {W.degree} is not confining; the integral diverges")
    a, b = _window(W, N, lam)
    max_nodes = max_nodes or (256 if N <= 3 else 128)
    n = 16
    prev = _tensor_integral(W, N, lam, a, b, n)
    while True:
        n *= 2
        if n > max_nodes:
            raise QuadratureError(f"no convergence to {tol} with {max_nodes} nodes per axis")
        cur = _tensor_integral(W, N, lam, a, b, n)
        if abs(cur - prev) <= tol * abs(cur):
            break
        prev = cur
    if cur <= 0:
        raise QuadratureError(f"non-positive integral {cur}")
    return math.log(angular_constant(N)) + math.log(cur) - N * W(W.minimum()) / lam


def mm_eigen_z(W: PotentialSpec, N: int, lam: float, tol: float = 1e-12) -> float:
    return math.exp(mm_eigen_log_z(W, N, lam, tol))


@dataclass(frozen=True)
class ThooftFit:
    """Coefficients c_g of -log Z ~ sum_g c_g lambda^{2g-2}."""

    coefficients: Dict[int, float]
    residual: float
    t: float
    lambdas: Tuple[float, ...]
    values: Tuple[float, ...]
    fitted: Tuple[float, ...] = field(default=())

    def evaluate(self, lam: float) -> float:
        return sum(c * lam ** (2 * g - 2) for g, c in self.coefficients.items())


def mm_thooft_fit(
    W: PotentialSpec,
    family: Sequence[Tuple[int, float]],
    gmax: int = 1,
    values: Optional[Sequence[float]] = None,
    rel_tol: float = 1e-12,
) -> ThooftFit:
    """Least-squares fit of -log Z over a family with lambda N fixed.

    ``values`` may supply -log Z directly; otherwise each point is integrated.
    """
    if gmax < 0:
        raise ValueError(f"gmax must be >= 0, got {gmax}")
    family = [(int(N), float(lam)) for N, lam in family]
    if len(family) < gmax + 1:
        raise ValueError(f"underdetermined: {len(family)} points for {gmax + 1} genera")
    if len(family) < 3:
        raise ValueError(f"need a family of at least 3 sizes, got {len(family)}")
    ts = [N * lam for N, lam in family]
    t = ts[0]
    if any(abs(x - t) > rel_tol * abs(t) for x in ts):
        raise ValueError(f"lambda N is not constant across the family: {ts}")
    if values is None:
        values = [-mm_eigen_log_z(W, N, lam) for N, lam in family]
    lams = np.array([lam for _, lam in family])
    A = np.column_stack([lams ** (2 * g - 2) for g in range(gmax + 1)])
    y = np.array(values, dtype=float)
    scale = np.linalg.norm(A, axis=0)
    sol, *_ = np.linalg.lstsq(A / scale, y, rcond=None)
    sol = sol / scale
    fitted = A @ sol
    return ThooftFit(
        {g: float(sol[g]) for g in range(gmax + 1)},
        float(np.linalg.norm(fitted - y)),
        t,
        tuple(lams),
        tuple(values),
        tuple(fitted),
    )
