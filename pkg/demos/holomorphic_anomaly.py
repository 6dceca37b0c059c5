"""Manufactured solution of the genus-one anomaly equation.

For the cubic model the right-hand side is c / y^2 with a constant c that
depends on chi, so F_1 = -4 c log y solves the equation exactly.  The finite
difference residual on a grid then measures discretization error only.
"""

import mpmath

from topstring.cli import manufactured_g1
from topstring.geometry import GridTooCoarseError, anomaly_residual_g1, anomaly_rhs_g

chi = -200
data, F1 = manufactured_g1(chi, mpmath.mpf("1e-4"), 41, 1, 128)
res = anomaly_residual_g1(data, F1, chi, tolerance=1e-6, prec=128)
print("41x41 grid, step 1e-4:")
print("  max residual", mpmath.nstr(res.max_residual, 4), " truncation estimate", mpmath.nstr(res.truncation_estimate, 4))

print("\nresidual as the step halves (9x9 grid)")
prev = None
for k in range(5):
    h = mpmath.mpf("1e-2") / 2**k
    d, f = manufactured_g1(chi, h, 9, 1, 128)
    r = anomaly_residual_g1(d, f, chi, prec=128).max_residual
    print(f"  h={mpmath.nstr(h, 4):>10}  residual={mpmath.nstr(r, 5):>12}" + (f"  ratio={mpmath.nstr(prev / r, 4)}" if prev else ""))
    prev = r

try:
    d, f = manufactured_g1(chi, mpmath.mpf("0.1"), 9, 1, 128)
    anomaly_residual_g1(d, f, chi, tolerance=1e-6, prec=128)
except GridTooCoarseError as exc:
    print("\ncoarse grid:", exc)

print("\ngenus two right-hand side with DF_1 = 3, DDF_1 = 2 and unit prefactor:",
      anomaly_rhs_g(2, {1: (0, 3, 2)}, prefactor=1))
