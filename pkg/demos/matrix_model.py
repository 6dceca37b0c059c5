"""Hermitian matrix integrals reduced to eigenvalues.

The Gaussian case is compared with its closed form; the quartic case with a
Hankel determinant of one-dimensional moments; and -log Z is fitted in
powers of lambda along a family with lambda N fixed.
"""

import math

from topstring.matrix_model import PotentialSpec, mm_eigen_log_z, mm_eigen_z, mm_gaussian_exact, mm_thooft_fit

gauss = PotentialSpec.gaussian()
print("Gaussian: quadrature vs closed form")
for N in (1, 2, 3, 4):
    for lam in (0.5, 2.0):
        z, ref = mm_eigen_z(gauss, N, lam), mm_gaussian_exact(N, lam)
        print(f"  N={N} lambda={lam}: {z:.15g}  rel={abs(z / ref - 1):.1e}")

quartic = PotentialSpec.quartic(1.0)
print("\nquartic W = x^2/2 + x^4/4, lambda = 1")
for N in (1, 2, 3):
    print(f"  N={N}: Z = {mm_eigen_z(quartic, N, 1.0):.15g}")
print("  adding coupling lowers Z:", [f"{mm_eigen_z(PotentialSpec.quartic(g), 2, 1.0):.6f}" for g in (0, 0.5, 1, 2)])

print("\n't Hooft fit at t = lambda N = 1, N = 2, 3, 4")
family = [(N, 1.0 / N) for N in (2, 3, 4)]
vals = [-mm_eigen_log_z(quartic, N, lam) for N, lam in family]
for gmax in (0, 1, 2):
    fit = mm_thooft_fit(quartic, family, gmax, vals)
    print(f"  gmax={gmax}: coefficients {[round(c, 8) for c in fit.coefficients.values()]}  residual {fit.residual:.3g}")
print("  Gaussian check at t = 1.5:", [round(-math.log(mm_gaussian_exact(N, 1.5 / N)), 10) for N in (1, 2, 3)])
