"""Special geometry of a one-modulus cubic model and a small GW table.

The cubic prepotential F = t^3 has e^{-K} = 8 (Im t)^3, metric 3/(4 (Im t)^2)
and constant Yukawa coupling 6.  The GW part reads invariants from JSON and
builds the quantum Yukawa coupling and the genus-one series.
"""

from fractions import Fraction
from pathlib import Path

import mpmath

from topstring.geometry import (
    OSVCharges,
    PrepotentialSpec,
    euler_check,
    genus1_gw_series,
    kahler_metric,
    kahler_potential,
    load_gw_table,
    osv_assemble,
    quantum_yukawa,
    quantum_yukawa_series,
)

F = PrepotentialSpec(evaluator=lambda X: X[1] ** 3 / X[0], flat_form=lambda t: t[0] ** 3)
print("Euler relation X^I F_I = 2F at X = (1, 0.3+1.1i):",
      mpmath.nstr(euler_check(F, [1, mpmath.mpc(0.3, 1.1)]).abs_dev, 3))
for t in (1j, 2j, 0.7 + 1.5j):
    K, _ = kahler_potential(F, [t])
    data = kahler_metric(F, [t])
    print(f"  t={t}: e^-K={mpmath.nstr(mpmath.exp(-K), 12)}  G={mpmath.nstr(data.G[0, 0].real, 12)}"
          f"  C={mpmath.nstr(data.C[0, 0, 0].real, 12)}")

table = load_gw_table(Path(__file__).resolve().parent.parent / "tests" / "data" / "gw_one_modulus.json")
print("\nquantum Yukawa coupling from the table")
print("  q-expansion:", [str(c) for c in quantum_yukawa_series(table, 6).coeffs])
print("  at q = 1/10 exactly:", quantum_yukawa(table, q=[Fraction(1, 10)])[0, 0, 0])
print("  at t = 1.2i:", mpmath.nstr(quantum_yukawa(table, t=[1.2j])[0, 0, 0].real, 20))
print("genus-one series:", [str(c) for c in genus1_gw_series(table, 5)[0].coeffs])

print("\n|exp(-F)|^2 at the attractor point X = p + i phi, F = -X1^2/X0")
print("  p=(1,1), phi=(0,2):", mpmath.nstr(osv_assemble(lambda X: -X[1] ** 2 / X[0], OSVCharges((1, 1), (0, 2))), 15))
