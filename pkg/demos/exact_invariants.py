"""Bernoulli numbers, zeta values and the genus-g invariants built from them.

Everything here is a Fraction; no floating point is involved.
"""

from topstring.exact import bernoulli, chi_g, hodge_c3, zeta_int

print("B_n for n = 0..12")
print("  ", [str(bernoulli(n)) for n in range(13)])

print("\nzeta at negative odd integers, zeta(1 - 2g)")
for g in range(1, 7):
    print(f"  g={g}: {zeta_int(1 - 2 * g)}")

print("\nchi_g = zeta(1-2g)/(2-2g) and the lambda_{g-1}^3 Hodge integral")
print(f"  {'g':>2}  {'chi_g':>14}  {'hodge_c3':>24}")
for g in range(2, 9):
    print(f"  {g:>2}  {str(chi_g(g)):>14}  {str(hodge_c3(g)):>24}")

# the even zeta values carry pi^{2n}; ExactScalar keeps the power separate
print("\nzeta(2) =", zeta_int(2), "  zeta(4) =", zeta_int(4))
