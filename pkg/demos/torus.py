"""The genus-one amplitude of the torus target.

F_1 is modular invariant but not holomorphic; its t-tbar derivative is fixed
by the anomaly.  Its holomorphic limit counts degree-n covers of the torus,
sigma_1(n) of them, enumerated here as Hermite normal forms.
"""

import mpmath

from topstring.torus import ModuliPoint, anomaly_convergence, hnf_count, hnf_matrices, torus_anomaly_check, torus_f1

p = ModuliPoint(1j, 1j)
print("F_1(i, i) =", mpmath.nstr(torus_f1(p, 80, 200), 25))
# t, its S image -1/t and its T image t + 1 give the same value
with mpmath.workprec(200):
    t0 = mpmath.mpc("0.3", "0.9")
    for t in (t0, -1 / t0, t0 + 1):
        print(f"  F_1({mpmath.nstr(t, 6)}, i) =", mpmath.nstr(torus_f1(ModuliPoint(t, 1j), 200, 200), 25))

print("\nanomaly: d_t d_tbar F_1 against 1/(2 y^2)")
for t in (1j, 2j, 0.5 + 1j):
    rep = torus_anomaly_check(ModuliPoint(t, 1j), step=1e-5)
    print(f"  t={t}: lhs={mpmath.nstr(rep.lhs, 15)} rhs={mpmath.nstr(rep.rhs, 15)} rel={mpmath.nstr(rep.rel_dev, 3)}")
devs, ratios = anomaly_convergence(p, step=1e-3, halvings=3)
print("  deviation under step halving:", [mpmath.nstr(d, 3) for d in devs], "ratios", [mpmath.nstr(r, 4) for r in ratios])

print("\ndegree-n covers")
print("  n=2:", list(hnf_matrices(2)))
print("  counts n=1..12:", [hnf_count(n) for n in range(1, 13)])
