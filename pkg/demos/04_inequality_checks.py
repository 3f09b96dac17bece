"""Hardy-type inequalities on explicit trial functions.

Near-minimizing families creep toward the sharp constants; the planar
change-of-variables identity balances to roundoff.

Run:  python3 demos/04_inequality_checks.py
"""

import math

from hardy_cones import ConeSpec, IdentityCheckParams, cone_rayleigh, hardy_1d_check, identity_l11_check
from hardy_cones.verify import AxisymmetricTrial, cosine_profile, logsine_profile, power_trial

print("1-d Hardy quotient of r^(1/2+a)(1-r), constant 1/4")
for a in (0.5, 0.1, 0.02, 0.004):
    print(f"  a={a:<6} quotient={hardy_1d_check(power_trial(a, 1.0)).quotient:.8f}")

print("\nhalf-space quotient, log-sine radial profile times cos(theta), constant N^2/4")
for dim in (3, 4):
    for lo in (1e-2, 1e-5, 1e-10):
        trial = AxisymmetricTrial(logsine_profile(lo, 1.0, dim), cosine_profile(math.pi / 2))
        q = cone_rayleigh(ConeSpec(dim, math.pi / 2), trial).quotient
        print(f"  N={dim} lo={lo:<6g} quotient={q:.8f}")

print("\nchange-of-variables identity around a paraboloid x2 > g x1^2")
for g in (1.0, 0.0, -0.5):
    rep = identity_l11_check(IdentityCheckParams(g, 1.0))
    orders = ", ".join(f"{o:.1f}" for o in rep.observed_orders)
    print(f"  g={g:<5} lhs={rep.lhs:.12f} terms=({rep.term_grad:.6f}, {rep.term_hardy:.6f}, "
          f"{rep.term_mixed:+.6f}) rel. residual={rep.relative_residual:.1e} orders {orders}")
