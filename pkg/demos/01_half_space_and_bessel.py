"""Where the numbers come from: the half-space and the Bessel comparison problem.

Run:  python3 demos/01_half_space_and_bessel.py
"""

import math

from hardy_cones import ConeSpec, first_bessel_zero, cone_bessel_order, lambda1, lambda1_star, mu_cone

# %% The half-space is the cone of aperture pi/2.  Its angular eigenvalue is N-1,
# so the Hardy constant is (N-2)^2/4 + N-1 = N^2/4.
print("half-space anchor")
for dim in range(3, 9):
    h = mu_cone(ConeSpec(dim, math.pi / 2))
    print(f"  N={dim}:  lambda1={h.lambda1:.10f}  mu={h.mu:.10f}  N^2/4={dim * dim / 4}")

# %% Replacing sin(t) by t in the weight gives a problem solved by Bessel functions:
# lambda1*(gamma) = (B1/gamma)^2 with B1 the first zero of J_{(N-3)/2}.
print("\ncomparison problem vs first Bessel zero")
for dim in (3, 4, 5, 6):
    b1 = first_bessel_zero(cone_bessel_order(dim)).value
    g = 1.3
    star = lambda1_star(ConeSpec(dim, g))
    print(f"  N={dim}: B1={b1:.12f}  lambda1* gamma^2={star.lam * g * g:.12f}")

# %% The true eigenvalue sits between the comparison value scaled by (sin g/g)^(N-2)
# and its inverse.  For narrow cones both factors go to 1.
print("\nnarrow cones: lambda1 gamma^2 / B1^2 -> 1")
for g in (1.0, 0.3, 0.1, 0.03):
    eig = lambda1(ConeSpec(4, g))
    print(f"  gamma={g:<5} ratio={eig.lam * g * g / math.pi ** 2:.8f}")
