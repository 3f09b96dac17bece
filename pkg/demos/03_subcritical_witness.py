"""A cone wider than the half-space has Hardy constant below N^2/4.

We exhibit it twice: from the eigenvalue, and by an explicit trial function
whose quotient is already below N^2/4.  Any smooth domain squeezed between a
compact piece of such a cone carrying the trial function and the cone itself
inherits the smaller constant.

Run:  python3 demos/03_subcritical_witness.py
"""

from hardy_cones import AxisymmetricTrial, ConeSpec, cone_rayleigh, lambda1, subcritical_witness
from hardy_cones.verify import eigen_profile, logsine_profile

for dim, gamma in ((3, 2.2), (4, 2.0), (5, 1.7)):
    h = subcritical_witness(dim, gamma)
    print(f"N={dim}, gamma={gamma}: mu={h.mu:.8f}  N^2/4={dim * dim / 4}  margin={dim * dim / 4 - h.mu:.4f}")

# %% explicit trial: computed ground state in angle, log-sine profile in radius
dim, gamma = 3, 2.2
cone = ConeSpec(dim, gamma)
eig = lambda1(cone)
for lo in (1e-2, 1e-4, 1e-8):
    trial = AxisymmetricTrial(logsine_profile(lo, 1.0, dim), eigen_profile(eig, gamma))
    q = cone_rayleigh(cone, trial).quotient
    print(f"  support ({lo:g}, 1): quotient={q:.6f}")
print(f"  infimum mu={cone.classical_part + eig.lam:.6f}, half-space value {dim * dim / 4}")
