"""Sweep the aperture: monotone decrease of lambda1 and the analytic bounds.

Writes sweep_N3.csv next to the current directory; same columns as
``hardy-cone sweep --fmt csv``.

Run:  python3 demos/02_aperture_sweep.py
"""

import math

import numpy as np

from hardy_cones import sweep
from hardy_cones.hardy import worker_count

dim = 3
table = sweep(dim, 0.2, 3.0, 29, workers=worker_count())

print(f"{'gamma':>8} {'lambda1':>14} {'lower_bessel':>14} {'upper_bessel':>14} {'lower_convex':>14}")
for r in table.rows:
    b = r.bounds
    conv = "-" if b.lower_convex is None else f"{b.lower_convex:14.6f}"
    print(f"{r.gamma:8.4f} {r.lambda1:14.6f} {b.lower_bessel:14.6f} {b.upper_bessel:14.6f} {conv:>14}")

print("\nstrictly decreasing:", table.monotone)
print("all bounds hold:    ", table.bounds_ok)

# %% The Bessel upper bound blows up as gamma -> pi (sin gamma -> 0) while the
# lower bound collapses; the convex bound is sharp exactly at pi/2.
gam = table.gammas
lam = table.lambdas
width = np.array([r.bounds.upper_bessel / r.bounds.lower_bessel for r in table.rows])
print(f"\nbound ratio upper/lower: {width[0]:.3f} at gamma={gam[0]:.2f}, {width[-1]:.1f} at gamma={gam[-1]:.2f}")

# %% Past pi/2 the constant drops below the half-space value N^2/4.
i = int(np.argmin(np.abs(gam - math.pi / 2)))
print(f"closest grid point to pi/2: gamma={gam[i]:.4f}, mu={lam[i] + (dim - 2) ** 2 / 4:.6f}")

np.savetxt("sweep_N3.csv", np.column_stack([gam, lam]), delimiter=",", header="gamma,lambda1", comments="",
           fmt="%.12g")
