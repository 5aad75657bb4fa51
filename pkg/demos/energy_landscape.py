"""
Classical energy landscape and its stationary points
====================================================

The scaled ground-state energy as a function of the two collective
displacement angles.  Below the transition the origin is the only minimum;
beyond it the landscape develops either a pair of symmetric wells (discrete
symmetry) or a whole degenerate ring (continuous symmetry).
"""

from adicke import (
    ModelParams,
    SearchConfig,
    find_extrema,
    ground_state_energy,
    minimum_ring_variance,
    surface_energy,
)

def show_extrema(params, title):
    print(f"\n{title}")
    result = find_extrema(params, SearchConfig())
    for pt in result.points:
        u, v = pt.location
        l1, l2 = pt.hessian_eigenvalues
        print(f"  {pt.kind:>6} at (u, v) = ({u:+.6f}, {v:+.6f})  "
              f"energy {pt.energy:+.6f}  curvatures ({l1:+.4f}, {l2:+.4f})")
    return result

# normal phase: single minimum at the origin
p_normal = ModelParams(omega=1.0, omega0=1.0, gamma=0.4, xi=1.0)
show_extrema(p_normal, "xi = 1, gamma = 0.4 (below the transition)")

# broken discrete symmetry: two wells, related by the parity reflection
p_broken = ModelParams(omega=1.0, omega0=1.0, gamma=0.6, xi=1.0)
result = show_extrema(p_broken, "xi = 1, gamma = 0.6 (two symmetric wells)")
closed = 2.0 * ground_state_energy(p_broken)
best = min(pt.energy for pt in result.points)
print(f"  deepest well {best:+.9f} vs closed form {closed:+.9f}")

# continuous symmetry: the well bottom is a ring, flat to machine precision
p_ring = ModelParams(omega=1.0, omega0=1.0, gamma=1.5, xi=0.0)
var = minimum_ring_variance(p_ring)
print(f"\nxi = 0, gamma = 1.5: minimum-ring energy variance = {var:.3e}")

# a coarse look at the surface itself along the v = 0 cut
import numpy as np

us = np.linspace(-1.5, 1.5, 13)
cut = surface_energy(p_broken, us, np.zeros_like(us))
print("\nenergy along v = 0 (xi = 1, gamma = 0.6):")
for u, e in zip(us, cut):
    bar = "#" * int(round(30 * (e - cut.min()) / (cut.max() - cut.min())))
    print(f"  u = {u:+.2f}  {e:+.6f}  {bar}")
