"""Attention can grow, but the per-builder share is pinned by costs.

With demand growing as exp(2t) and the cost of building falling as exp(-t),
the number of builders explodes while attention per builder tracks k(t)/p.
A rising cost path is the only way the average share goes up.
"""

import numpy as np

from satsim import growth_trajectory

t = np.linspace(0, 3, 7)
falling = growth_trajectory(1e4, 1.0, 100.0, lambda t: np.exp(2 * t), lambda t: np.exp(-t), t)
rising = growth_trajectory(1e4, 1.0, 100.0, lambda t: np.exp(2 * t), lambda t: 1 + t, t)

print("t     A(t)        B*(t) falling cost   s(t)      B*(t) rising cost   s(t)")
for i, ti in enumerate(t):
    print(f"{ti:<4.1f}  {falling.A_path[i]:10.4g}  {falling.B_path[i]:18.4g}  {falling.s_path[i]:8.4f}  "
          f"{rising.B_path[i]:18.4g}  {rising.s_path[i]:6.3f}")

print("\nmax |s(t) - k(t)| / k(t) on the falling-cost path:",
      float(np.max(np.abs(falling.s_path - np.exp(-t)) / np.exp(-t))))
