"""Dilution, free entry and welfare in the symmetric market.

Ten thousand units of attention, an outside option of weight 100 and unit
price and cost. Average attention per builder falls as A/(B+z); builders keep
entering until it reaches k/p, which overshoots the welfare optimum.
"""

import argparse

import numpy as np

from satsim import (builder_profit, comparative_statics, entry_elasticity, equilibrium_entry,
                    symmetric_average, welfare, welfare_optimum)
from satsim.scenarios import display


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--A", type=float, default=10000.0)
    ap.add_argument("--z", type=float, default=100.0)
    ap.add_argument("--p", type=float, default=1.0)
    ap.add_argument("--k", type=float, default=1.0)
    args = ap.parse_args()
    A, z, p, k = args.A, args.z, args.p, args.k

    print("B         avg attention   profit   elasticity")
    for B in (100, 500, 1000, 5000, 9900, 50000):
        s = symmetric_average(A, B, z)
        print(f"{B:<9} {display(s):>13} {display(builder_profit(p, s, k)):>8} {entry_elasticity(B, z):>11.3f}")

    eq = equilibrium_entry(p, A, k, z)
    print(f"\nfree entry: B* = {eq.B_star:.0f}, attention per builder {eq.attention_per_builder}, "
          f"outside keeps {eq.outside_absorption:.1%}")
    if eq.interior:
        cs = comparative_statics(p, A, k, z)
        print("dB*/dA = {:.3g}, dB*/dp = {:.3g}, dB*/dk = {:.3g}, dB*/dz = {:.3g}".format(*cs))

    # the planner values a builder's draw at log(s), so stops much earlier
    w = welfare_optimum(A, z, p, k)
    print(f"\nwelfare optimum B** = {w.B_social:.1f} (W = {w.W_at_social:.1f})")
    print(f"welfare at B*        = {w.W_at_freeentry:.1f}, excess entry: {w.excess_entry}")

    grid = np.linspace(0, 2 * max(eq.B_star, 1), 9)
    print("\nB        W(B)")
    for B, W in zip(grid, welfare(grid, A, z)):
        print(f"{B:<8.0f} {W:10.1f}")


if __name__ == "__main__":
    main()
