"""App Store scale run and the Lorenz / rank curves behind the plots.

800,000 publishers share 3.8e10 downloads. The run is deterministic and takes
a few seconds per reinforcement strength; curve CSVs land in --out.
Use --builders to shrink the market for a quick look.
"""

import argparse
from pathlib import Path

from satsim import builtin_config, export_results, run_scenario
from satsim.scenarios import TARGETS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", default="0,0.3,0.6,0.8")
    ap.add_argument("--builders", type=int, default=None)
    ap.add_argument("--out", default="calibration_out")
    args = ap.parse_args()
    base = builtin_config("calibration")
    if args.builders:
        base = base.with_value("market.B", args.builders)

    print("alpha  top1%   top10%  gini    med/mean   <100 downloads  runtime")
    for alpha in (float(a) for a in args.alphas.split(",")):
        rep = run_scenario(base.with_value("dynamics.alpha", alpha))
        print(f"{alpha:<5}  {rep.metric('top_share_0.01'):.3f}   {rep.metric('top_share_0.1'):.3f}   "
              f"{rep.metric('gini'):.3f}   {rep.metric('median_mean'):.2e}   "
              f"{rep.metric('share_below_100.0'):13.3f}   {rep.runtime_ms / 1000:.1f}s")
        for c in rep.target_checks:
            print(f"       {c.name}: {c.observed:.3f} vs published {c.target} in {c.window}: "
                  f"{'inside' if c.passed else 'outside'}")
        export_results(rep, "csv", Path(args.out) / f"alpha_{alpha}")

    for name, target, window in TARGETS[("calibration", 0.6)]:
        print(f"acceptance window for {name} at alpha=0.6: {window} (published {target})")
    print(f"lorenz.csv, rank.csv and final_state.csv written under {args.out}/")


if __name__ == "__main__":
    main()
