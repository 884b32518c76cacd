#!/usr/bin/env python3
"""Regenerate the showcase data sets and plots into results/.

Drives the installed CLI end to end, so every artifact here is exactly what
a user would get from the command line:

  * two three-component trajectories (interior attractor, boundary attractor)
  * a ten-component slow-consensus run under the uniform map
  * the one-parameter threshold scan with its bifurcation point
  * the two-parameter region map with the analytic boundary curves
  * delayed-feedback trajectories across the three regimes
  * the feedback-strength bifurcation diagram

Usage: python scripts/run_figures.py [output_dir]
"""

import sys
from pathlib import Path

from simplexdyn.cli import main


def run(argv):
    print("$ simplexdyn " + " ".join(argv))
    code = main(argv)
    if code != 0:
        raise SystemExit(f"command failed with exit code {code}")


def main_script(out_dir: str = "results"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    run(["simulate", "--c", "0.3,0.4,0.25", "--p0", "0.2,0.3,0.5",
         "--out", str(out / "trajectory_interior.csv"),
         "--svg", str(out / "trajectory_interior.svg")])

    run(["simulate", "--c", "0.8,0.1,0.9", "--p0", "0.2,0.3,0.5",
         "--out", str(out / "trajectory_boundary.csv"),
         "--svg", str(out / "trajectory_boundary.svg")])

    run(["simulate", "--uniform",
         "--p0", "0.072,0.183,0.141,0.115,0.030,0.030,0.011,0.1666,0.116,0.1354",
         "--record-every", "25",
         "--out", str(out / "consensus_ten_components.csv"),
         "--svg", str(out / "consensus_ten_components.svg")])

    run(["fixed-point", "--c", "0.8,0.1,0.9", "--format", "json",
         "--out", str(out / "fixed_point_boundary.json")])

    run(["stability", "--c", "0.3,0.4,0.25", "--format", "json",
         "--out", str(out / "stability_interior.json")])

    run(["scan1d", "--vary", "2", "--range", "0.05:1.0:400", "--c", "0.8,_,0.9",
         "--out", str(out / "threshold_scan.csv"),
         "--svg", str(out / "threshold_scan.svg")])

    run(["scan2d", "--vary", "1,2", "--range", "0.05:1.5:100", "--c", "_,_,1,1",
         "--out", str(out / "region_map.csv")])

    for beta, name in ((1.2, "fixed_point"), (1.5, "oscillation"), (3.0, "cycle")):
        run(["delay", "--c", "0.9,0.85,0.95,0.8", "--tau", "30",
             "--p0", "0.25,0.26,0.24,0.25", "--beta", str(beta),
             "--out", str(out / f"delay_{name}.csv"),
             "--svg", str(out / f"delay_{name}.svg")])

    run(["delay", "--c", "0.9,0.85,0.95,0.8", "--tau", "30",
         "--p0", "0.25,0.26,0.24,0.25", "--sweep-beta", "0:4:200",
         "--steps", "20000", "--transient", "16000",
         "--out", str(out / "feedback_diagram.csv"),
         "--svg", str(out / "feedback_diagram.svg")])

    print(f"\nall artifacts written to {out}/")


if __name__ == "__main__":
    main_script(sys.argv[1] if len(sys.argv) > 1 else "results")
