#!/usr/bin/env python3
"""Sweep the coupling at a fixed site and tabulate the perturbed density.

Writes one CSV per coupling plus a summary of total masses, and optionally an
overlay plot.  Example:

    python scripts/density_sweep.py --k 1 --betas -0.5,0,0.25,0.5,1.0 --plot
"""

import argparse
import os

import numpy as np

from jacspec import Coupling, critical_coupling, density_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--betas", default="-0.5,0,0.25,0.5,1.0",
                    help="comma-separated coupling values")
    ap.add_argument("--count", type=int, default=801)
    ap.add_argument("--out-dir", default="out")
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    betas = [float(b) for b in args.betas.split(",")]
    grid = np.linspace(-2.0, 2.0, args.count)
    os.makedirs(args.out_dir, exist_ok=True)

    beta_c = critical_coupling(args.k)
    print(f"site k={args.k}, critical coupling {beta_c:.6g}")
    tables = []
    for beta in betas:
        t = density_table("rank-one", Coupling(args.k, beta), grid)
        tables.append((beta, t))
        path = os.path.join(args.out_dir, f"density_k{args.k}_beta{beta:g}.csv")
        with open(path, "w", newline="") as fh:
            fh.write("lambda,density\n")
            for x, v in zip(t.grid, t.values):
                fh.write(f"{x:.17g},{v:.17g}\n")
        if abs(beta) < beta_c:
            regime = "subcritical"
        elif abs(beta) == beta_c:
            regime = "critical"
        else:
            regime = "supercritical"
        print(f"  beta={beta:+.4g}  mass={t.total_mass:.12f}  ({regime})  -> {path}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(7, 4.5))
        for beta, t in tables:
            ax.plot(t.grid, t.values, label=f"beta={beta:g}")
        ax.set_xlabel("lambda")
        ax.set_ylabel("density")
        ax.set_title(f"perturbed spectral density, site k={args.k}")
        ax.legend()
        png = os.path.join(args.out_dir, f"density_k{args.k}.png")
        fig.tight_layout()
        fig.savefig(png, dpi=150)
        print(f"plot -> {png}")


if __name__ == "__main__":
    main()
