#!/usr/bin/env python3
"""Band-edge diagnostics at the critical coupling.

For each site the squared basis polynomials settle on the plateau (k+1)^2 at
the matched band edge while |D|^2 vanishes there: the edge is a resonance,
not an eigenvalue.

    python scripts/resonance_plateau.py --k-max 6
"""

import argparse

from jacspec import Coupling, d_abs_sq, phi_recurrence, resonance_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--show-sequence", action="store_true",
                    help="print |phi_n(2)|^2 leading up to the plateau for each k")
    args = ap.parse_args()

    print(f"{'k':>3} {'beta_c':>10} {'plateau':>9} {'max dev':>10} "
          f"{'|D|^2(+2)':>11} {'|D|^2(-2)':>11}")
    for k in range(args.k_max + 1):
        rep = resonance_report(k)
        print(f"{k:3d} {rep.beta_critical:10.6f} {rep.plateau_target:9.0f} "
              f"{rep.max_plateau_residual:10.2e} {rep.edge_dsq_upper:11.2e} "
              f"{rep.edge_dsq_lower:11.2e}")

    if args.show_sequence:
        for k in range(args.k_max + 1):
            c = Coupling(k, 1.0 / (k + 1))
            vals = [phi_recurrence(c, n, 2.0) ** 2 for n in range(2 * k + 6)]
            head = " ".join(f"{v:.3f}" for v in vals)
            print(f"k={k}: |phi_n(2)|^2 = {head} ... (plateau {(k + 1) ** 2})")
            assert abs(d_abs_sq(c, 2.0)) < 1e-12


if __name__ == "__main__":
    main()
