#!/usr/bin/env python3
"""Truncation convergence study for the bound-state eigenvalue.

The extreme eigenvalue of the N x N truncation converges exponentially to the
closed-form bound state; this prints the error ladder as N doubles.

    python scripts/bound_state_convergence.py --k 0 --beta 2.0
"""

import argparse

from jacspec import Coupling, eigenvalue, truncated_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=0)
    ap.add_argument("--beta", type=float, default=2.0)
    ap.add_argument("--n-min", type=int, default=25)
    ap.add_argument("--n-max", type=int, default=3200)
    args = ap.parse_args()

    c = Coupling(args.k, args.beta)
    r = eigenvalue(c)
    if not r.exists:
        print(f"no bound state: |beta| <= critical coupling {r.beta_critical:g}")
        return
    print(f"closed-form bound state: lambda = {r.lam:.15f} ({r.side.value} side)")
    print(f"{'N':>6}  {'extreme eigenvalue':>20}  {'error':>10}  {'weight':>10}")
    n = max(args.n_min, 2 * args.k + 4)
    prev_err = None
    while n <= args.n_max:
        res = truncated_spectrum(c, n)
        extreme = res.eigenvalues[-1] if args.beta > 0 else res.eigenvalues[0]
        idx = -1 if args.beta > 0 else 0
        err = abs(float(extreme) - r.lam)
        note = ""
        if prev_err and err > 0:
            note = f"  ratio {prev_err / err:.2e}"
        print(f"{n:6d}  {float(extreme):20.15f}  {err:10.3e}  "
              f"{float(res.weights[idx]):10.8f}{note}")
        prev_err = err if err > 0 else prev_err
        n *= 2


if __name__ == "__main__":
    main()
