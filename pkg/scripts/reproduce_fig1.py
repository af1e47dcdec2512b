#!/usr/bin/env python3
"""Write the level-density figure data for nu = 1, N = 5 and summarize it.

    python scripts/reproduce_fig1.py --out fig1.csv

The CSV has one row per excitation energy Q with the exact count, the
Bethe (Hardy-Ramanujan) and classical curves, the saddle-point density and
both finite-size factors.  Plotting is left to external tools.
"""

import argparse
import sys

from fermigas.cli import RunConfig, render_csv, run_figure


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--particles", type=int, default=5)
    ap.add_argument("--q-max", type=int, default=30)
    ap.add_argument("--prefactor", default="fig1", choices=["none", "beta-mu", "beta-alpha", "fig1"])
    ap.add_argument("--out", default="fig1.csv")
    args = ap.parse_args(argv)

    cfg = RunConfig("figure", nu=1.0, n_particles=args.particles, q_min=1, q_max=args.q_max,
                    prefactor=args.prefactor)
    table = run_figure(cfg)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(table))

    print(f"{'Q':>3} {'ln_exact':>9} {'ln_bethe':>9} {'ln_mb':>9} {'ln_saddle':>9} {'F_exact':>8} {'F_formula':>9}")
    for r in table.rows:
        print(f"{r['Q']:>3} {r['ln_exact']:9.4f} {r['ln_bethe']:9.4f} {r['ln_mb']:9.4f} "
              f"{r['ln_saddle']:9.4f} {r['F_exact']:8.4f} {r['F_formula']:9.4f}")
    worst = max(abs(r["F_formula"] - r["F_exact"]) for r in table.rows if r["Q"] >= 8)
    print(f"\nmax |F_formula - F_exact| for Q >= 8: {worst:.4f}")
    print(f"wrote {args.out}")
    return 3 if table.failed else 0


if __name__ == "__main__":
    sys.exit(main())
