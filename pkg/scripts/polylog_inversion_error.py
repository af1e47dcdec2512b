#!/usr/bin/env python3
"""Error of the large-fugacity polylog expansion against quadrature.

For integer order the expansion terminates and is exact.  For other orders
it is asymptotic; cut at its smallest term it leaves an error of order
e^-a, which this script tabulates next to the built-in error estimate.

    python scripts/polylog_inversion_error.py --nu 0.5 1.5 2 2.5
"""

import argparse
import math

from fermigas.specfun import polylog_inversion, polylog_quadrature


def main(argv=None):
    ap = argparse.ArgumentParser(description="inversion-expansion error vs quadrature")
    ap.add_argument("--nu", type=float, nargs="+", default=[0.5, 1.0, 1.5, 2.0, 2.5, 3.0])
    ap.add_argument("--a", type=float, nargs="+", default=[2, 3, 5, 7.5, 10, 15, 20, 30, 40])
    args = ap.parse_args(argv)

    print(f"{'nu':>5} {'a':>6} {'|inv - quad|':>13} {'est_error':>10} {'e^-a':>10}")
    for nu in args.nu:
        for a in args.a:
            inv = polylog_inversion(nu, a)
            quad = polylog_quadrature(nu, a)
            err = abs(inv.value - quad.value)
            print(f"{nu:5g} {a:6g} {err:13.3e} {inv.est_error:10.3e} {math.exp(-a):10.3e}")
        print()


if __name__ == "__main__":
    main()
