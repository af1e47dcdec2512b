#!/usr/bin/env python3
"""Where does the saddle point reach the classical (Maxwell-Boltzmann) law?

For each (nu, N) the energy is raised by factors of ten from E = nu N and
the script reports the equation-of-state error |E - nu N T| / E, the
entropy error against the classical formula and the fugacity e^alpha.
The 1% level is reached when the fugacity is small, which for small nu
and large N needs E far above 100 nu N.

    python scripts/classical_regime_scan.py
"""

import argparse
import math

from fermigas.asymptotics import maxwell_boltzmann_log_density
from fermigas.errors import DomainError
from fermigas.thermo import GasParameters, solve_saddle


def main(argv=None):
    ap = argparse.ArgumentParser(description="classical-limit scan of the saddle point")
    ap.add_argument("--nu", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--particles", type=float, nargs="+", default=[5, 20])
    ap.add_argument("--decades", type=int, default=8)
    args = ap.parse_args(argv)

    print(f"{'nu':>4} {'N':>4} {'E/(nu N)':>9} {'EOS err':>9} {'S err':>9} {'fugacity':>9}")
    for nu in args.nu:
        for n in args.particles:
            gas = GasParameters(nu, n)
            for k in range(1, args.decades + 1):
                energy = 10.0**k * nu * n
                try:
                    res = solve_saddle(gas, energy)
                except DomainError:
                    print(f"{nu:4g} {n:4g} {10**k:9.0e}   below ground state E0={gas.ground_state_energy:.4g}")
                    continue
                eos = abs(energy - nu * n / res.state.beta) / energy
                ds = abs(res.entropy / maxwell_boltzmann_log_density(nu, n, energy) - 1)
                print(f"{nu:4g} {n:4g} {10**k:9.0e} {eos:9.2e} {ds:9.2e} {math.exp(res.state.alpha):9.2e}")
            print()


if __name__ == "__main__":
    main()
