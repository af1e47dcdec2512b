"""Command-line front end.

    fermigas figure --particles 5 --q-min 1 --q-max 30 --out fig1.csv
    fermigas partitions --particles 16 --q 100
    fermigas saddle --nu 1 --particles 5 --energy 510
    fermigas polylog --nu 1.5 --a 5 10 20
    fermigas exact --nu 0.5 --particles 3 --q-max 40
    fermigas asymptotic --nu 2 --particles 4 --q 10

Every command writes a table (CSV by default, JSON with ``--format json``)
to stdout or to ``--out``.  Exit codes: 0 success, 2 bad input, 3 numerical
failure in at least one row, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable

from . import asymptotics as asy
from .errors import DomainError, FermiGasError, NoConvergence
from .partitions import (
    SpectrumSpec,
    Statistics,
    exact_mb_counts,
    ground_state_energy,
    restricted_partition_row,
)
from .specfun import polylog_inversion, polylog_quadrature, polylog_series
from .thermo import GasParameters, Prefactor, solve_saddle

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

FIGURE_COLUMNS = [
    "Q", "exact_count", "ln_exact", "ln_bethe", "ln_mb", "ln_saddle", "F_exact", "F_formula", "status",
]


@dataclass(frozen=True)
class RunConfig:
    command: str
    nu: float = 1.0
    n_particles: int = 5
    q_min: int = 0
    q_max: int = 30
    q_step: int = 1
    energy: float | None = None
    a_values: tuple[float, ...] = ()
    output_path: str | None = None
    format: str = "csv"
    prefactor: str = "beta-alpha"
    stats: str = "fermi"
    tol: float = 1e-12

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError("--nu must be positive")
        if self.n_particles < 0:
            raise ValueError("--particles must be nonnegative")
        if self.q_min < 0 or self.q_max < self.q_min:
            raise ValueError("need 0 <= q-min <= q-max")
        if self.q_step < 1:
            raise ValueError("--q-step must be at least 1")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")

    @property
    def q_values(self) -> range:
        return range(self.q_min, self.q_max + 1, self.q_step)


class Table:
    """Rows plus a fixed column order; tracks whether any row failed."""

    def __init__(self, columns: list[str]):
        self.columns = columns
        self.rows: list[dict[str, Any]] = []
        self.failed = False

    def add(self, **row):
        unknown = set(row) - set(self.columns)
        assert not unknown, unknown
        if row.get("status", "ok") != "ok":
            self.failed = True
        self.rows.append(row)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_fmt(row.get(c)) for c in table.columns])
    return buf.getvalue()


def render_json(table: Table) -> str:
    def conv(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        return v

    rows = [{c: conv(row.get(c)) for c in table.columns} for row in table.rows]
    return json.dumps({"columns": table.columns, "rows": rows}, indent=1) + "\n"


def _saddle_prefactor(cfg: RunConfig) -> Prefactor | None:
    if cfg.prefactor == "none":
        return None
    if cfg.prefactor == "beta-mu":
        return Prefactor.BETA_MU
    # fig1: the caption's D = E^2 is the classical limit of the (beta, alpha) form
    return Prefactor.BETA_ALPHA


def _saddle_log_density(cfg: RunConfig, params: GasParameters, energy: float):
    """(ln rho, saddle result, status); never raises on numerical failure."""
    pref = _saddle_prefactor(cfg)
    try:
        res = solve_saddle(params, energy, prefactor=pref or Prefactor.BETA_ALPHA, tol=cfg.tol)
    except NoConvergence as exc:
        return None, exc.result, "no-convergence"
    except FermiGasError as exc:
        return None, None, type(exc).__name__
    value = res.entropy if pref is None else res.log_density
    return value, res, "ok"


def run_figure(cfg: RunConfig) -> Table:
    table = Table(FIGURE_COLUMNS)
    qs = [q for q in cfg.q_values if q >= 1]
    N = cfg.n_particles
    if N < 1:
        raise DomainError("figure needs at least one particle")
    params = GasParameters(cfg.nu, N)
    exact_row = full_row = None
    if cfg.nu == 1 and qs:
        exact_row = restricted_partition_row(max(qs), N)
        full_row = restricted_partition_row(max(qs), max(qs))
    for q in qs:
        row: dict[str, Any] = {"Q": q}
        if exact_row is not None:
            row["exact_count"] = exact_row[q]
            row["ln_exact"] = math.log(exact_row[q])
            row["F_exact"] = exact_row[q] / full_row[q]
            row["ln_bethe"] = asy.hardy_ramanujan(q)
        else:
            row["ln_bethe"] = asy.bethe_entropy(cfg.nu, N, q)
        row["ln_mb"] = asy.maxwell_boltzmann_log_density(
            cfg.nu, N, q, prefactor=cfg.prefactor != "none"
        )
        row["F_formula"] = asy.finite_size_factor(cfg.nu, N, q).value
        row["ln_saddle"], _, row["status"] = _saddle_log_density(
            cfg, params, params.ground_state_energy + q
        )
        table.add(**row)
    return table


def run_partitions(cfg: RunConfig) -> Table:
    table = Table(["n", "p_N", "p", "ratio_exact", "ratio_el", "ln_hr"])
    ns = list(cfg.q_values)
    if not ns:
        return table
    N = cfg.n_particles
    restricted = restricted_partition_row(max(ns), N)
    full = restricted_partition_row(max(ns), max(ns))
    for n in ns:
        row = {"n": n, "p_N": restricted[n], "p": full[n], "ratio_exact": restricted[n] / full[n]}
        if n >= 1:
            row["ratio_el"] = asy.erdos_lehner_ratio(n, N)
            row["ln_hr"] = asy.hardy_ramanujan(n)
        table.add(**row)
    return table


def run_exact(cfg: RunConfig) -> Table:
    power = round(1.0 / cfg.nu)
    if power < 1 or abs(power * cfg.nu - 1.0) > 1e-12:
        raise DomainError(f"exact counting needs nu = 1/k for a positive integer k, got {cfg.nu}")
    stats = Statistics(cfg.stats)
    table = Table(["Q", "energy", "count"])
    qs = list(cfg.q_values)
    if not qs:
        return table
    N = cfg.n_particles
    probe = SpectrumSpec.powers(power, max(N, 1))
    e0 = ground_state_energy(probe, N, stats)
    e_max = e0 + max(qs)
    spec = SpectrumSpec.covering(power, N, e_max)
    counts = exact_mb_counts(spec, N, e_max, stats)
    for q in qs:
        table.add(Q=q, energy=e0 + q, count=counts[e0 + q])
    return table


def run_saddle(cfg: RunConfig) -> Table:
    table = Table([
        "energy", "Q", "beta", "mu", "temperature", "entropy", "hessian_det", "ln_density",
        "residual_n", "residual_e", "iterations", "status",
    ])
    params = GasParameters(cfg.nu, cfg.n_particles)
    e0 = params.ground_state_energy
    energies = [cfg.energy] if cfg.energy is not None else [e0 + q for q in cfg.q_values if q > 0]
    for e in energies:
        _, res, status = _saddle_log_density(cfg, params, e)
        row: dict[str, Any] = {"energy": e, "Q": e - e0, "status": status}
        if res is not None:
            row.update(
                beta=res.state.beta, mu=res.state.mu, temperature=res.state.temperature,
                entropy=res.entropy, hessian_det=res.hessian_det, ln_density=res.log_density,
                residual_n=res.residual_n, residual_e=res.residual_e, iterations=res.iterations,
            )
            if cfg.prefactor == "none":
                row["ln_density"] = res.entropy
        table.add(**row)
    return table


def run_asymptotic(cfg: RunConfig) -> Table:
    table = Table(["Q", "mu0", "beta0", "s_bethe", "ln_mb", "F", "ln_F", "g", "ln_hr"])
    N = cfg.n_particles
    for q in cfg.q_values:
        if q <= 0:
            continue
        lead = asy.sommerfeld_leading(cfg.nu, N, q)
        f = asy.finite_size_factor(cfg.nu, N, q)
        row = {
            "Q": q, "mu0": lead.mu0, "beta0": lead.beta0, "s_bethe": asy.bethe_entropy(cfg.nu, N, q),
            "ln_mb": asy.maxwell_boltzmann_log_density(cfg.nu, N, q), "F": f.value, "ln_F": f.log_value,
        }
        if cfg.nu == 1:
            row["g"] = asy.erdos_lehner_g(q, N)
            row["ln_hr"] = asy.hardy_ramanujan(q)
        table.add(**row)
    return table


def run_polylog(cfg: RunConfig) -> Table:
    table = Table([
        "nu", "a", "series", "series_err", "quadrature", "quadrature_err", "inversion", "inversion_err",
    ])
    for a in cfg.a_values:
        row: dict[str, Any] = {"nu": cfg.nu, "a": a}
        q = polylog_quadrature(cfg.nu, a)
        row.update(quadrature=q.value, quadrature_err=q.est_error)
        if a <= math.log(0.99):
            s = polylog_series(cfg.nu, -math.exp(a))
            row.update(series=s.value, series_err=s.est_error)
        if a >= 2:
            inv = polylog_inversion(cfg.nu, a)
            row.update(inversion=inv.value, inversion_err=inv.est_error)
        table.add(**row)
    return table


COMMANDS: dict[str, Callable[[RunConfig], Table]] = {
    "figure": run_figure,
    "partitions": run_partitions,
    "exact": run_exact,
    "saddle": run_saddle,
    "asymptotic": run_asymptotic,
    "polylog": run_polylog,
}


HELP = {
    "figure": "level density and finite-size factor over a Q sweep (figure data)",
    "partitions": "restricted and unrestricted partition counts with asymptotic estimates",
    "exact": "exact configuration counts on the spectrum j**(1/nu)",
    "saddle": "grand-canonical saddle point at a given energy or Q sweep",
    "asymptotic": "closed-form low-temperature and classical limits",
    "polylog": "Li_nu(-e^a) by series, quadrature and inversion",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermigas", description="Many-body level density of a non-interacting Fermi gas."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nu", type=float, default=1.0, help="power-law exponent of the SP density")
    common.add_argument("--particles", type=int, default=5, help="particle number N")
    common.add_argument("--q", type=int, default=None, help="single excitation energy (overrides range)")
    common.add_argument("--q-min", type=int, default=0)
    common.add_argument("--q-max", type=int, default=30)
    common.add_argument("--q-step", type=int, default=1)
    common.add_argument("--energy", type=float, default=None, help="total energy (saddle only)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument(
        "--prefactor", choices=["none", "beta-mu", "beta-alpha", "fig1"], default="beta-alpha",
        help="Gaussian prefactor convention for saddle densities",
    )
    common.add_argument("--stats", choices=["fermi", "bose"], default="fermi")
    common.add_argument("--tol", type=float, default=1e-12, help="saddle residual tolerance")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=HELP[name])
        if name == "polylog":
            p.add_argument("--a", type=float, nargs="+", required=True, help="log-fugacity values")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    q_min, q_max = args.q_min, args.q_max
    if args.q is not None:
        q_min = q_max = args.q
    return RunConfig(
        command=args.command,
        nu=args.nu,
        n_particles=args.particles,
        q_min=q_min,
        q_max=q_max,
        q_step=args.q_step,
        energy=args.energy,
        a_values=tuple(getattr(args, "a", None) or ()),
        output_path=args.out,
        format=args.format,
        prefactor=args.prefactor,
        stats=args.stats,
        tol=args.tol,
    )


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        try:
            cfg = config_from_args(args)
        except ValueError as exc:
            parser.error(str(exc))
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help
        return int(exc.code or 0)
    try:
        table = COMMANDS[cfg.command](cfg)
    except DomainError as exc:
        print(f"fermigas: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FermiGasError, ArithmeticError) as exc:
        print(f"fermigas: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = render_json(table) if cfg.format == "json" else render_csv(table)
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"fermigas: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_NUMERIC if table.failed else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
