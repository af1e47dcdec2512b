"""Closed-form limits of the many-body level density.

Density-scale results are returned as natural logarithms; the level
density itself overflows a double long before the formulas stop being
useful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .partitions import restricted_partition_row, unrestricted_partition_count
from .specfun import cos_pi, dirichlet_eta


@dataclass(frozen=True)
class SommerfeldLeading:
    """Leading-order chemical potential and inverse temperature."""

    mu0: float
    beta0: float


@dataclass(frozen=True)
class GumbelFactor:
    value: float
    log_value: float


@dataclass(frozen=True)
class CorrectedEntropy:
    """Second-order degenerate entropy for nu = 1 and the shifted (mu, beta)."""

    entropy: float
    mu: float
    beta: float
    t: float


def sommerfeld_leading(nu: float, n_particles: float, q: float) -> SommerfeldLeading:
    if q <= 0:
        raise DomainError(f"excitation energy must be positive, got {q!r}")
    if nu <= 0:
        raise DomainError(f"nu must be positive, got {nu!r}")
    mu0 = n_particles ** (1.0 / nu)
    beta0 = nu * math.sqrt(2.0 * dirichlet_eta(2) / q) * n_particles ** ((nu - 1.0) / (2.0 * nu))
    return SommerfeldLeading(mu0, beta0)


def bethe_entropy(nu: float, n_particles: float, q: float) -> float:
    """Leading low-temperature entropy 2 sqrt(pi^2 rho(mu0) Q / 6)."""
    if q <= 0:
        return 0.0
    rho_f = nu * n_particles ** ((nu - 1.0) / nu)
    return 2.0 * math.sqrt(math.pi**2 * rho_f * q / 6.0)


def hardy_ramanujan(n: int) -> float:
    """ln of the leading asymptotic exp(pi sqrt(2n/3)) / (4 sqrt(3) n) for p(n)."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return math.sqrt(2.0 * math.pi**2 * n / 3.0) - math.log(math.sqrt(48.0) * n)


def erdos_lehner_g(n: float, max_parts: float) -> float:
    c = math.pi**2 / (6.0 * n)
    return math.sqrt(c) * max_parts + 0.5 * math.log(c)


def erdos_lehner_ratio(n: float, max_parts: float) -> float:
    """Gumbel estimate exp(-exp(-g)) of p_N(n) / p(n)."""
    if n <= 0:
        raise DomainError(f"n must be positive, got {n!r}")
    return math.exp(-math.exp(-erdos_lehner_g(n, max_parts)))


def maxwell_boltzmann_log_density(
    nu: float, n_particles: float, energy: float, prefactor: bool = False
) -> float:
    """ln of the classical (E >> N) level density.

    Without ``prefactor`` this is the bare exponential
    N ln[Gamma(nu+1) E^nu / (nu^nu N^(nu+1))] + (nu+1) N, i.e. the
    classical entropy.  With ``prefactor`` the Gaussian factor 1/(2 pi sqrt D)
    is included, using the classical-limit determinant D = E^2 / nu
    (D = E^2 for nu = 1).
    """
    if energy <= 0:
        raise DomainError(f"energy must be positive, got {energy!r}")
    N = n_particles
    s = N * (
        math.lgamma(nu + 1.0) + nu * math.log(energy) - nu * math.log(nu) - (nu + 1.0) * math.log(N)
    ) + (nu + 1.0) * N
    if prefactor:
        s -= math.log(2.0 * math.pi) + 0.5 * math.log(energy**2 / nu)
    return s


def finite_size_factor(nu: float, n_particles: float, q: float) -> GumbelFactor:
    """Modified-Gumbel correction F(Q, N) to the Sommerfeld level density.

        ln F = cos(pi nu) Gamma(nu+1) beta0^-nu exp(-beta0 mu0)

    F is exactly 1 for half-integer nu, below 1 for odd integer nu and
    above 1 when cos(pi nu) > 0.
    """
    lead = sommerfeld_leading(nu, n_particles, q)
    c = cos_pi(nu)
    if c == 0.0:
        return GumbelFactor(1.0, 0.0)
    log_f = c * math.gamma(nu + 1.0) * lead.beta0**-nu * math.exp(-lead.beta0 * lead.mu0)
    # far outside the degenerate regime ln F can exceed the double range
    value = math.exp(log_f) if log_f < 709.0 else math.inf
    return GumbelFactor(value, log_f)


def corrected_entropy_nu1(n_particles: float, q: float) -> CorrectedEntropy:
    if q <= 0:
        raise DomainError(f"excitation energy must be positive, got {q!r}")
    N = n_particles
    k = math.sqrt(2.0 * dirichlet_eta(2) / q)  # beta0 for nu = 1
    decay = math.exp(-k * N)
    t = k * N + math.log(k)
    s = 2.0 * math.sqrt(2.0 * dirichlet_eta(2) * q) - math.exp(-t)
    mu = N - decay / k
    beta = k - (N + 1.0 / k) / (2.0 * q) * decay
    return CorrectedEntropy(entropy=s, mu=mu, beta=beta, t=t)


def exact_finite_size_factor(n_particles: int, q: int) -> float:
    """p_N(Q) / p(Q): the exact counterpart of F for the nu = 1 oscillator."""
    return float(Fraction(restricted_partition_row(q, n_particles)[q], unrestricted_partition_count(q)))
