"""Grand-canonical saddle point for a gas with power-law level density.

The single-particle density is rho(eps) = nu * eps**(nu - 1).  With
F_s(a) = -Li_s(-e^a) and alpha = beta * mu (log fugacity),

    N(beta, mu) =      Gamma(nu+1) beta**-nu     F_nu(alpha)
    E(beta, mu) = nu * Gamma(nu+1) beta**-(nu+1) F_{nu+1}(alpha)
    ln Z        = beta * E(beta, mu) / nu        (so Omega = -E / nu)

and the entropy functional at fixed targets (E, N) is
S = beta * E - alpha * N + ln Z.  The saddle of S gives the many-body
level density rho = e^S / (2 pi sqrt(D)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import DomainError, NoConvergence, SaddleInvalid
from .specfun import dirichlet_eta, fermi_dirac

BETA_CAP = 1e6
MAX_ITER = 200
DEFAULT_TOL = 1e-12


class Prefactor(enum.Enum):
    """Integration variables in which the Hessian determinant D is taken.

    ``BETA_MU`` uses (beta, mu).  ``BETA_ALPHA`` uses (beta, beta*mu),
    the variables conjugate to (E, N); it reduces to D = E**2 / nu in the
    classical limit and reproduces the Hardy-Ramanujan prefactor for
    nu = 1 at low temperature.
    """

    BETA_MU = "beta-mu"
    BETA_ALPHA = "beta-alpha"


@dataclass(frozen=True)
class GasParameters:
    nu: float
    n_particles: float

    def __post_init__(self):
        if not self.nu > 0:
            raise DomainError(f"nu must be positive, got {self.nu!r}")
        if not self.n_particles > 0:
            raise DomainError(f"n_particles must be positive, got {self.n_particles!r}")

    @property
    def fermi_energy(self) -> float:
        return self.n_particles ** (1.0 / self.nu)

    @property
    def ground_state_energy(self) -> float:
        """Smooth E_0 = int_0^mu0 eps rho(eps) d eps."""
        nu = self.nu
        return nu * self.n_particles ** ((nu + 1.0) / nu) / (nu + 1.0)

    def sp_density(self, eps: float) -> float:
        return self.nu * eps ** (self.nu - 1.0)


@dataclass(frozen=True)
class ThermoState:
    beta: float
    mu: float

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta!r}")

    @property
    def alpha(self) -> float:
        return self.beta * self.mu

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta


@dataclass(frozen=True)
class SaddleResult:
    state: ThermoState
    energy: float
    entropy: float
    hessian_det: float
    log_density: float
    residual_n: float
    residual_e: float
    iterations: int
    converged: bool = True
    prefactor: Prefactor = Prefactor.BETA_ALPHA


def particle_number(params: GasParameters, state: ThermoState) -> float:
    nu = params.nu
    return math.gamma(nu + 1.0) * state.beta**-nu * fermi_dirac(nu, state.alpha)


def total_energy(params: GasParameters, state: ThermoState) -> float:
    nu = params.nu
    return nu * math.gamma(nu + 1.0) * state.beta ** -(nu + 1.0) * fermi_dirac(nu + 1.0, state.alpha)


def constraint_residuals(
    params: GasParameters, state: ThermoState, energy: float
) -> tuple[float, float]:
    """(N(beta, mu) - N, E(beta, mu) - E)."""
    return (
        particle_number(params, state) - params.n_particles,
        total_energy(params, state) - energy,
    )


def grand_potential(params: GasParameters, state: ThermoState) -> float:
    return -total_energy(params, state) / params.nu


def entropy(params: GasParameters, state: ThermoState, energy: float) -> float:
    """S = beta [(1 + 1/nu) E - mu N], valid on the saddle."""
    return state.beta * ((1.0 + 1.0 / params.nu) * energy - state.mu * params.n_particles)


def entropy_functional(params: GasParameters, state: ThermoState, energy: float) -> float:
    """S(beta, mu) = beta [-Omega(beta, mu) + E - mu N], defined everywhere."""
    omega = grand_potential(params, state)
    return state.beta * (-omega + energy - state.mu * params.n_particles)


def hessian(
    params: GasParameters,
    state: ThermoState,
    prefactor: Prefactor = Prefactor.BETA_ALPHA,
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Second derivatives of the entropy functional, closed form.

    Uses dF_s/da = F_{s-1}.  In (beta, alpha) the targets E, N enter S
    only linearly and drop out; in (beta, mu) the cross term picks up -N.
    """
    nu, N = params.nu, params.n_particles
    b, mu, a = state.beta, state.mu, state.alpha
    g = math.gamma(nu + 1.0)
    f_lo, f_mid, f_hi = fermi_dirac(nu - 1.0, a), fermi_dirac(nu, a), fermi_dirac(nu + 1.0, a)
    if prefactor is Prefactor.BETA_ALPHA:
        s_bb = nu * (nu + 1.0) * g * b ** -(nu + 2.0) * f_hi
        s_ba = -nu * g * b ** -(nu + 1.0) * f_mid
        s_aa = g * b**-nu * f_lo
        return (s_bb, s_ba), (s_ba, s_aa)
    s_bb = g * (
        nu * (nu + 1.0) * b ** -(nu + 2.0) * f_hi
        - 2.0 * nu * mu * b ** -(nu + 1.0) * f_mid
        + mu * mu * b**-nu * f_lo
    )
    s_bm = g * ((1.0 - nu) * b**-nu * f_mid + mu * b ** (1.0 - nu) * f_lo) - N
    s_mm = g * b ** (2.0 - nu) * f_lo
    return (s_bb, s_bm), (s_bm, s_mm)


def hessian_det(
    params: GasParameters,
    state: ThermoState,
    energy: float | None = None,
    prefactor: Prefactor = Prefactor.BETA_ALPHA,
) -> float:
    """Determinant D of the entropy Hessian; raises SaddleInvalid if D <= 0.

    ``energy`` is accepted for symmetry with the other functions; S depends
    on it only linearly, so D does not.
    """
    if prefactor is Prefactor.BETA_ALPHA:
        # both terms scale like b^-(2nu+2); factor that out to limit cancellation
        nu = params.nu
        a = state.alpha
        g = math.gamma(nu + 1.0)
        f_lo, f_mid, f_hi = fermi_dirac(nu - 1.0, a), fermi_dirac(nu, a), fermi_dirac(nu + 1.0, a)
        det = g * g * state.beta ** -(2.0 * nu + 2.0) * nu * (
            (nu + 1.0) * f_hi * f_lo - nu * f_mid * f_mid
        )
    else:
        (h11, h12), (_, h22) = hessian(params, state, prefactor)
        det = h11 * h22 - h12 * h12
    if not det > 0:
        raise SaddleInvalid(f"Hessian determinant {det!r} is not positive at {state}")
    return det


def _initial_guess(params: GasParameters, energy: float) -> tuple[float, float]:
    nu, N = params.nu, params.n_particles
    if energy > 10.0 * nu * N:
        beta = nu * N / energy
        return beta, math.log(beta**nu * N) - math.lgamma(nu + 1.0)
    q = energy - params.ground_state_energy
    beta0 = nu * math.sqrt(2.0 * dirichlet_eta(2) / q) * N ** ((nu - 1.0) / (2.0 * nu))
    return beta0, beta0 * params.fermi_energy


def _log_residuals(params, energy, log_beta, alpha):
    nu, N = params.nu, params.n_particles
    lg = math.lgamma(nu + 1.0)
    f_mid, f_hi = fermi_dirac(nu, alpha), fermi_dirac(nu + 1.0, alpha)
    r_n = lg - nu * log_beta + math.log(f_mid) - math.log(N)
    r_e = math.log(nu) + lg - (nu + 1.0) * log_beta + math.log(f_hi) - math.log(energy)
    return r_n, r_e, f_mid, f_hi


def solve_saddle(
    params: GasParameters,
    energy: float,
    *,
    prefactor: Prefactor = Prefactor.BETA_ALPHA,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
    beta_cap: float = BETA_CAP,
) -> SaddleResult:
    """Solve N(beta, mu) = N, E(beta, mu) = E by damped Newton iteration.

    Newton runs on the logarithms of both constraints in the variables
    (ln beta, alpha), which keeps the system close to linear from the
    degenerate to the classical regime.  A step is halved until the
    residual norm decreases.  ``tol`` bounds the relative residuals.

    Raises
    ------
    DomainError
        If ``energy`` does not exceed the smooth ground-state energy, or the
        starting temperature is already beyond ``beta_cap``.
    NoConvergence
        If the iteration stalls or beta runs past ``beta_cap``; the best
        iterate is attached to the exception.
    """
    e0 = params.ground_state_energy
    if not energy > e0:
        raise DomainError(f"energy {energy!r} must exceed the ground-state energy {e0!r}")
    beta, alpha = _initial_guess(params, energy)
    if not beta < beta_cap:
        raise DomainError(f"excitation energy {energy - e0!r} is in the zero-temperature limit")

    nu = params.nu
    x = [math.log(beta), alpha]
    r_n, r_e, f_mid, f_hi = _log_residuals(params, energy, *x)
    norm = max(abs(r_n), abs(r_e))
    it = 0
    failure = None
    while norm > tol:
        if it >= max_iter:
            failure = f"no convergence after {max_iter} iterations (residual {norm:.3g})"
            break
        it += 1
        f_lo = fermi_dirac(nu - 1.0, x[1])
        # d(r_n, r_e)/d(ln beta, alpha)
        j11, j12 = -nu, f_lo / f_mid
        j21, j22 = -(nu + 1.0), f_mid / f_hi
        det = j11 * j22 - j12 * j21
        if det == 0:
            failure = "singular Jacobian"
            break
        d_lb = (-r_n * j22 + r_e * j12) / det
        d_al = (-r_e * j11 + r_n * j21) / det
        big = max(abs(d_lb), abs(d_al))
        if big > 5.0:
            d_lb, d_al = d_lb * 5.0 / big, d_al * 5.0 / big
        lam = 1.0
        while lam > 1e-12:
            trial = [x[0] + lam * d_lb, x[1] + lam * d_al]
            t_n, t_e, t_mid, t_hi = _log_residuals(params, energy, *trial)
            t_norm = max(abs(t_n), abs(t_e))
            if t_norm < norm:
                break
            lam *= 0.5
        else:
            failure = f"line search stalled (residual {norm:.3g})"
            break
        x, r_n, r_e, f_mid, f_hi, norm = trial, t_n, t_e, t_mid, t_hi, t_norm
        if math.exp(x[0]) > beta_cap:
            failure = f"beta exceeded cap {beta_cap:g}"
            break

    beta = math.exp(x[0])
    state = ThermoState(beta, x[1] / beta)
    res_n, res_e = constraint_residuals(params, state, energy)
    s = entropy(params, state, energy)
    try:
        d = hessian_det(params, state, energy, prefactor)
        log_rho = s - math.log(2.0 * math.pi) - 0.5 * math.log(d)
    except SaddleInvalid:
        if failure is None:
            raise
        d, log_rho = math.nan, math.nan
    result = SaddleResult(
        state=state,
        energy=energy,
        entropy=s,
        hessian_det=d,
        log_density=log_rho,
        residual_n=res_n,
        residual_e=res_e,
        iterations=it,
        prefactor=prefactor,
    )
    if failure is not None:
        raise NoConvergence(failure, replace(result, converged=False))
    return result


def smooth_mb_density(
    params: GasParameters, energy: float, prefactor: Prefactor = Prefactor.BETA_ALPHA
) -> float:
    """ln rho_MB(E, N) = S - ln(2 pi) - ln(D) / 2 at the saddle."""
    return solve_saddle(params, energy, prefactor=prefactor).log_density


def smooth_mb_density_q(
    params: GasParameters, q: float, prefactor: Prefactor = Prefactor.BETA_ALPHA
) -> float:
    """``smooth_mb_density`` at excitation energy q above the smooth ground state."""
    return smooth_mb_density(params, params.ground_state_energy + q, prefactor)
