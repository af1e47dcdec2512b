"""Special functions for Fermi-gas thermodynamics.

Everything here is real-valued.  The polylogarithm only ever appears at a
negative argument ``-e^a``, where it equals minus a complete Fermi-Dirac
integral, so three independent routes are provided:

* ``polylog_series``      power series, ``|x| <= 0.99``
* ``polylog_quadrature``  Fermi-Dirac integral by adaptive quadrature
* ``polylog_inversion``   large-fugacity expansion in powers of ``a = ln z``

``fermi_dirac`` picks the cheapest accurate route and is what the
thermodynamics module calls.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import integrate, special

from .errors import ConvergenceError, DomainError, QuadratureError

SERIES_MAX_ABS_X = 0.99
INVERSION_MIN_A = 2.0
SERIES_MAX_TERMS = 200_000

_ETA_EVEN = {
    0: 0.5,
    2: math.pi**2 / 12.0,
    4: 7.0 * math.pi**4 / 720.0,
}


class PolylogMethod(enum.Enum):
    SERIES = "series"
    QUADRATURE = "quadrature"
    INVERSION = "inversion"


@dataclass(frozen=True)
class PolylogResult:
    """A polylogarithm value and how it was obtained."""

    value: float
    method: PolylogMethod
    est_error: float

    def __post_init__(self):
        if not math.isfinite(self.est_error) or self.est_error < 0:
            raise ValueError(f"bad error estimate {self.est_error!r}")

    def __float__(self):
        return self.value


def cos_pi(x: float) -> float:
    """cos(pi x), exact (0 or +-1) at half-integers and integers."""
    twice = 2.0 * x
    if twice.is_integer():
        k = int(twice)
        if k % 2:
            return 0.0
        return 1.0 if (k // 2) % 2 == 0 else -1.0
    return math.cos(math.pi * math.fmod(x, 2.0))


def gamma_fn(x: float) -> float:
    if x <= 0 or not math.isfinite(x):
        raise DomainError(f"gamma_fn needs a positive finite argument, got {x!r}")
    return math.gamma(x)


@lru_cache(maxsize=None)
def _borwein_weights(n: int) -> tuple[float, ...]:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), exact then rounded
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(
            math.factorial(n + i - 1) * 4**i,
            math.factorial(n - i) * math.factorial(2 * i),
        )
        d.append(n * acc)
    dn = d[-1]
    return tuple(float((dk - dn) / dn) for dk in d[:-1])


def dirichlet_eta(s: float, terms: int = 40) -> float:
    """Dirichlet eta function, the alternating zeta sum.

    Uses Borwein's accelerated alternating-series algorithm, which also
    yields the Abel-summed value 1/2 at s = 0.  Even integers 0, 2, 4 come
    from a table of closed forms.
    """
    if s < 0:
        raise DomainError(f"dirichlet_eta is only provided for s >= 0, got {s!r}")
    if s in _ETA_EVEN:
        return _ETA_EVEN[s]
    if s == 1:
        return math.log(2.0)
    w = _borwein_weights(terms)
    return -math.fsum((-1) ** k * w[k] / (k + 1) ** s for k in range(terms))


def _series_sum(nu: float, x: float) -> tuple[float, float]:
    # sum_{k>=1} x^k / k^nu with a geometric tail bound
    ax = abs(x)
    total = comp = 0.0
    xk = 1.0
    for k in range(1, SERIES_MAX_TERMS + 1):
        xk *= x
        term = xk / k**nu
        # Neumaier compensated summation
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        nxt = ax ** (k + 1) / (k + 1) ** nu
        ratio = ax * max(1.0, ((k + 2) / (k + 1)) ** (-nu))
        if ratio >= 1.0:
            continue
        tail = nxt / (1.0 - ratio)
        if tail <= min(1e-14, 1e-16 * abs(total)):
            return total + comp, tail
    raise ConvergenceError(f"Li_{nu}({x}) series did not converge in {SERIES_MAX_TERMS} terms")


def polylog_series(nu: float, x: float) -> PolylogResult:
    """Li_nu(x) by direct summation for ``|x| <= 0.99``.

    ``x == -1`` is also accepted and returns ``-eta(nu)``.
    """
    if x == 0:
        return PolylogResult(0.0, PolylogMethod.SERIES, 0.0)
    if x == -1.0:
        return PolylogResult(-dirichlet_eta(nu), PolylogMethod.SERIES, 1e-15)
    if abs(x) > SERIES_MAX_ABS_X:
        raise DomainError(f"series needs |x| <= {SERIES_MAX_ABS_X}, got {x!r}")
    value, tail = _series_sum(nu, x)
    return PolylogResult(value, PolylogMethod.SERIES, tail)


def _fermi_kernel(u: float) -> float:
    """1 / (e^u + 1), overflow-safe."""
    return special.expit(-u)


def _quad(f, lo, hi, *, epsabs, epsrel=1e-13, **kw):
    out = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=400, full_output=1, **kw)
    value, err = out[0], out[1]
    if len(out) > 3 and err > max(epsabs, epsrel * abs(value)) * 1e3:
        raise QuadratureError(f"quadrature on [{lo}, {hi}] failed: {out[3]}")
    return value, err


def _fd_quadrature(s: float, a: float) -> tuple[float, float]:
    """-Li_s(-e^a) by quadrature, for s > -1.

    s > 0 integrates t^{s-1}/(e^{t-a}+1) / Gamma(s).  For -1 < s <= 0 the
    a-derivative of the order s+1 integral is used instead.
    """
    if s > 0:
        g = math.gamma(s)
        if a > 0:
            scale = a**s / s
            tol = 1e-15 * max(1.0, scale)
            # [0, a]: 1/(e^{t-a}+1) = 1 - 1/(e^{a-t}+1), the step integrates exactly
            low, e1 = _quad(lambda t: _fermi_kernel(a - t), 0.0, a,
                            epsabs=tol, weight="alg", wvar=(s - 1.0, 0.0))
            high, e2 = _quad(lambda u: (u + a) ** (s - 1.0) * _fermi_kernel(u), 0.0, math.inf,
                             epsabs=tol)
            return (scale - low + high) / g, (e1 + e2) / g
        # factor out e^a so the result keeps relative accuracy as a -> -inf
        ea = math.exp(a)

        def kern(t):
            return math.exp(-t) / (1.0 + math.exp(a - t))

        tol = 1e-15 * g
        head, e1 = _quad(kern, 0.0, 1.0, epsabs=tol, weight="alg", wvar=(s - 1.0, 0.0))
        tail, e2 = _quad(lambda t: t ** (s - 1.0) * kern(t), 1.0, math.inf, epsabs=tol)
        return ea * (head + tail) / g, ea * (e1 + e2) / g

    if s <= -1:
        raise DomainError(f"quadrature needs order > -1, got {s!r}")
    if s == 0:
        return float(special.expit(a)), 0.0
    g = math.gamma(s + 1.0)

    def bump(t):
        f = _fermi_kernel(t - a)
        return f * (1.0 - f)

    split = max(a, 1.0)
    tol = 1e-16
    head, e1 = _quad(bump, 0.0, split, epsabs=tol, weight="alg", wvar=(s, 0.0))
    tail, e2 = _quad(lambda t: t**s * bump(t), split, math.inf, epsabs=tol)
    return (head + tail) / g, (e1 + e2) / g


def polylog_quadrature(nu: float, a: float) -> PolylogResult:
    """Li_nu(-e^a) from its Fermi-Dirac integral representation.

        Li_nu(-e^a) = -(1/Gamma(nu)) int_0^inf t^(nu-1) / (e^(t-a) + 1) dt

    For a > 0 the integrand is split at t = a and the unit step below the
    Fermi level is integrated in closed form.
    """
    if nu <= 0:
        raise DomainError(f"polylog_quadrature needs nu > 0, got {nu!r}")
    value, err = _fd_quadrature(nu, a)
    return PolylogResult(-value, PolylogMethod.QUADRATURE, err)


def _inversion_sum(nu: float, a: float) -> tuple[float, float]:
    """2 sum_n eta(2n) a^(nu-2n) / Gamma(nu+1-2n) and its truncation error."""
    if float(nu).is_integer() and nu >= 0:
        total = math.fsum(
            2.0 * dirichlet_eta(2 * n) * a ** (nu - 2 * n) * special.rgamma(nu + 1 - 2 * n)
            for n in range(int(nu) // 2 + 1)
        )
        return total, 0.0

    # asymptotic series: keep terms while they shrink (optimal truncation)
    terms = []
    prev = math.inf
    omitted = 0.0
    for n in range(200):
        t = 2.0 * dirichlet_eta(2 * n) * a ** (nu - 2 * n) * special.rgamma(nu + 1 - 2 * n)
        if n >= 1 and abs(t) >= prev:
            omitted = abs(t)
            break
        if terms and abs(t) < 1e-16 * abs(math.fsum(terms)):
            omitted = abs(t)
            break
        terms.append(t)
        prev = abs(t)
    return math.fsum(terms), omitted


def polylog_inversion(nu: float, a: float) -> PolylogResult:
    """Li_nu(-e^a) for large fugacity, expanded in powers of a = ln z.

        Li_nu(-e^a) = -2 sum_n eta(2n) a^(nu-2n) / Gamma(nu+1-2n)
                      - cos(pi nu) Li_nu(-e^-a)

    For integer nu the sum has int(nu/2)+1 nonzero terms and the result is
    exact.  Otherwise the sum is asymptotic: it is cut at its smallest
    term, and ``est_error`` is the first omitted term, which is of order
    e^-a.  At half-integer nu the reflection term is absent.
    """
    if nu <= -1:
        raise DomainError(f"polylog_inversion needs nu > -1, got {nu!r}")
    if a < INVERSION_MIN_A:
        raise DomainError(f"inversion expansion needs a >= {INVERSION_MIN_A}, got {a!r}")
    total, trunc = _inversion_sum(nu, a)
    c = cos_pi(nu)
    refl, refl_err = 0.0, 0.0
    if c != 0.0:
        r = polylog_series(nu, -math.exp(-a))
        refl, refl_err = c * r.value, abs(c) * r.est_error
    return PolylogResult(-total - refl, PolylogMethod.INVERSION, trunc + refl_err)


def fermi_dirac(s: float, a: float, rtol: float = 1e-14) -> float:
    """-Li_s(-e^a), positive, for order s > -1.

    Series for a <= -2, inversion for a >= 2 when its error estimate is
    below ``rtol`` (always, for integer s), quadrature otherwise.
    """
    if a <= -INVERSION_MIN_A:
        return -_series_sum(s, -math.exp(a))[0]
    if a >= INVERSION_MIN_A:
        r = polylog_inversion(s, a)
        if r.est_error <= rtol * abs(r.value):
            return -r.value
    return _fd_quadrature(s, a)[0]
