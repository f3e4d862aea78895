"""Legendre functions P^mu_nu of complex degree and order.

Two separate backends:

* interval (-1, 1), Ferrers convention: even/odd split into two 2F1 series
  in x**2 with reciprocal-gamma weights, so gamma poles simply switch a term
  off.  Close to x = 1 the series in (1 - x)/2 is used instead.
* ray (1, inf), Hobson convention: a Laplace-type integral
      P = Gamma(1/2-mu) / (Gamma(-nu-mu) Gamma(1+nu-mu)) * sqrt(2/pi)
          * (z^2-1)^(-mu/2) * int_0^inf (z + cosh t)^(mu-1/2) cosh((nu+1/2) t) dt
  evaluated by adaptive quadrature, the 2F1 series in (1 - z)/2 as a second
  path, and for integer order m >= 0 the integral
      P^m_nu(z) = (nu+1)_m / pi * int_0^pi (z + sqrt(z^2-1) cos psi)^nu cos(m psi) dpsi.

All routines have a ``log_`` variant returning :class:`LogComplex`, since
the gamma weights grow like exp(pi*|Im|/2).
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .gamma import log_gamma_complex, log_rgamma
from .hypergeometric import HYP2F1_ZMAX, hyp2f1
from .logcomplex import LogComplex
from .quadrature import integrate, oscillation_breakpoints

SERIES_TOL = 1e-16
QUAD_RTOL = 1e-14
# L1 / |integral| above which the quadrature result is distrusted
QUAD_LOSS_LIMIT = 1e6
_LOG_SQRT_PI = 0.5 * math.log(math.pi)
_LOG2 = math.log(2.0)


def _is_nonneg_int(w: complex) -> bool:
    return w.imag == 0 and w.real >= 0 and w.real == math.floor(w.real)


def _is_pos_int(w: complex) -> bool:
    return _is_nonneg_int(w) and w.real >= 1


# ------------------------------------------------------------------ interval

def _interval_even_odd(mu: complex, nu: complex, x: float) -> LogComplex:
    x2 = x * x
    a = -0.5 * (mu + nu)
    t1 = log_rgamma(0.5 * (1 - mu - nu)) * log_rgamma(1 + 0.5 * (nu - mu))
    if not t1.is_zero:
        f1 = hyp2f1(a, 0.5 * (1 - mu + nu), 0.5, x2, tol=SERIES_TOL).value
        t1 = t1 * LogComplex.from_complex(f1)
    t2 = log_rgamma(0.5 * (1 + nu - mu)) * log_rgamma(a)
    if not t2.is_zero and x != 0:
        f2 = hyp2f1(0.5 * (1 - mu - nu), 1 + 0.5 * (nu - mu), 1.5, x2, tol=SERIES_TOL).value
        t2 = t2 * LogComplex.from_complex(-2.0 * x * f2)
    else:
        t2 = LogComplex.zero()
    pref = LogComplex.from_log(mu * _LOG2 + _LOG_SQRT_PI - 0.5 * mu * math.log1p(-x2))
    return pref * (t1 + t2)


def _interval_near_one(mu: complex, nu: complex, x: float) -> LogComplex:
    # P^mu_nu(x) = ((1+x)/(1-x))^(mu/2) / Gamma(1-mu) * 2F1(-nu, nu+1; 1-mu; (1-x)/2)
    if _is_pos_int(mu):
        raise DomainError("positive integer order is not supported by the (1-x)/2 series")
    f = hyp2f1(-nu, nu + 1, 1 - mu, 0.5 * (1 - x), tol=SERIES_TOL).value
    ratio = 0.5 * mu * (math.log1p(x) - math.log1p(-x))
    return LogComplex.from_log(ratio) * log_rgamma(1 - mu) * LogComplex.from_complex(f)


def log_legendre_p_interval(mu: complex, nu: complex, x: float) -> LogComplex:
    """Ferrers function P^mu_nu(x), -1 < x < 1, in log form.

    Uses the x**2 series when x**2 is within the 2F1 series cap and the
    (1 - x)/2 series for x closer to +1.

    Raises
    ------
    DomainError
        Outside (-1, 1), or for x below -sqrt(cap) where neither series applies.
    """
    mu, nu, x = complex(mu), complex(nu), float(x)
    if not -1.0 < x < 1.0:
        raise DomainError(f"interval Legendre needs -1 < x < 1, got {x!r}")
    if x * x <= HYP2F1_ZMAX:
        return _interval_even_odd(mu, nu, x)
    if x > 0:
        return _interval_near_one(mu, nu, x)
    raise DomainError(f"x = {x:g} lies beyond the series cap |x| <= {math.sqrt(HYP2F1_ZMAX):.4f} on the negative side")


def legendre_p_interval(mu: complex, nu: complex, x: float) -> complex:
    """Ferrers function P^mu_nu(x) on (-1, 1)."""
    return log_legendre_p_interval(mu, nu, x).to_complex()


# ------------------------------------------------------------------ ray

def ray_integral_converges(mu: complex, nu: complex) -> bool:
    """Whether the (z + cosh t) integral converges: Re mu - 1/2 + |Re(nu + 1/2)| < 0."""
    mu, nu = complex(mu), complex(nu)
    return mu.real - 0.5 + abs(nu.real + 0.5) < 0


def _log_z_plus_cosh(z: float, t: np.ndarray) -> np.ndarray:
    # log(z + cosh t) without overflow for large t
    e = np.exp(-t)
    return t + np.log(0.5 + z * e + 0.5 * e * e)


def _ray_quad(mu: complex, nu: complex, z: float, cancellation: list | None = None) -> LogComplex:
    if not ray_integral_converges(mu, nu):
        raise DomainError(
            "integral representation diverges: need Re(mu) - 1/2 + |Re(nu + 1/2)| < 0, "
            f"got mu={mu}, nu={nu}"
        )
    lam = nu + 0.5
    gam = 0.5 - mu.real - abs(lam.real)
    t_hi = min(400.0, (40.0 + max(0.0, math.log(1.0 / gam))) / gam)
    a = mu - 0.5

    def f(t):
        L = _log_z_plus_cosh(z, t)
        return 0.5 * (np.exp(a * L + lam * t) + np.exp(a * L - lam * t))

    def rate(t):
        dl = np.sinh(t) / (z + np.cosh(t))
        return np.abs(mu.imag) * dl + np.abs(lam.imag)

    edges = oscillation_breakpoints(0.0, t_hi, rate, min_panels=16)
    res = integrate(f, edges, rtol=QUAD_RTOL)
    val = res.value
    if cancellation is not None:
        cancellation.append(res.l1 / abs(val) if val != 0 else math.inf)
    pref = (log_gamma_complex(0.5 - mu) * log_rgamma(-nu - mu) * log_rgamma(1 + nu - mu)
            * LogComplex.from_log(0.5 * math.log(2.0 / math.pi) - 0.5 * mu * math.log(z * z - 1.0)))
    return pref * LogComplex.from_complex(val)


def _ray_hyp(mu: complex, nu: complex, z: float) -> LogComplex:
    w = 0.5 * (1.0 - z)
    if abs(w) > HYP2F1_ZMAX:
        raise DomainError(f"(1-z)/2 = {w:g} is beyond the 2F1 series cap")
    if _is_pos_int(mu):
        raise DomainError("positive integer order is not supported by the (1-z)/2 series")
    f = hyp2f1(-nu, nu + 1, 1 - mu, w, tol=SERIES_TOL).value
    ratio = 0.5 * mu * (math.log(z + 1.0) - math.log(z - 1.0))
    return LogComplex.from_log(ratio) * log_rgamma(1 - mu) * LogComplex.from_complex(f)


def _ray_laplace(m: int, nu: complex, z: float, sq: float | None = None) -> LogComplex:
    if sq is None:
        sq = math.sqrt(z * z - 1.0)

    def f(p):
        return np.exp(nu * np.log(z + sq * np.cos(p))) * np.cos(m * p)

    def rate(p):
        return abs(nu.imag) * sq * np.abs(np.sin(p)) / (z + sq * np.cos(p)) + m

    edges = oscillation_breakpoints(0.0, math.pi, rate, min_panels=8)
    val = integrate(f, edges, rtol=QUAD_RTOL).value / math.pi
    poch = 1.0 + 0j
    for j in range(m):
        poch *= nu + 1 + j
    return LogComplex.from_complex(poch) * LogComplex.from_complex(val)


def log_legendre_p_ray(mu: complex, nu: complex, z: float, *, method: str = "auto") -> LogComplex:
    """Legendre function P^mu_nu(z), z > 1, in log form.

    Parameters
    ----------
    method : {"auto", "quad", "hyp", "laplace"}
        "quad" integrates the (z + cosh t) representation (needs
        Re mu - 1/2 + |Re(nu + 1/2)| < 0), "hyp" sums 2F1 in (1 - z)/2
        (needs z <= 2.5 and mu not a positive integer), "laplace" integrates
        over [0, pi] (needs mu a nonnegative integer).  "auto" uses "laplace"
        for nonnegative integer order, otherwise "quad", switching to "hyp"
        when the quadrature reports heavy cancellation.

    Raises
    ------
    DomainError
        If z <= 1 or no applicable method exists.
    """
    mu, nu, z = complex(mu), complex(nu), float(z)
    if not z > 1.0:
        raise DomainError(f"ray Legendre needs z > 1, got {z!r}")
    if method == "quad":
        return _ray_quad(mu, nu, z)
    if method == "hyp":
        return _ray_hyp(mu, nu, z)
    if method == "laplace":
        if not _is_nonneg_int(mu):
            raise DomainError("the [0, pi] integral needs a nonnegative integer order")
        return _ray_laplace(int(mu.real), nu, z)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if _is_nonneg_int(mu):
        return _ray_laplace(int(mu.real), nu, z)
    hyp_ok = abs(0.5 * (1.0 - z)) <= HYP2F1_ZMAX and not _is_pos_int(mu)
    if ray_integral_converges(mu, nu):
        # without a stationary point the integral is exponentially small and cancels
        loss: list = []
        val = _ray_quad(mu, nu, z, loss)
        if loss[0] < QUAD_LOSS_LIMIT or not hyp_ok:
            return val
        return _ray_hyp(mu, nu, z)
    if hyp_ok:
        return _ray_hyp(mu, nu, z)
    raise DomainError(
        "no applicable representation: integral diverges "
        f"(Re mu - 1/2 + |Re(nu + 1/2)| = {mu.real - 0.5 + abs(nu.real + 0.5):.3g} >= 0) "
        "and z is beyond the 2F1 series cap"
    )


def log_legendre_p_cosh(mu: complex, nu: complex, tau: float) -> LogComplex:
    """P^mu_nu(cosh tau) for tau > 0, in log form.

    For nonnegative integer order the [0, pi] integral is fed sinh(tau)
    directly, which keeps full relative accuracy as tau -> 0 where
    cosh(tau) - 1 is lost to rounding.  Other orders go through
    :func:`log_legendre_p_ray`.
    """
    mu, nu, tau = complex(mu), complex(nu), float(tau)
    if not tau > 0:
        raise DomainError(f"need tau > 0, got {tau!r}")
    if _is_nonneg_int(mu):
        return _ray_laplace(int(mu.real), nu, math.cosh(tau), math.sinh(tau))
    return log_legendre_p_ray(mu, nu, math.cosh(tau))


def legendre_p_ray(mu: complex, nu: complex, z: float, *, method: str = "auto") -> complex:
    """Legendre function P^mu_nu(z) on z > 1 (Hobson convention)."""
    return log_legendre_p_ray(mu, nu, z, method=method).to_complex()
