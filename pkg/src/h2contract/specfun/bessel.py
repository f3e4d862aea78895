"""Bessel J and Macdonald K, with emphasis on purely imaginary order.

For imaginary order i*rho the values carry factors exp(+-pi*rho/2), so the
workhorses are the scaled functions

    bessel_j_scaled(rho, x)   = exp(-pi*|rho|/2) * J_{i rho}(x)
    macdonald_k_scaled(rho, x) = exp(+pi*|rho|/2) * K_{i rho}(x)

J is summed from its ascending series while the terms stay tame; once the
series would cancel badly (roughly exp(x^2 / 4 rho) for x < rho) a
Schlafli-type contour integral is used instead.  K comes from its cosh
integral with the contour shifted into the complex plane, which removes the
exp(-pi*rho/2) cancellation that the real-axis integral suffers.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConvergenceError, DomainError
from .gamma import log_rgamma
from .hypergeometric import hyp0f1
from .logcomplex import LogComplex
from .quadrature import integrate, oscillation_breakpoints

RHO_QUAD_CAP = 300.0
# accept the series when largest term / result stays below this
SERIES_LOSS_LIMIT = 1e5
# contour offset past the saddle, in units of 1/rho: costs exp(CONTOUR_SHIFT) in cancellation
CONTOUR_SHIFT = 2.0
# integrands are truncated once they fall exp(-TAIL_LOG) below the peak
TAIL_LOG = 45.0
QUAD_RTOL = 1e-14
SERIES_TOL = 1e-16


def _check_x(x: float, allow_zero: bool = False) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0 or (x == 0 and not allow_zero):
        raise DomainError(f"argument must be positive, got {x!r}")
    return x


# ---------------------------------------------------------------- J, series

def bessel_j_series(order: complex, x: float, *, tol: float = SERIES_TOL):
    """Ascending series for J_order(x) in log form.

    Returns
    -------
    value : LogComplex
    report : SeriesReport or None
        ``None`` when the value is known exactly (x = 0).
    """
    nu = complex(order)
    x = _check_x(x, allow_zero=True)
    if nu.imag == 0 and nu.real < 0 and nu.real == math.floor(nu.real):
        # J_{-n} = (-1)^n J_n
        n = int(-nu.real)
        val, rep = bessel_j_series(n, x, tol=tol)
        return (val if n % 2 == 0 else -val), rep
    if x == 0:
        if nu == 0:
            return LogComplex.one(), None
        if nu.real > 0:
            return LogComplex.zero(), None
        raise DomainError("J_order(0) is undefined for Re(order) <= 0, order != 0")
    rep = hyp0f1(nu + 1, -0.25 * x * x, tol=tol)
    pref = LogComplex.from_log(nu * math.log(0.5 * x)) * log_rgamma(nu + 1)
    return pref * LogComplex.from_complex(rep.value), rep


# ---------------------------------------------------------------- J, contour

def _j_imag_contour_scaled(rho: float, x: float, rtol: float = QUAD_RTOL) -> complex:
    # rho > 0; returns exp(-pi rho / 2) J_{i rho}(x)
    delta = min(0.5 * math.pi, CONTOUR_SHIFT / rho)
    alpha = 0.5 * math.pi + delta
    total = 0j

    # vertical piece w = i theta
    th_lo = max(-math.pi, 0.5 * math.pi - TAIL_LOG / rho)

    def f_vert(t):
        return np.exp(1j * x * np.sin(t) + rho * (t - 0.5 * math.pi))

    edges = oscillation_breakpoints(th_lo, alpha, lambda t: x * np.cos(t))
    total += integrate(f_vert, edges, rtol=rtol).value / (2 * math.pi)

    # upper ray w = u + i alpha
    sd = math.sin(delta)
    u_hi = math.asinh((rho * delta + TAIL_LOG) / (x * sd))
    ca, sa = math.cos(alpha), math.sin(alpha)

    def f_up(u):
        return np.exp(x * (np.sinh(u) * ca + 1j * np.cosh(u) * sa) - 1j * rho * u + rho * delta)

    edges = oscillation_breakpoints(0.0, u_hi, lambda u: x * np.sinh(u) * sa - rho)
    total += integrate(f_up, edges, rtol=rtol).value / (2j * math.pi)

    # lower ray w = u - i pi, weight exp(-3 pi rho / 2)
    if 1.5 * math.pi * rho < TAIL_LOG:
        u_lo = math.asinh(TAIL_LOG / x)

        def f_low(u):
            return np.exp(-x * np.sinh(u) - 1j * rho * u - 1.5 * math.pi * rho)

        edges = oscillation_breakpoints(0.0, u_lo, lambda u: rho + 0 * u)
        total -= integrate(f_low, edges, rtol=rtol).value / (2j * math.pi)
    return total


def bessel_j_scaled(rho: float, x: float, *, method: str = "auto") -> complex:
    """exp(-pi*|rho|/2) * J_{i rho}(x) for real rho and x >= 0.

    Parameters
    ----------
    method : {"auto", "series", "contour"}
        "auto" sums the series when its cancellation is mild and otherwise
        integrates along the contour.
    """
    rho = float(rho)
    x = _check_x(x, allow_zero=True)
    if rho < 0:
        return bessel_j_scaled(-rho, x, method=method).conjugate()
    if method not in ("auto", "series", "contour"):
        raise ValueError(f"unknown method {method!r}")
    if x == 0:
        return 1.0 + 0j if rho == 0 else 0j
    if method != "contour" or rho == 0:
        try:
            val, rep = bessel_j_series(1j * rho, x)
            if method == "series" or rho == 0 or rep.cancellation < SERIES_LOSS_LIMIT:
                return val.scaled(-0.5 * math.pi * rho).to_complex()
        except ConvergenceError:
            if method == "series":
                raise
    return _j_imag_contour_scaled(rho, x)


def bessel_j(order: complex, x: float) -> complex:
    """J_order(x) for complex order and real x >= 0.

    Purely imaginary orders are routed through :func:`bessel_j_scaled`.

    Raises
    ------
    OverflowError
        When |J| is too large for a double; use ``bessel_j_scaled`` instead.
    """
    nu = complex(order)
    if nu.real == 0 and nu.imag != 0:
        rho = nu.imag
        return LogComplex.from_complex(bessel_j_scaled(rho, x)).scaled(0.5 * math.pi * abs(rho)).to_complex()
    val, _ = bessel_j_series(nu, x)
    return val.to_complex()


def log_bessel_j_imag(rho: float, x: float) -> LogComplex:
    """J_{i rho}(x) in log form (no overflow for large rho)."""
    return LogComplex.from_complex(bessel_j_scaled(rho, x)).scaled(0.5 * math.pi * abs(float(rho)))


# ---------------------------------------------------------------- K

def _k_contour_scaled(rho: float, x: float, rtol: float = QUAD_RTOL) -> float:
    # rho >= 0; exp(pi rho/2) K_{i rho}(x) = Re int_0^inf exp(-x cosh(u+ia) + i rho (u+ia)) du * exp(pi rho/2)
    if rho < x:
        alpha = math.asin(rho / x)
    else:
        alpha = 0.5 * math.pi - min(0.5 * math.pi, CONTOUR_SHIFT / rho)
    ca, sa = math.cos(alpha), math.sin(alpha)
    base = -x * ca + rho * (0.5 * math.pi - alpha)
    # |integrand| = exp(base - x ca (cosh u - 1))
    u_hi = math.acosh(1.0 + TAIL_LOG / (x * ca))

    def f(u):
        ch, sh = np.cosh(u), np.sinh(u)
        return np.exp(base - x * ca * (ch - 1.0) + 1j * (rho * u - x * sh * sa))

    edges = oscillation_breakpoints(0.0, u_hi, lambda u: rho - x * np.cosh(u) * sa)
    return integrate(f, edges, rtol=rtol).value.real


def _k_real_axis(rho: float, x: float, rtol: float = QUAD_RTOL) -> float:
    # plain cosh integral on the real axis (cancels like exp(-pi rho / 2))
    t_hi = math.acosh(max(1.0, (TAIL_LOG + 0.5 * math.pi * rho) / x + 1.0))

    def f(t):
        return np.exp(-x * np.cosh(t)) * np.cos(rho * t)

    edges = oscillation_breakpoints(0.0, t_hi, lambda t: rho + 0 * t)
    return integrate(f, edges, rtol=rtol).value.real


def _k_series_scaled(rho: float, x: float) -> float:
    # continuation K = -pi Im I_{i rho}(x) / sinh(pi rho)
    if rho == 0:
        raise DomainError("series continuation needs rho != 0")
    rep = hyp0f1(1 + 1j * rho, 0.25 * x * x, tol=SERIES_TOL)
    i_scaled = (LogComplex.from_log(1j * rho * math.log(0.5 * x)) * log_rgamma(1 + 1j * rho)
                * LogComplex.from_complex(rep.value)).scaled(-0.5 * math.pi * rho)
    return -2.0 * math.pi * i_scaled.to_complex().imag / (-math.expm1(-2.0 * math.pi * rho))


def macdonald_k_scaled(rho: float, x: float, *, method: str = "quad") -> float:
    """exp(pi*|rho|/2) * K_{i rho}(x).

    Parameters
    ----------
    method : {"quad", "real", "series"}
        "quad" is the shifted-contour integral (default), "real" the
        unshifted cosh integral, "series" the continuation through I_{i rho};
        the series is only accurate for small x (a few units).

    Raises
    ------
    DomainError
        For x <= 0, or |rho| above ``RHO_QUAD_CAP`` (use ``asym_macdonald_k``).
    """
    rho = abs(float(rho))
    x = _check_x(x)
    if rho > RHO_QUAD_CAP:
        raise DomainError(f"rho = {rho:g} exceeds the quadrature cap {RHO_QUAD_CAP:g}; use asym_macdonald_k")
    if method == "quad":
        return _k_contour_scaled(rho, x)
    if method == "real":
        return _k_real_axis(rho, x) * math.exp(0.5 * math.pi * rho)
    if method == "series":
        return _k_series_scaled(rho, x)
    raise ValueError(f"unknown method {method!r}")


def macdonald_k(rho: float, x: float, *, method: str = "quad") -> float:
    """K_{i rho}(x), real for real rho and x > 0."""
    rho = abs(float(rho))
    if method == "real":
        x = _check_x(x)
        if rho > RHO_QUAD_CAP:
            raise DomainError(f"rho = {rho:g} exceeds the quadrature cap {RHO_QUAD_CAP:g}; use asym_macdonald_k")
        return _k_real_axis(rho, x)
    return macdonald_k_scaled(rho, x, method=method) * math.exp(-0.5 * math.pi * rho)


def log_macdonald_k(rho: float, x: float) -> LogComplex:
    """K_{i rho}(x) in log form."""
    rho = abs(float(rho))
    return LogComplex.from_complex(macdonald_k_scaled(rho, x)).scaled(-0.5 * math.pi * rho)
