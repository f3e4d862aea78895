"""Parabolic cylinder function D_nu(z) from its two-term Kummer representation."""

from __future__ import annotations

import cmath
import math

from .gamma import log_rgamma
from .hypergeometric import hyp1f1
from .logcomplex import LogComplex

SERIES_TOL = 1e-16
_LOG_SQRT_PI = 0.5 * math.log(math.pi)


def log_pcf_d(nu: complex, z: complex) -> LogComplex:
    """D_nu(z) in log form.

    D_nu(z) = 2^(nu/2) sqrt(pi) exp(-z^2/4) [ 1F1(-nu/2; 1/2; z^2/2) / Gamma((1-nu)/2)
              - sqrt(2) z 1F1((1-nu)/2; 3/2; z^2/2) / Gamma(-nu/2) ]

    A reciprocal gamma at a pole switches its term off exactly.
    """
    nu, z = complex(nu), complex(z)
    w = 0.5 * z * z
    t1 = log_rgamma(0.5 * (1 - nu))
    if not t1.is_zero:
        t1 = t1 * LogComplex.from_complex(hyp1f1(-0.5 * nu, 0.5, w, tol=SERIES_TOL).value)
    t2 = log_rgamma(-0.5 * nu)
    if not t2.is_zero and z != 0:
        f = hyp1f1(0.5 * (1 - nu), 1.5, w, tol=SERIES_TOL).value
        t2 = t2 * LogComplex.from_complex(-math.sqrt(2.0) * z * f)
    else:
        t2 = LogComplex.zero()
    pref = LogComplex.from_log(0.5 * nu * math.log(2.0) + _LOG_SQRT_PI - 0.25 * z * z)
    return pref * (t1 + t2)


def pcf_d(nu: complex, z: complex) -> complex:
    """Parabolic cylinder (Weber) function D_nu(z) for complex nu and z."""
    return log_pcf_d(nu, z).to_complex()


def sqrt_minus_2ik(k: float) -> complex:
    """Principal square root of -2ik for k > 0, i.e. sqrt(2k) exp(-i pi/4)."""
    return cmath.sqrt(-2j * float(k))
