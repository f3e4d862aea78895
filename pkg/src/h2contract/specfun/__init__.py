"""Special functions with complex parameters."""

from .asymptotic import asym_bessel_j_imag, asym_macdonald_k, macdonald_asym_error, macdonald_envelope
from .bessel import (
    RHO_QUAD_CAP,
    bessel_j,
    bessel_j_scaled,
    bessel_j_series,
    log_bessel_j_imag,
    log_macdonald_k,
    macdonald_k,
    macdonald_k_scaled,
)
from .gamma import (
    gamma_complex,
    gamma_ratio,
    gamma_ratio_asym,
    log_gamma_complex,
    log_rgamma,
    loggamma,
    rgamma,
)
from .hypergeometric import SeriesReport, hyp0f1, hyp1f1, hyp2f1
from .legendre import (
    legendre_p_interval,
    legendre_p_ray,
    log_legendre_p_cosh,
    log_legendre_p_interval,
    log_legendre_p_ray,
    ray_integral_converges,
)
from .logcomplex import LogComplex
from .pcf import log_pcf_d, pcf_d, sqrt_minus_2ik
from .quadrature import QuadResult, integrate, oscillation_breakpoints

__all__ = [
    "LogComplex", "SeriesReport", "QuadResult",
    "loggamma", "log_gamma_complex", "gamma_complex", "rgamma", "log_rgamma",
    "gamma_ratio", "gamma_ratio_asym",
    "hyp2f1", "hyp1f1", "hyp0f1",
    "bessel_j", "bessel_j_scaled", "bessel_j_series", "log_bessel_j_imag",
    "macdonald_k", "macdonald_k_scaled", "log_macdonald_k", "RHO_QUAD_CAP",
    "legendre_p_interval", "legendre_p_ray", "log_legendre_p_interval", "log_legendre_p_ray",
    "log_legendre_p_cosh",
    "ray_integral_converges",
    "pcf_d", "log_pcf_d", "sqrt_minus_2ik",
    "asym_macdonald_k", "asym_bessel_j_imag", "macdonald_envelope", "macdonald_asym_error",
    "integrate", "oscillation_breakpoints",
]
