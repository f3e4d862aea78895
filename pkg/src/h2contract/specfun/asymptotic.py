"""Leading-order asymptotic forms used by the contraction analysis.

Each is implemented exactly as the closed form reads, with principal
inverse-hyperbolic branches, so it can be compared against the exact
functions on doubling parameter grids.
"""

from __future__ import annotations

import cmath
import math

from ..errors import DomainError
from .bessel import macdonald_k_scaled

ASYM_K_XMIN = 5.0


def asym_macdonald_k(nu: float, x: float, *, x_min: float = ASYM_K_XMIN, scaled: bool = False) -> float:
    """Large-order form of K_{i nu}(x) for nu > x >> 1.

    K_{i nu}(x) ~ sqrt(2 pi) (nu^2 - x^2)^(-1/4) exp(-pi nu / 2)
                  sin(pi/4 - sqrt(nu^2 - x^2) + nu acosh(nu / x))

    Parameters
    ----------
    x_min : float
        Smallest accepted x.
    scaled : bool
        Drop the exp(-pi nu / 2) factor (compare with ``macdonald_k_scaled``).

    Raises
    ------
    DomainError
        If nu <= x or x < x_min.
    """
    nu, x = float(nu), float(x)
    if not nu > x:
        raise DomainError(f"asymptotic form needs nu > x, got nu={nu:g}, x={x:g}")
    if x < x_min:
        raise DomainError(f"asymptotic form needs x >= {x_min:g}, got {x:g}")
    w = math.sqrt(nu * nu - x * x)
    amp = math.sqrt(2.0 * math.pi) / math.sqrt(w)
    if not scaled:
        amp *= math.exp(-0.5 * math.pi * nu)
    return amp * math.sin(0.25 * math.pi - w + nu * math.acosh(nu / x))


def macdonald_envelope(nu: float, x: float, *, scaled: bool = True) -> float:
    """Amplitude sqrt(2 pi) (nu^2 - x^2)^(-1/4) [exp(-pi nu/2)] of the oscillatory regime."""
    w = math.sqrt(float(nu) ** 2 - float(x) ** 2)
    amp = math.sqrt(2.0 * math.pi / w)
    return amp if scaled else amp * math.exp(-0.5 * math.pi * nu)


def asym_bessel_j_imag(p: float, z: float, *, scaled: bool = False) -> complex:
    """Large p, z form of J_{ip}(z).

    2 pi J_{ip}(z) ~ sqrt(2 pi) (p^2 + z^2)^(-1/4)
                     exp(i sqrt(p^2 + z^2) - i p asinh(p / z) - i pi/4) exp(p pi / 2)

    With ``scaled`` the factor exp(p pi / 2) is divided out.
    """
    p, z = float(p), float(z)
    if p <= 0 or z <= 0:
        raise DomainError(f"need p > 0 and z > 0, got p={p:g}, z={z:g}")
    r = math.hypot(p, z)
    val = math.sqrt(2.0 * math.pi / r) * cmath.exp(1j * (r - p * math.asinh(p / z) - 0.25 * math.pi))
    val /= 2.0 * math.pi
    if not scaled:
        val *= math.exp(0.5 * math.pi * p)
    return val


def macdonald_asym_error(nu: float, x: float, *, samples: int = 9) -> float:
    """Envelope-relative error of :func:`asym_macdonald_k` over one oscillation.

    Returns max |asym - exact| / envelope over x' in [x, x + pi x / sqrt(nu^2 - x^2)],
    the x-range over which the phase advances by about pi.  A pointwise
    relative error is dominated by how close x sits to a zero of K and is
    not monotone in nu.
    """
    nu, x = float(nu), float(x)
    width = math.pi * x / math.sqrt(nu * nu - x * x)
    worst = 0.0
    for j in range(samples):
        xj = x + width * j / (samples - 1)
        err = abs(asym_macdonald_k(nu, xj, scaled=True) - macdonald_k_scaled(nu, xj)) / macdonald_envelope(nu, xj)
        worst = max(worst, err)
    return worst
