"""Finite-difference Laplace-Beltrami operator and ODE residuals.

Delta f = (1/sqrt g) d_i (sqrt g g^{ik} d_k f) is applied with the signed
metric, so that the basis functions satisfy

    Delta Psi = (rho^2 + 1/4) / R^2 * Psi.

Metric factors come from :func:`geometry.lb_coefficients` (closed forms);
only the field itself is differenced.  Residuals are normalized by the
eigenvalue scale times the largest |f| on the stencil, which stays
meaningful near zeros of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import (
    BasisParams,
    EPLimit,
    EPParams,
    EQParams,
    HOParams,
    HPParams,
    LimitParams,
    SCPParams,
    SParams,
    ep_limit_factor,
    eval_basis,
    eval_limit,
)
from .errors import DomainError
from .geometry import ChartPoint, EuclidPoint, check_domain, lb_coefficients
from .specfun import LogComplex, log_legendre_p_interval

EPS = np.finfo(float).eps
DEFAULT_REL_STEP = EPS ** (1.0 / 6.0)
MAX_SHRINK = 6

# central-difference stencils: offsets, weights for f' and f''
_STENCILS = {
    2: ((-1, 0, 1), (-0.5, 0.0, 0.5), (1.0, -2.0, 1.0)),
    4: ((-2, -1, 0, 1, 2),
        (1 / 12, -8 / 12, 0.0, 8 / 12, -1 / 12),
        (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
}


@dataclass(frozen=True)
class FDScheme:
    """Central-difference settings.

    Parameters
    ----------
    order : {2, 4}
    richardson : bool
        Combine steps h and h/2 to cancel the leading error term.
    rel_step : float
        Step is ``rel_step * max(|xi|, 1)`` per coordinate.
    """

    order: int = 4
    richardson: bool = False
    rel_step: float = DEFAULT_REL_STEP

    def __post_init__(self):
        if self.order not in _STENCILS:
            raise ValueError(f"order must be 2 or 4, got {self.order!r}")
        if not self.rel_step > 0:
            raise ValueError(f"rel_step must be positive, got {self.rel_step!r}")

    def step(self, x: float) -> float:
        return self.rel_step * max(abs(x), 1.0)


def _derivs_1d(f: Callable[[float], complex], x: float, h: float, order: int) -> tuple[complex, complex, list]:
    offs, w1, w2 = _STENCILS[order]
    vals = [f(x + o * h) for o in offs]
    d1 = sum(w * v for w, v in zip(w1, vals)) / h
    d2 = sum(w * v for w, v in zip(w2, vals)) / (h * h)
    return d1, d2, vals


def derivatives_1d(f: Callable[[float], complex], x: float, scheme: FDScheme = FDScheme(),
                   h: float | None = None) -> tuple[complex, complex, float]:
    """(f'(x), f''(x), max |f| on the stencil)."""
    h = scheme.step(x) if h is None else h
    d1, d2, vals = _derivs_1d(f, x, h, scheme.order)
    if scheme.richardson:
        e1, e2, v2 = _derivs_1d(f, x, 0.5 * h, scheme.order)
        c = 2.0 ** scheme.order
        d1, d2 = (c * e1 - d1) / (c - 1), (c * e2 - d2) / (c - 1)
        vals = vals + v2
    return d1, d2, max(abs(v) for v in vals)


def _stencil_ok(p: ChartPoint, h1: float, h2: float, reach: int) -> bool:
    try:
        for s in (-reach, reach):
            check_domain(p.shifted(s * h1, 0.0), allow_apex=False)
            check_domain(p.shifted(0.0, s * h2), allow_apex=False)
    except DomainError:
        return False
    return True


def _lb_with_max(f: Callable[[ChartPoint], complex], p: ChartPoint, R: float, scheme: FDScheme):
    check_domain(p, allow_apex=False)
    coef = lb_coefficients(p, R)
    h1, h2 = scheme.step(p.xi1), scheme.step(p.xi2)
    reach = len(_STENCILS[scheme.order][0]) // 2
    for _ in range(MAX_SHRINK + 1):
        if _stencil_ok(p, h1, h2, reach):
            break
        h1, h2 = 0.5 * h1, 0.5 * h2
    else:
        raise DomainError(f"finite-difference stencil around {p} leaves the chart even after shrinking the step")
    d1a, d2a, m1 = derivatives_1d(lambda t: f(ChartPoint(p.chart, t, p.xi2)), p.xi1, scheme, h1)
    d1b, d2b, m2 = derivatives_1d(lambda t: f(ChartPoint(p.chart, p.xi1, t)), p.xi2, scheme, h2)
    # all charts are orthogonal: h12 = 0
    val = coef.h11 * d2a + coef.h22 * d2b + coef.b1 * d1a + coef.b2 * d1b
    return complex(val), max(m1, m2)


def lb_apply(f: Callable[[ChartPoint], complex], p: ChartPoint, R: float, scheme: FDScheme = FDScheme()) -> complex:
    """Finite-difference Laplace-Beltrami operator of ``f`` at ``p``.

    The step is halved (up to 6 times) when the stencil leaves the chart.

    Raises
    ------
    DomainError
        If no admissible stencil is found.
    """
    return _lb_with_max(f, p, R, scheme)[0]


def eigenvalue(rho: float, R: float) -> float:
    """-sigma (sigma + 1) / R^2 with sigma = -1/2 + i rho."""
    return (rho * rho + 0.25) / (R * R)


def _scaled_field(evaluate: Callable, anchor: LogComplex) -> Callable:
    # evaluate relative to the value at the centre so large-rho fields stay finite
    shift = -anchor.log_mag if not anchor.is_zero else 0.0
    return lambda q: evaluate(q).scaled(shift).to_complex()


def helmholtz_residual(params: BasisParams, p: ChartPoint, R: float, scheme: FDScheme = FDScheme()) -> float:
    """|Delta Psi - lam Psi| / (lam max_stencil |Psi|), lam = (rho^2 + 1/4)/R^2."""
    def ev(q):
        return eval_basis(params, q, R).value

    f = _scaled_field(ev, ev(p))
    lap, fmax = _lb_with_max(f, p, R, scheme)
    lam = eigenvalue(params.rho, R)
    if fmax == 0:
        return 0.0
    return abs(lap - lam * f(p)) / (lam * fmax)


def flat_laplacian(f: Callable[[float, float], complex], x: float, y: float,
                   scheme: FDScheme = FDScheme()) -> tuple[complex, float]:
    """(f_xx + f_yy, max |f| on the stencil) for a Cartesian field."""
    _, dxx, mx = derivatives_1d(lambda t: f(t, y), x, scheme)
    _, dyy, my = derivatives_1d(lambda t: f(x, t), y, scheme)
    return dxx + dyy, max(mx, my)


def flat_residual(lp: LimitParams, e: EuclidPoint, scheme: FDScheme = FDScheme(), R: float | None = None) -> float:
    """|Delta f + k^2 f| / (k^2 max_stencil |f|) for a flat target.

    The elliptic-parabolic target is differenced in parabolic coordinates,
    Delta = (d_xi^2 + d_eta^2) / (xi^2 + eta^2); all others in (x, y).
    ``R`` is only used by targets with R-dependent phases.
    """
    k2 = lp.k * lp.k
    if isinstance(lp, EPLimit):
        xi, eta = e.parabolic

        def g(a, b):
            return eval_limit(lp, EuclidPoint.from_parabolic(a, b)).value.to_complex()

        lap, fmax = flat_laplacian(g, xi, eta, scheme)
        lap /= xi * xi + eta * eta
        f0 = g(xi, eta)
    else:
        def g(a, b):
            return eval_limit(lp, EuclidPoint(a, b), R).value.to_complex()

        lap, fmax = flat_laplacian(g, e.x, e.y, scheme)
        f0 = g(e.x, e.y)
    if fmax == 0:
        return 0.0
    return abs(lap + k2 * f0) / (k2 * fmax)


def ep_separation_residual(rho: float, s: float, a: float, scheme: FDScheme = FDScheme()) -> float:
    """Residual of F'' + (s^2 - (rho^2 + 1/4)/cosh^2 a) F = 0, F(a) = P^{is}_{i rho - 1/2}(tanh a).

    Normalized by (s^2 + (rho^2 + 1/4)/cosh^2 a) max_stencil |F|.
    """
    def ev(t):
        return log_legendre_p_interval(1j * s, 1j * rho - 0.5, math.tanh(t))

    F = _scaled_field(ev, ev(a))
    _, d2, fmax = derivatives_1d(F, a, scheme)
    pot = (rho * rho + 0.25) / math.cosh(a) ** 2
    if fmax == 0:
        return 0.0
    return abs(d2 + (s * s - pot) * F(a)) / ((s * s + pot) * fmax)


def ep_limit_ode_residual(k: float, lam: float, xi: float, scheme: FDScheme = FDScheme(), which: str = "xi") -> float:
    """Residual of the parabolic-cylinder limit ODEs.

    ``which="xi"``:  F'' + (lam + k^2 xi^2) F = 0, F = D_{(i lam/k - 1)/2}(sqrt(-2ik) xi)
    ``which="eta"``: G'' + (k^2 eta^2 - lam) G = 0, G = D_{-(i lam/k + 1)/2}(sqrt(-2ik) eta)

    Normalized by (|lam| + k^2 xi^2) max_stencil |F|.
    """
    lp = EPLimit(k, lam)
    sign = 1.0 if which == "xi" else -1.0

    def ev(t):
        return ep_limit_factor(lp, t, which)

    F = _scaled_field(ev, ev(xi))
    _, d2, fmax = derivatives_1d(F, xi, scheme)
    pot = sign * lam + k * k * xi * xi
    if fmax == 0:
        return 0.0
    return abs(d2 + pot * F(xi)) / ((abs(lam) + k * k * xi * xi) * fmax)


# ------------------------------------------------------------------ randomized cases

# sampling boxes for the Helmholtz suite; these stay inside the reach of the
# Legendre backends (interval arguments above -0.866)
HELMHOLTZ_BOXES = {
    "pseudo_spherical": ((0.05, 3.0), (0.0, 2 * math.pi)),
    "equidistant": ((-1.2, 1.2), (-2.0, 2.0)),
    "horocyclic": ((-1.5, 1.5), (0.3, 3.0)),
    "semi_circular_parabolic": ((0.3, 2.0), (0.3, 2.0)),
    "elliptic_parabolic": ((0.05, 1.5), (-1.0, 1.3)),
    "hyperbolic_parabolic": ((0.3, 2.0), (0.3, 2.5)),
}


def random_helmholtz_cases(family: str, n: int, rng: np.random.Generator):
    """n random (params, point, R) triples with rho in [0.5, 5] and R in [0.5, 5]."""
    (a0, a1), (b0, b1) = HELMHOLTZ_BOXES[family]
    out = []
    for _ in range(n):
        rho = rng.uniform(0.5, 5.0)
        R = rng.uniform(0.5, 5.0)
        sgn = 1.0 if rng.random() < 0.5 else -1.0
        if family == "pseudo_spherical":
            params = SParams(rho, int(rng.integers(-2, 3)))
        elif family == "equidistant":
            params = EQParams(rho, rng.uniform(-3.0, 3.0), int(sgn))
        elif family == "horocyclic":
            params = HOParams(rho, sgn * rng.uniform(0.3, 3.0))
        elif family == "semi_circular_parabolic":
            params = SCPParams(rho, sgn * rng.uniform(0.3, 3.0))
        elif family == "elliptic_parabolic":
            params = EPParams(rho, rng.uniform(-3.0, 3.0))
        elif family == "hyperbolic_parabolic":
            params = HPParams(rho, rng.uniform(0.3, 3.0))
        else:
            raise DomainError(f"unknown family {family!r}")
        p = ChartPoint(family, rng.uniform(a0, a1), rng.uniform(b0, b1))
        out.append((params, p, R))
    return out
