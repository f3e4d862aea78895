"""Separated Helmholtz solutions on H2 and their flat-plane limit targets.

Six families, one per separable chart, each labelled by the spectral
parameter rho (eigenvalue (rho^2 + 1/4)/R^2 of the Laplace-Beltrami
operator) and one further separation constant:

=====================  ============================================================
family                 Psi
=====================  ============================================================
pseudo_spherical       P^{|m|}_{i rho - 1/2}(cosh tau) exp(i m phi)
equidistant            (cosh tau1)^(-1/2) P^{i rho}_{-1/2 + i nu}(-eps tanh tau1) exp(i nu tau2)
horocyclic             N(rho, R) sqrt(ybar) K_{i rho}(|s| ybar) exp(i s xbar),
                       N = sqrt(rho sinh(pi rho) / (2 R^2 pi^3))
semi_circular_par.     sqrt(xi eta) J_{i rho}(sqrt(s) xi) K_{i rho}(sqrt(s) eta), s > 0
                       (xi and eta swapped, s -> -s, for s < 0)
elliptic_parabolic     sqrt(cos theta) P^{i rho}_{i s - 1/2}(sin theta) P^{i s}_{i rho - 1/2}(tanh a)
hyperbolic_parabolic   sqrt(sinh b sin theta) P^{i rho}_{i s - 1/2}(cosh b) P^{i rho}_{i s - 1/2}(cos theta)
=====================  ============================================================

Only the horocyclic family carries a normalization.  Values are returned
as :class:`BasisValue` (log form plus the linear value when it fits in a
double), since the gamma-weighted Legendre factors grow like exp(pi rho/2).

The flat targets (``eval_limit``) and the R-dependent constants they are
measured against (``prefactor``) are kept apart so that the contraction
error can be formed as Psi / prefactor - limit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import ClassVar, Union

from .errors import DomainError
from .geometry import (
    EP,
    EQ,
    HO,
    HP,
    PS,
    SCP,
    SCPR,
    ChartId,
    ChartPoint,
    EuclidPoint,
    check_domain,
)
from .specfun import (
    LogComplex,
    bessel_j,
    bessel_j_scaled,
    log_gamma_complex,
    log_legendre_p_cosh,
    log_legendre_p_interval,
    log_legendre_p_ray,
    log_pcf_d,
    macdonald_k_scaled,
    sqrt_minus_2ik,
)

SQRT2 = math.sqrt(2.0)
_LOG2 = math.log(2.0)
_LOG_PI = math.log(math.pi)

# families share the chart id of their defining chart; the rotated SCP chart
# carries the same functions as the plain one
FAMILIES = (PS, EQ, HO, SCP, EP, HP)
FAMILY_CHARTS = {PS: (PS,), EQ: (EQ,), HO: (HO,), SCP: (SCP, SCPR), EP: (EP,), HP: (HP,)}
# chart whose leading-order substitutions define each family's flat limit
LIMIT_CHART = {PS: PS, EQ: EQ, HO: HO, SCP: SCPR, EP: EP, HP: HP}
# the stationary-phase amplitude enters the hyperbolic-parabolic prefactor
# with this extra factor (see kk_amplitude)
HP_B_FACTOR = 2.0


def family_of(chart: "ChartId | str") -> ChartId:
    """Family id for a chart id (the rotated SCP chart maps to SCP)."""
    c = ChartId.parse(chart)
    return SCP if c is SCPR else c


def _real(name: str, v) -> float:
    v = float(v)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")
    return v


def _positive(name: str, v) -> float:
    v = _real(name, v)
    if not v > 0:
        raise DomainError(f"{name} must be positive, got {v!r}")
    return v


def _integer(name: str, v) -> int:
    if isinstance(v, bool) or float(v) != int(v):
        raise DomainError(f"{name} must be an integer, got {v!r}")
    return int(v)


def _sign(name: str, v) -> int:
    v = _integer(name, v)
    if v not in (1, -1):
        raise DomainError(f"{name} must be +1 or -1, got {v!r}")
    return v


# ------------------------------------------------------------------ parameters

@dataclass(frozen=True)
class SParams:
    rho: float
    m: int
    family: ClassVar[ChartId] = PS

    def __post_init__(self):
        object.__setattr__(self, "rho", _positive("rho", self.rho))
        object.__setattr__(self, "m", _integer("m", self.m))


@dataclass(frozen=True)
class EQParams:
    rho: float
    nu: float
    eps: int = 1
    family: ClassVar[ChartId] = EQ

    def __post_init__(self):
        object.__setattr__(self, "rho", _positive("rho", self.rho))
        object.__setattr__(self, "nu", _real("nu", self.nu))
        object.__setattr__(self, "eps", _sign("eps", self.eps))


@dataclass(frozen=True)
class HOParams:
    rho: float
    s: float
    family: ClassVar[ChartId] = HO

    def __post_init__(self):
        object.__setattr__(self, "rho", _positive("rho", self.rho))
        s = _real("s", self.s)
        if s == 0:
            raise DomainError("horocyclic family needs s != 0")
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class SCPParams:
    rho: float
    s: float
    family: ClassVar[ChartId] = SCP

    def __post_init__(self):
        object.__setattr__(self, "rho", _positive("rho", self.rho))
        s = _real("s", self.s)
        if s == 0:
            raise DomainError("semi-circular-parabolic family needs s != 0")
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class EPParams:
    rho: float
    s: float
    family: ClassVar[ChartId] = EP

    def __post_init__(self):
        object.__setattr__(self, "rho", _positive("rho", self.rho))
        object.__setattr__(self, "s", _real("s", self.s))


@dataclass(frozen=True)
class HPParams:
    rho: float
    s: float
    family: ClassVar[ChartId] = HP

    def __post_init__(self):
        object.__setattr__(self, "rho", _positive("rho", self.rho))
        s = _real("s", self.s)
        if not s > 0:
            raise DomainError(f"hyperbolic-parabolic family needs real s > 0 (discrete-spectrum case excluded), got {s!r}")
        object.__setattr__(self, "s", s)


BasisParams = Union[SParams, EQParams, HOParams, SCPParams, EPParams, HPParams]


@dataclass(frozen=True)
class Polar:
    """Flat target J_{|m|}(k r) exp(i m phi)."""

    k: float
    m: int
    family: ClassVar[ChartId] = PS

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))
        object.__setattr__(self, "m", _integer("m", self.m))


@dataclass(frozen=True)
class Plane:
    """Flat target exp(i k1 x - i eps k2 y)."""

    k1: float
    k2: float
    eps: int = 1
    family: ClassVar[ChartId] = EQ

    def __post_init__(self):
        object.__setattr__(self, "k1", _real("k1", self.k1))
        object.__setattr__(self, "k2", _real("k2", self.k2))
        object.__setattr__(self, "eps", _sign("eps", self.eps))
        if self.k == 0:
            raise DomainError("need k1^2 + k2^2 > 0")

    @property
    def k(self) -> float:
        return math.hypot(self.k1, self.k2)


@dataclass(frozen=True)
class HOLimit:
    """Flat target sin(k1 x - M(R)) exp(i k2 y)."""

    k1: float
    k2: float
    family: ClassVar[ChartId] = HO

    def __post_init__(self):
        object.__setattr__(self, "k1", _positive("k1", self.k1))
        k2 = _real("k2", self.k2)
        if k2 == 0:
            raise DomainError("horocyclic limit needs k2 != 0")
        object.__setattr__(self, "k2", k2)

    @property
    def k(self) -> float:
        return math.hypot(self.k1, self.k2)


@dataclass(frozen=True)
class SCPLimit:
    """Flat target exp(i k2 y + i d1 - i pi/4) sin(k1 x - pi/4 + d2) for k2 > k1.

    For k1 > k2 the roles of (x, k1) and (y, k2) are interchanged.
    """

    k1: float
    k2: float
    family: ClassVar[ChartId] = SCP

    def __post_init__(self):
        object.__setattr__(self, "k1", _positive("k1", self.k1))
        object.__setattr__(self, "k2", _positive("k2", self.k2))
        if self.k1 == self.k2:
            raise DomainError("semi-circular-parabolic limit needs k1 != k2 (s = R^2 (k2^2 - k1^2) != 0)")

    @property
    def k(self) -> float:
        return math.hypot(self.k1, self.k2)

    @property
    def swapped(self) -> bool:
        return self.k1 > self.k2


@dataclass(frozen=True)
class EPLimit:
    """Flat target D_{-(i lam/k + 1)/2}(sqrt(-2ik) eta) D_{(i lam/k - 1)/2}(sqrt(-2ik) xi)."""

    k: float
    lam: float
    family: ClassVar[ChartId] = EP

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))
        object.__setattr__(self, "lam", _real("lam", self.lam))


@dataclass(frozen=True)
class HPLimit:
    """Flat target exp(i k2 y - i k1 x), k1 > k2 > 0."""

    k1: float
    k2: float
    family: ClassVar[ChartId] = HP

    def __post_init__(self):
        object.__setattr__(self, "k1", _positive("k1", self.k1))
        object.__setattr__(self, "k2", _positive("k2", self.k2))
        if not self.k1 > self.k2:
            raise DomainError(
                f"hyperbolic-parabolic limit needs k1 > k2 (discrete-spectrum case excluded), "
                f"got k1={self.k1:g}, k2={self.k2:g}"
            )

    @property
    def k(self) -> float:
        return math.hypot(self.k1, self.k2)

    @property
    def q(self) -> float:
        """sqrt(k1^2 - k2^2)."""
        return math.sqrt((self.k1 - self.k2) * (self.k1 + self.k2))


LimitParams = Union[Polar, Plane, HOLimit, SCPLimit, EPLimit, HPLimit]

PARAM_TYPES = {PS: SParams, EQ: EQParams, HO: HOParams, SCP: SCPParams, EP: EPParams, HP: HPParams}
LIMIT_TYPES = {PS: Polar, EQ: Plane, HO: HOLimit, SCP: SCPLimit, EP: EPLimit, HP: HPLimit}


# ------------------------------------------------------------------ values

@dataclass(frozen=True)
class BasisValue:
    """A basis value in log form, with the linear value when representable."""

    value: LogComplex
    linear: complex | None

    @classmethod
    def of(cls, v: LogComplex) -> "BasisValue":
        return cls(v, v.to_complex() if v.representable else None)

    @classmethod
    def of_complex(cls, z: complex) -> "BasisValue":
        return cls(LogComplex.from_complex(z), complex(z))

    def __complex__(self) -> complex:
        return self.value.to_complex()


def _expi(theta: float) -> LogComplex:
    return LogComplex(0.0, theta)


def ho_normalization(rho: float, R: float) -> LogComplex:
    """sqrt(rho sinh(pi rho) / (2 R^2 pi^3)) in log form."""
    rho = _positive("rho", rho)
    R = _positive("R", R)
    log_sinh = math.pi * rho + math.log(-math.expm1(-2.0 * math.pi * rho)) - _LOG2
    return LogComplex(0.5 * (math.log(rho) + log_sinh - _LOG2 - 2.0 * math.log(R) - 3.0 * _LOG_PI))


def _check_match(params, p: ChartPoint) -> None:
    fam = getattr(params, "family", None)
    if fam is None or not isinstance(params, PARAM_TYPES.get(fam, ())):
        raise DomainError(f"not a basis parameter set: {params!r}")
    if p.chart not in FAMILY_CHARTS[fam]:
        raise DomainError(f"{type(params).__name__} belongs to the {fam.value} family, got a {p.chart.value} point")


def eval_basis(params: BasisParams, p: ChartPoint, R: float) -> BasisValue:
    """Evaluate a basis function at a chart point.

    Parameters
    ----------
    params : BasisParams
        Family-specific separation constants; the family must match ``p.chart``.
    p : ChartPoint
        Point inside the chart domain.  The pseudo-spherical apex tau = 0
        is accepted.
    R : float
        Radius of the hyperboloid (enters only the horocyclic normalization).

    Raises
    ------
    DomainError
        Family/chart mismatch, points outside the chart, or arguments
        outside the reach of the special-function backends.
    """
    _check_match(params, p)
    check_domain(p)
    R = _positive("R", R)
    a, b = p.xi1, p.xi2
    if isinstance(params, SParams):
        m = abs(params.m)
        if a == 0:
            return BasisValue.of_complex(1.0 if m == 0 else 0.0)
        leg = log_legendre_p_cosh(m, 1j * params.rho - 0.5, a)
        return BasisValue.of(leg * _expi(params.m * b))
    if isinstance(params, EQParams):
        leg = log_legendre_p_interval(1j * params.rho, -0.5 + 1j * params.nu, -params.eps * math.tanh(a))
        amp = LogComplex(-0.5 * math.log(math.cosh(a)))
        return BasisValue.of(amp * leg * _expi(params.nu * b))
    if isinstance(params, HOParams):
        rho, s = params.rho, params.s
        # N exp(-pi rho/2) folded into one log-domain factor
        norm = ho_normalization(rho, R).scaled(-0.5 * math.pi * rho)
        k = LogComplex.from_complex(macdonald_k_scaled(rho, abs(s) * b))
        return BasisValue.of(norm * k * LogComplex(0.5 * math.log(b), s * a))
    if isinstance(params, SCPParams):
        rho, s = params.rho, params.s
        xj, xk = (a, b) if s > 0 else (b, a)
        w = math.sqrt(abs(s))
        # exp(-pi rho/2) J and exp(pi rho/2) K: the scalings cancel in the product
        j = LogComplex.from_complex(bessel_j_scaled(rho, w * xj))
        k = LogComplex.from_complex(macdonald_k_scaled(rho, w * xk))
        return BasisValue.of(LogComplex(0.5 * math.log(a * b)) * j * k)
    if isinstance(params, EPParams):
        rho, s = params.rho, params.s
        p1 = log_legendre_p_interval(1j * rho, 1j * s - 0.5, math.sin(b))
        p2 = log_legendre_p_interval(1j * s, 1j * rho - 0.5, math.tanh(a))
        return BasisValue.of(LogComplex(0.5 * math.log(math.cos(b))) * p1 * p2)
    if isinstance(params, HPParams):
        rho, s = params.rho, params.s
        p1 = log_legendre_p_ray(1j * rho, 1j * s - 0.5, math.cosh(a))
        p2 = log_legendre_p_interval(1j * rho, 1j * s - 0.5, math.cos(b))
        return BasisValue.of(LogComplex(0.5 * math.log(math.sinh(a) * math.sin(b))) * p1 * p2)
    raise DomainError(f"unknown parameter set {params!r}")


# ------------------------------------------------------------------ phases

def phase_m(k1: float, k2: float, R: float) -> float:
    """M = pi/4 + R (k acosh(k/k2) - k1), k = sqrt(k1^2 + k2^2)."""
    k1, R = _real("k1", k1), _positive("R", R)
    k2 = _positive("k2", k2)
    k = math.hypot(k1, k2)
    return 0.25 * math.pi + R * (k * math.acosh(k / k2) - k1)


def phase_deltas(k1: float, k2: float, R: float) -> tuple[float, float]:
    """(d1, d2) solved from

    d1 + d2 = sqrt2 R (k1 + k2) - R k asinh((k2 + k1)/(k2 - k1))
    d1 - d2 = sqrt2 R (k2 - k1) - R k asinh((k2 - k1)/(k2 + k1))

    for k2 > k1 > 0.
    """
    k1, k2, R = _positive("k1", k1), _positive("k2", k2), _positive("R", R)
    if not k2 > k1:
        raise DomainError(f"phase deltas need k2 > k1 > 0, got k1={k1:g}, k2={k2:g}")
    k = math.hypot(k1, k2)
    plus = SQRT2 * R * (k1 + k2) - R * k * math.asinh((k2 + k1) / (k2 - k1))
    minus = SQRT2 * R * (k2 - k1) - R * k * math.asinh((k2 - k1) / (k2 + k1))
    return 0.5 * (plus + minus), 0.5 * (plus - minus)


# ------------------------------------------------------------------ limits

def _need_R(R, what: str) -> float:
    if R is None:
        raise DomainError(f"the {what} limit target depends on R through its phases; pass R")
    return _positive("R", R)


def eval_limit(lp: LimitParams, e: EuclidPoint, R: float | None = None) -> BasisValue:
    """Flat-plane target of a family, without its R-dependent prefactor.

    Parameters
    ----------
    lp : LimitParams
    e : EuclidPoint
    R : float, optional
        Needed by the horocyclic and semi-circular-parabolic targets, whose
        phases M and (d1, d2) grow linearly with R.
    """
    x, y = e.x, e.y
    if isinstance(lp, Polar):
        m = abs(lp.m)
        j = bessel_j(m, lp.k * e.r)
        return BasisValue.of_complex(j * cmath.exp(1j * lp.m * e.phi))
    if isinstance(lp, Plane):
        return BasisValue.of_complex(cmath.exp(1j * (lp.k1 * x - lp.eps * lp.k2 * y)))
    if isinstance(lp, HOLimit):
        M = phase_m(lp.k1, abs(lp.k2), _need_R(R, "horocyclic"))
        return BasisValue.of_complex(math.sin(lp.k1 * x - M) * cmath.exp(1j * lp.k2 * y))
    if isinstance(lp, SCPLimit):
        R = _need_R(R, "semi-circular-parabolic")
        if lp.swapped:
            d1, d2 = phase_deltas(lp.k2, lp.k1, R)
            val = cmath.exp(1j * (lp.k1 * x + d1 - 0.25 * math.pi)) * math.sin(lp.k2 * y - 0.25 * math.pi + d2)
        else:
            d1, d2 = phase_deltas(lp.k1, lp.k2, R)
            val = cmath.exp(1j * (lp.k2 * y + d1 - 0.25 * math.pi)) * math.sin(lp.k1 * x - 0.25 * math.pi + d2)
        return BasisValue.of_complex(val)
    if isinstance(lp, EPLimit):
        xi, eta = e.parabolic
        return BasisValue.of(ep_limit_factor(lp, eta, "eta") * ep_limit_factor(lp, xi, "xi"))
    if isinstance(lp, HPLimit):
        return BasisValue.of_complex(cmath.exp(1j * (lp.k2 * y - lp.k1 * x)))
    raise DomainError(f"unknown limit parameter set {lp!r}")


def ep_limit_factor(lp: EPLimit, t: float, which: str) -> LogComplex:
    """One parabolic-cylinder factor of the elliptic-parabolic target.

    ``which="xi"``: D_{(i lam/k - 1)/2}(sqrt(-2ik) xi);
    ``which="eta"``: D_{-(i lam/k + 1)/2}(sqrt(-2ik) eta).
    """
    w = sqrt_minus_2ik(lp.k)
    r = 1j * lp.lam / lp.k
    if which == "xi":
        return log_pcf_d(0.5 * (r - 1.0), w * t)
    if which == "eta":
        return log_pcf_d(-0.5 * (r + 1.0), w * t)
    raise ValueError(f"which must be 'xi' or 'eta', got {which!r}")


# ------------------------------------------------------------------ prefactors

def _eq_type_gammas(k: float, kk: float, R: float) -> LogComplex:
    # sqrt(pi) 2^{ikR} / (Gamma(3/4 - iR(k+kk)/2) Gamma(3/4 - iR(k-kk)/2))
    g = log_gamma_complex(0.75 - 0.5j * R * (k + kk)) * log_gamma_complex(0.75 - 0.5j * R * (k - kk))
    return LogComplex(0.5 * _LOG_PI, k * R * _LOG2) / g


def prefactor(family: "ChartId | str", lp: LimitParams, R: float) -> LogComplex:
    """R-dependent constant relating a basis function to its flat target.

    ========================  ===================================================
    pseudo_spherical          (-kR)^{|m|}
    equidistant               sqrt(pi) 2^{ikR} / (G(3/4 - iR(k+k1)/2) G(3/4 - iR(k-k1)/2))
    horocyclic                -sqrt(k / 2k1) / (R pi)
    semi_circular_parabolic   -1 / (R sqrt(2 k1 k2))
    elliptic_parabolic        2^{2ikR + 1/2 + i lam/2k} / G(3/4 - i lam/4k - ikR)^2
    hyperbolic_parabolic      2^{ikR} sqrt(pi) B / (G(3/4 - iR(k+q)/2) G(3/4 - iR(k-q)/2)),
                              q = sqrt(k1^2 - k2^2), B = 2 kk_amplitude(k1, k2, R)
    ========================  ===================================================

    Raises
    ------
    DomainError
        Family/parameter mismatch or R <= 0.
    PoleError
        A gamma argument hits a pole.
    """
    fam = family_of(family)
    R = _positive("R", R)
    if not isinstance(lp, LIMIT_TYPES[fam]):
        raise DomainError(f"{type(lp).__name__} is not a limit parameter set of the {fam.value} family")
    k = lp.k
    if fam is PS:
        m = abs(lp.m)
        return LogComplex(m * math.log(k * R), math.pi * (m % 2))
    if fam is EQ:
        return _eq_type_gammas(k, lp.k1, R)
    if fam is HO:
        return LogComplex(0.5 * math.log(k / (2.0 * lp.k1)) - math.log(R) - _LOG_PI, math.pi)
    if fam is SCP:
        return LogComplex(-math.log(R) - 0.5 * math.log(2.0 * lp.k1 * lp.k2), math.pi)
    if fam is EP:
        lam = lp.lam
        num = LogComplex.from_log((2j * k * R + 0.5 + 0.5j * lam / k) * _LOG2)
        g = log_gamma_complex(0.75 - 0.25j * lam / k - 1j * k * R)
        return num / (g * g)
    if fam is HP:
        from .contraction import kk_amplitude

        B = kk_amplitude(lp.k1, lp.k2, R) * HP_B_FACTOR
        return _eq_type_gammas(k, lp.q, R) * B
    raise DomainError(f"unknown family {family!r}")
