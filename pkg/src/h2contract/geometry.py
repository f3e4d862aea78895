"""Coordinate charts on the upper sheet of u0^2 - u1^2 - u2^2 = R^2.

Every chart here is orthogonal.  Five of the seven are conformal, with
induced metric -R^2 h^2 (d xi1^2 + d xi2^2); the pseudo-spherical and
equidistant charts are diagonal but not conformal.  The metric is kept with
the sign it inherits from G = diag(1, -1, -1), i.e. negative definite.

Coordinate order per chart:

=================================  ===========  =========================
chart                              (xi1, xi2)   domain
=================================  ===========  =========================
pseudo_spherical                   (tau, phi)   tau > 0, phi real (2 pi periodic)
equidistant                        (tau1, tau2) both real
horocyclic                         (xbar, ybar) ybar > 0
semi_circular_parabolic            (xi, eta)    xi, eta > 0
semi_circular_parabolic_rotated    (xi, eta)    xi, eta > 0
elliptic_parabolic                 (a, theta)   a >= 0, |theta| < pi/2
hyperbolic_parabolic               (b, theta)   b > 0, 0 < theta < pi
=================================  ===========  =========================

The pseudo-spherical apex tau = 0 is accepted by :func:`embed` (it is a
regular point of the surface) but rejected wherever the metric is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError

SQRT2 = math.sqrt(2.0)
_G = np.diag([1.0, -1.0, -1.0])


class ChartId(str, Enum):
    PSEUDO_SPHERICAL = "pseudo_spherical"
    EQUIDISTANT = "equidistant"
    HOROCYCLIC = "horocyclic"
    SEMI_CIRCULAR_PARABOLIC = "semi_circular_parabolic"
    SEMI_CIRCULAR_PARABOLIC_ROTATED = "semi_circular_parabolic_rotated"
    ELLIPTIC_PARABOLIC = "elliptic_parabolic"
    HYPERBOLIC_PARABOLIC = "hyperbolic_parabolic"

    @classmethod
    def parse(cls, name: "str | ChartId") -> "ChartId":
        if isinstance(name, ChartId):
            return name
        try:
            return cls(str(name).strip().lower().replace("-", "_"))
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise DomainError(f"unknown chart {name!r}; expected one of: {valid}") from None

    def __str__(self) -> str:
        return self.value


PS = ChartId.PSEUDO_SPHERICAL
EQ = ChartId.EQUIDISTANT
HO = ChartId.HOROCYCLIC
SCP = ChartId.SEMI_CIRCULAR_PARABOLIC
SCPR = ChartId.SEMI_CIRCULAR_PARABOLIC_ROTATED
EP = ChartId.ELLIPTIC_PARABOLIC
HP = ChartId.HYPERBOLIC_PARABOLIC

COORD_NAMES = {
    PS: ("tau", "phi"),
    EQ: ("tau1", "tau2"),
    HO: ("xbar", "ybar"),
    SCP: ("xi", "eta"),
    SCPR: ("xi", "eta"),
    EP: ("a", "theta"),
    HP: ("b", "theta"),
}

# boxes used for randomized sampling; comfortably inside each domain
SAMPLE_BOXES = {
    PS: ((0.05, 3.0), (0.0, 2 * math.pi)),
    EQ: ((-2.0, 2.0), (-2.0, 2.0)),
    HO: ((-1.5, 1.5), (0.3, 3.0)),
    SCP: ((0.3, 2.0), (0.3, 2.0)),
    SCPR: ((0.3, 2.0), (0.3, 2.0)),
    EP: ((0.05, 2.0), (-1.3, 1.3)),
    HP: ((0.3, 2.0), (0.3, math.pi - 0.3)),
}


@dataclass(frozen=True)
class ChartPoint:
    """Dimensionless coordinates (xi1, xi2) in a chart."""

    chart: ChartId
    xi1: float
    xi2: float

    def __post_init__(self):
        object.__setattr__(self, "chart", ChartId.parse(self.chart))
        object.__setattr__(self, "xi1", float(self.xi1))
        object.__setattr__(self, "xi2", float(self.xi2))

    def shifted(self, d1: float = 0.0, d2: float = 0.0) -> "ChartPoint":
        return ChartPoint(self.chart, self.xi1 + d1, self.xi2 + d2)

    def as_dict(self) -> dict:
        n1, n2 = COORD_NAMES[self.chart]
        return {"chart": self.chart.value, n1: self.xi1, n2: self.xi2}


@dataclass(frozen=True)
class AmbientPoint:
    """Point (u0, u1, u2) of the ambient Minkowski space."""

    u0: float
    u1: float
    u2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.u0, self.u1, self.u2])

    def hyperboloid_residual(self, R: float) -> float:
        """(u0^2 - u1^2 - u2^2 - R^2) / R^2."""
        return ((self.u0 - self.u1) * (self.u0 + self.u1) - self.u2 * self.u2 - R * R) / (R * R)


@dataclass(frozen=True)
class EuclidPoint:
    """Point of the flat limit plane in Cartesian coordinates.

    Polar (r, phi) and parabolic (xi, eta) views, with x = (xi^2 - eta^2)/2
    and y = xi * eta, are derived on demand.
    """

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    @classmethod
    def from_polar(cls, r: float, phi: float) -> "EuclidPoint":
        return cls(r * math.cos(phi), r * math.sin(phi))

    @classmethod
    def from_parabolic(cls, xi: float, eta: float) -> "EuclidPoint":
        return cls(0.5 * (xi * xi - eta * eta), xi * eta)

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        """Polar angle in [0, 2 pi)."""
        p = math.atan2(self.y, self.x)
        return p + 2 * math.pi if p < 0 else p

    @property
    def parabolic(self) -> tuple[float, float]:
        """(xi, eta) with xi >= 0; eta carries the sign of y."""
        r = self.r
        xi = math.sqrt(max(r + self.x, 0.0))
        eta = math.copysign(math.sqrt(max(r - self.x, 0.0)), self.y)
        return xi, eta


class Metric2(NamedTuple):
    """Signed induced metric [[g11, g12], [g12, g22]]."""

    g11: float
    g12: float
    g22: float

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12 * self.g12

    @property
    def density(self) -> float:
        return math.sqrt(abs(self.det))

    def as_array(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    def inverse(self) -> "Metric2":
        d = self.det
        return Metric2(self.g22 / d, -self.g12 / d, self.g11 / d)


class LBCoefficients(NamedTuple):
    """Delta f = h11 f_11 + 2 h12 f_12 + h22 f_22 + b1 f_1 + b2 f_2."""

    h11: float
    h12: float
    h22: float
    b1: float
    b2: float


class LimitDomainError(DomainError):
    """A flat point cannot be mapped into the chart at this R.

    Attributes
    ----------
    min_R : float or None
        Smallest admissible R for the point, when one exists.
    """

    def __init__(self, message: str, min_R: float | None = None):
        self.min_R = min_R
        if min_R is not None:
            message = f"{message} (minimal admissible R: {min_R:.6g})"
        super().__init__(message)


# ------------------------------------------------------------------ domains

def _bad(p: ChartPoint, why: str) -> DomainError:
    n1, n2 = COORD_NAMES[p.chart]
    return DomainError(f"{p.chart.value} point ({n1}={p.xi1:g}, {n2}={p.xi2:g}) outside the chart: {why}")


def check_domain(p: ChartPoint, *, allow_apex: bool = True) -> None:
    """Raise :class:`DomainError` unless ``p`` lies in its chart's domain."""
    a, b = p.xi1, p.xi2
    if not (math.isfinite(a) and math.isfinite(b)):
        raise _bad(p, "non-finite coordinate")
    c = p.chart
    if c is PS:
        if a < 0 or (a == 0 and not allow_apex):
            raise _bad(p, "need tau > 0" if not allow_apex else "need tau >= 0")
    elif c is EQ:
        pass
    elif c is HO:
        if b <= 0:
            raise _bad(p, "need ybar > 0")
    elif c in (SCP, SCPR):
        if a <= 0 or b <= 0:
            raise _bad(p, "need xi > 0 and eta > 0")
    elif c is EP:
        if a < 0 or not abs(b) < 0.5 * math.pi:
            raise _bad(p, "need a >= 0 and -pi/2 < theta < pi/2")
        if a == 0 and b == 0 and not allow_apex:
            raise _bad(p, "metric degenerates at a = theta = 0")
    elif c is HP:
        if a <= 0 or not 0 < b < math.pi:
            raise _bad(p, "need b > 0 and 0 < theta < pi")


def _check_R(R: float) -> float:
    R = float(R)
    if not (R > 0 and math.isfinite(R)):
        raise DomainError(f"R must be positive and finite, got {R!r}")
    return R


# ------------------------------------------------------------------ embeddings

def _scp_parts(xi: float, eta: float):
    s = xi * xi + eta * eta
    u0 = (s * s + 4.0) / (8.0 * xi * eta)
    B = (s * s - 4.0) / (8.0 * xi * eta)
    A = (eta * eta - xi * xi) / (2.0 * xi * eta)
    return u0, B, A


def _embed_unit(c: ChartId, a: float, b: float) -> tuple[float, float, float]:
    # embedding for R = 1
    if c is PS:
        return math.cosh(a), math.sinh(a) * math.cos(b), math.sinh(a) * math.sin(b)
    if c is EQ:
        return math.cosh(a) * math.cosh(b), math.cosh(a) * math.sinh(b), math.sinh(a)
    if c is HO:
        return (a * a + b * b + 1.0) / (2.0 * b), (a * a + b * b - 1.0) / (2.0 * b), a / b
    if c is SCP:
        u0, B, A = _scp_parts(a, b)
        return u0, B, A
    if c is SCPR:
        u0, B, A = _scp_parts(a, b)
        return u0, (A + B) / SQRT2, (A - B) / SQRT2
    if c is EP:
        ch, cs = math.cosh(a), math.cos(b)
        return (ch * ch + cs * cs) / (2 * ch * cs), (math.sinh(a) ** 2 - math.sin(b) ** 2) / (2 * ch * cs), math.tanh(a) * math.tan(b)
    if c is HP:
        sh, sn = math.sinh(a), math.sin(b)
        return ((math.cosh(a) ** 2 + math.cos(b) ** 2) / (2 * sh * sn),
                (sh * sh - sn * sn) / (2 * sh * sn),
                math.cos(b) / sn * math.cosh(a) / sh)
    raise DomainError(f"unknown chart {c!r}")


def embed(p: ChartPoint, R: float) -> AmbientPoint:
    """Map chart coordinates to the ambient point on the sheet of radius R."""
    R = _check_R(R)
    check_domain(p)
    u0, u1, u2 = _embed_unit(p.chart, p.xi1, p.xi2)
    return AmbientPoint(R * u0, R * u1, R * u2)


def manifold_residual(p: ChartPoint, R: float) -> float:
    """(u0^2 - u1^2 - u2^2 - R^2) / R^2 at ``embed(p, R)``."""
    return embed(p, R).hyperboloid_residual(_check_R(R))


def rotate_quarter(u: AmbientPoint) -> AmbientPoint:
    """Rotation by pi/4 about the u0 axis taking the SCP chart to its rotated twin."""
    return AmbientPoint(u.u0, (u.u1 + u.u2) / SQRT2, (u.u2 - u.u1) / SQRT2)


def locate(chart: ChartId, u: AmbientPoint, R: float) -> ChartPoint:
    """Inverse of :func:`embed` for a point on the sheet.

    Raises
    ------
    DomainError
        If the ambient point is not covered by the chart.
    """
    c = ChartId.parse(chart)
    R = _check_R(R)
    u0, u1, u2 = u.u0, u.u1, u.u2
    if c is PS:
        tau = math.acosh(max(u0 / R, 1.0))
        phi = math.atan2(u2, u1) % (2 * math.pi)
        return ChartPoint(c, tau, phi)
    if c is EQ:
        return ChartPoint(c, math.asinh(u2 / R), math.atanh(u1 / u0))
    if c is HO:
        d = u0 - u1
        return ChartPoint(c, u2 / d, R / d)
    if c in (SCP, SCPR):
        if c is SCPR:
            # undo the quarter turn
            u1, u2 = (u1 - u2) / SQRT2, (u1 + u2) / SQRT2
        d = u0 - u1
        w = math.hypot(R, u2)
        return ChartPoint(c, math.sqrt((w - u2) / d), math.sqrt((w + u2) / d))
    if c is EP:
        d = u0 - u1
        w = math.sqrt(max(u0 * u0 - R * R, 0.0))
        cos_t = math.sqrt((u0 - w) / d)
        cosh_a = math.sqrt((u0 + w) / d)
        theta = math.copysign(math.acos(min(cos_t, 1.0)), u2)
        return ChartPoint(c, math.acosh(max(cosh_a, 1.0)), theta)
    if c is HP:
        d = u0 - u1
        w = math.hypot(u1, R)
        cos_t = math.copysign(math.sqrt(max(u0 - w, 0.0) / d), u2)
        cosh_b = math.sqrt((u0 + w) / d)
        return ChartPoint(c, math.acosh(cosh_b), math.acos(cos_t))
    raise DomainError(f"unknown chart {c!r}")


# ------------------------------------------------------------------ metrics

def conformal_factor(p: ChartPoint) -> float | None:
    """h^2 with g = -R^2 h^2 I for conformal charts, None otherwise."""
    c, a, b = p.chart, p.xi1, p.xi2
    if c is HO:
        return 1.0 / (b * b)
    if c in (SCP, SCPR):
        return 1.0 / (a * a) + 1.0 / (b * b)
    if c is EP:
        return 1.0 / math.cos(b) ** 2 - 1.0 / math.cosh(a) ** 2
    if c is HP:
        return 1.0 / math.sinh(a) ** 2 + 1.0 / math.sin(b) ** 2
    return None


def metric(p: ChartPoint, R: float) -> Metric2:
    """Signed pullback of diag(1, -1, -1) to the chart (closed form)."""
    R = _check_R(R)
    check_domain(p, allow_apex=False)
    R2 = R * R
    if p.chart is PS:
        return Metric2(-R2, 0.0, -R2 * math.sinh(p.xi1) ** 2)
    if p.chart is EQ:
        return Metric2(-R2, 0.0, -R2 * math.cosh(p.xi1) ** 2)
    h2 = conformal_factor(p)
    return Metric2(-R2 * h2, 0.0, -R2 * h2)


def metric_density(p: ChartPoint, R: float) -> float:
    """sqrt|det g|."""
    return metric(p, R).density


def measure_errors(r: float, R_grid) -> list[float]:
    """|sqrt g / R - r| at tau = r/R in the pseudo-spherical chart, per R.

    sqrt g / R = R sinh(r/R) tends to the flat polar density r.
    """
    return [abs(metric_density(ChartPoint(PS, r / R, 0.0), R) / R - r) for R in R_grid]


def metric_fd(p: ChartPoint, R: float, rel_step: float = 1e-3) -> Metric2:
    """Pullback metric from a 4th-order finite-difference Jacobian of :func:`embed`."""
    R = _check_R(R)
    check_domain(p, allow_apex=False)
    cols = []
    for k in range(2):
        x = (p.xi1, p.xi2)[k]
        h = rel_step * max(1.0, abs(x))
        d = np.zeros(2)
        d[k] = h
        pts = [embed(p.shifted(*(s * d)), R).as_array() for s in (-2, -1, 1, 2)]
        cols.append((pts[0] - 8 * pts[1] + 8 * pts[2] - pts[3]) / (12 * h))
    J = np.column_stack(cols)
    g = J.T @ _G @ J
    return Metric2(float(g[0, 0]), float(0.5 * (g[0, 1] + g[1, 0])), float(g[1, 1]))


def lb_coefficients(p: ChartPoint, R: float) -> LBCoefficients:
    """Coefficients of the Laplace-Beltrami operator, with first-order terms
    (1/sqrt g) d_i(sqrt g g^{ik}) worked out by hand per chart."""
    R = _check_R(R)
    check_domain(p, allow_apex=False)
    R2 = R * R
    c, a = p.chart, p.xi1
    if c is PS:
        return LBCoefficients(-1.0 / R2, 0.0, -1.0 / (R2 * math.sinh(a) ** 2), -1.0 / (R2 * math.tanh(a)), 0.0)
    if c is EQ:
        return LBCoefficients(-1.0 / R2, 0.0, -1.0 / (R2 * math.cosh(a) ** 2), -math.tanh(a) / R2, 0.0)
    # conformal: sqrt g g^{ii} = -1 is constant, so no first-order terms
    inv = -1.0 / (R2 * conformal_factor(p))
    return LBCoefficients(inv, 0.0, inv, 0.0, 0.0)


# ------------------------------------------------------------------ contraction maps

def chart_point_for_limit(chart: ChartId, e: EuclidPoint, R: float) -> ChartPoint:
    """Chart point that corresponds to the flat point ``e`` at radius R.

    Uses the leading-order substitutions as exact definitions:

    * pseudo_spherical: tau = r/R, phi = phi(e)
    * equidistant: tau1 = y/R, tau2 = x/R
    * horocyclic: xbar = y/R, ybar = 1 + x/R
    * semi_circular_parabolic: eta^2 = 1 + (x+y)/R, xi^2 = 1 + (x-y)/R
    * semi_circular_parabolic_rotated: eta^2 = 1 + sqrt2 x/R, xi^2 = 1 + sqrt2 y/R
    * elliptic_parabolic: cos^2 theta = 1 - eta^2/R, cosh^2 a = 1 + xi^2/R with
      (xi, eta) the parabolic coordinates of e (y > 0 required)
    * hyperbolic_parabolic: cos theta = y/(sqrt2 R), cosh^2 b = 2(1 + x/R)
      (y != 0 required, since only cos^2 theta is prescribed)

    Raises
    ------
    LimitDomainError
        If the point falls outside the chart at this R.
    """
    c = ChartId.parse(chart)
    R = _check_R(R)
    x, y = e.x, e.y
    if c is PS:
        return ChartPoint(c, e.r / R, e.phi)
    if c is EQ:
        return ChartPoint(c, y / R, x / R)
    if c is HO:
        if 1.0 + x / R <= 0:
            raise LimitDomainError("ybar = 1 + x/R must be positive", -x)
        return ChartPoint(c, y / R, 1.0 + x / R)
    if c is SCP:
        e2, x2 = 1.0 + (x + y) / R, 1.0 + (x - y) / R
        if e2 <= 0 or x2 <= 0:
            raise LimitDomainError("1 + (x +- y)/R must be positive", max(-(x + y), -(x - y)))
        return ChartPoint(c, math.sqrt(x2), math.sqrt(e2))
    if c is SCPR:
        e2, x2 = 1.0 + SQRT2 * x / R, 1.0 + SQRT2 * y / R
        if e2 <= 0 or x2 <= 0:
            raise LimitDomainError("1 + sqrt2 x/R and 1 + sqrt2 y/R must be positive", -SQRT2 * min(x, y))
        return ChartPoint(c, math.sqrt(x2), math.sqrt(e2))
    if c is EP:
        if not y > 0:
            raise LimitDomainError("parabolic coordinates need xi, eta > 0, i.e. y > 0")
        xi, eta = e.parabolic
        c2 = 1.0 - eta * eta / R
        if c2 <= 0:
            raise LimitDomainError("cos^2 theta = 1 - eta^2/R must be positive", eta * eta)
        return ChartPoint(c, math.acosh(math.sqrt(1.0 + xi * xi / R)), math.acos(math.sqrt(c2)))
    if c is HP:
        if y == 0:
            raise LimitDomainError("cos^2 theta = y^2/(2R^2) = 0 leaves the sign of cos theta undetermined")
        cb2 = 2.0 * (1.0 + x / R)
        ct = y / (SQRT2 * R)
        if cb2 <= 1.0 or abs(ct) >= 1.0:
            raise LimitDomainError("need 2(1 + x/R) > 1 and |y| < sqrt2 R", max(-2.0 * x, abs(y) / SQRT2))
        return ChartPoint(c, math.acosh(math.sqrt(cb2)), math.acos(ct))
    raise DomainError(f"unknown chart {c!r}")


def random_chart_points(chart: ChartId, n: int, rng: np.random.Generator) -> list[ChartPoint]:
    """Uniform samples from the chart's sampling box."""
    c = ChartId.parse(chart)
    (a0, a1), (b0, b1) = SAMPLE_BOXES[c]
    a = rng.uniform(a0, a1, n)
    b = rng.uniform(b0, b1, n)
    return [ChartPoint(c, float(u), float(v)) for u, v in zip(a, b)]


def all_charts() -> list[ChartId]:
    return list(ChartId)


Embedding = Callable[[ChartPoint, float], AmbientPoint]
