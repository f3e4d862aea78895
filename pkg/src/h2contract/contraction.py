"""R -> infinity verification of the flat-plane limits.

For a family with flat target f and prefactor C(R) the error at a flat
point e is

    err(R) = | Psi_R(p_R(e)) / C(R) - f(e) |

where p_R is the leading-order chart substitution of
:func:`geometry.chart_point_for_limit` and Psi_R uses the scaled separation
constants of :func:`scale_params`.  The quotient is formed in log form and
only then materialized.

The horocyclic and semi-circular-parabolic targets carry phases that grow
linearly in R (M, d2).  On a doubling grid such a phase advances by far more
than pi between neighbouring R, so a pointwise error samples an arbitrary
spot of an oscillation.  For those families the study uses the sup of the
pointwise error over one phase period [R, R + dR], dR = pi / |d phase/dR|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .basis import (
    EP,
    EQ,
    HO,
    HP,
    LIMIT_CHART,
    LIMIT_TYPES,
    PS,
    SCP,
    BasisParams,
    EPParams,
    EQParams,
    EPLimit,
    HOLimit,
    HOParams,
    HPLimit,
    HPParams,
    LimitParams,
    Plane,
    Polar,
    SCPLimit,
    SCPParams,
    SParams,
    eval_basis,
    eval_limit,
    family_of,
    phase_deltas,
    phase_m,
    prefactor,
)
from .errors import ConditioningError, DomainError
from .geometry import ChartId, EuclidPoint, chart_point_for_limit
from .specfun import LogComplex, log_gamma_complex, log_legendre_p_ray

DEFAULT_R_GRID = (25.0, 50.0, 100.0, 200.0)
EXTENDED_R_GRID = (25.0, 50.0, 100.0, 200.0, 400.0)
SLOPE_THRESHOLD = -0.5
ENVELOPE_SAMPLES = 13
# k1/k below which the horocyclic prefactor sqrt(k/2k1) is considered singular
HO_K1_MIN_RATIO = 0.05
AB_MIN_SIN = 0.1
_LOG2 = math.log(2.0)


# ------------------------------------------------------------------ scaling

@dataclass(frozen=True)
class ScalingRule:
    """Map from flat parameters and R to the scaled basis parameters."""

    family: ChartId
    map: Callable[[LimitParams, float], BasisParams]

    def __call__(self, lp: LimitParams, R: float) -> BasisParams:
        return self.map(lp, R)


SCALING_RULES = {
    PS: ScalingRule(PS, lambda lp, R: SParams(lp.k * R, lp.m)),
    EQ: ScalingRule(EQ, lambda lp, R: EQParams(lp.k * R, lp.k1 * R, lp.eps)),
    HO: ScalingRule(HO, lambda lp, R: HOParams(lp.k * R, lp.k2 * R)),
    SCP: ScalingRule(SCP, lambda lp, R: SCPParams(lp.k * R, R * R * (lp.k2 - lp.k1) * (lp.k2 + lp.k1))),
    # s = kappa R with kappa = k + lam / (2 k R)
    EP: ScalingRule(EP, lambda lp, R: EPParams(lp.k * R, lp.k * R + lp.lam / (2.0 * lp.k))),
    HP: ScalingRule(HP, lambda lp, R: HPParams(lp.k * R, lp.q * R)),
}


def scale_params(rule: "ScalingRule | ChartId | str", lp: LimitParams, R: float) -> BasisParams:
    """Apply a family's scaling rule (rho = kR plus the family-specific constant).

    Raises
    ------
    DomainError
        If ``lp`` does not belong to the rule's family or R <= 0.
    """
    if not isinstance(rule, ScalingRule):
        rule = SCALING_RULES[family_of(rule)]
    if not isinstance(lp, LIMIT_TYPES[rule.family]):
        raise DomainError(f"{type(lp).__name__} is not a limit parameter set of the {rule.family.value} family")
    R = float(R)
    if not R > 0:
        raise DomainError(f"R must be positive, got {R!r}")
    return rule(lp, R)


# ------------------------------------------------------------------ errors

def _check_family(family, lp) -> ChartId:
    fam = family_of(family)
    if not isinstance(lp, LIMIT_TYPES[fam]):
        raise DomainError(f"{type(lp).__name__} is not a limit parameter set of the {fam.value} family")
    return fam


def quotient(family: "ChartId | str", lp: LimitParams, e: EuclidPoint, R: float) -> complex:
    """Psi_R(p_R(e)) / C(R), materialized after the log-domain division."""
    fam = _check_family(family, lp)
    p = chart_point_for_limit(LIMIT_CHART[fam], e, R)
    psi = eval_basis(scale_params(fam, lp, R), p, R).value
    return (psi / prefactor(fam, lp, R)).to_complex()


def contraction_error(family: "ChartId | str", lp: LimitParams, e: EuclidPoint, R: float) -> float:
    """Pointwise |Psi_R / C(R) - f(e)| at one R."""
    fam = _check_family(family, lp)
    target = eval_limit(lp, e, R).value.to_complex()
    return abs(quotient(fam, lp, e, R) - target)


def phase_rate(family: "ChartId | str", lp: LimitParams) -> float:
    """|d phase / dR| of the R-dependent phase in the flat target (0 if none)."""
    fam = _check_family(family, lp)
    if fam is HO:
        return abs(phase_m(lp.k1, abs(lp.k2), 1.0) - 0.25 * math.pi)
    if fam is SCP:
        a, b = (lp.k2, lp.k1) if lp.swapped else (lp.k1, lp.k2)
        return abs(phase_deltas(a, b, 1.0)[1])
    return 0.0


def phase_window(family: "ChartId | str", lp: LimitParams, R: float) -> float:
    """Width dR of one phase half-period in R, capped at R/2 (0 without a phase)."""
    rate = phase_rate(family, lp)
    if rate == 0:
        return 0.0
    return min(math.pi / rate, 0.5 * R)


def phase_ill_conditioned(family: "ChartId | str", lp: LimitParams, R_grid: Sequence[float]) -> bool:
    """True when |d phase/dR| times some grid step exceeds pi."""
    rate = phase_rate(family, lp)
    steps = np.diff(np.asarray(sorted(R_grid), dtype=float))
    return bool(rate > 0 and steps.size and np.max(steps) * rate > math.pi)


def contraction_error_envelope(family: "ChartId | str", lp: LimitParams, e: EuclidPoint, R: float,
                               samples: int = ENVELOPE_SAMPLES) -> float:
    """max of the pointwise error over R' in [R, R + dR], dR from :func:`phase_window`."""
    dR = phase_window(family, lp, R)
    if dR == 0:
        return contraction_error(family, lp, e, R)
    return max(contraction_error(family, lp, e, R + dR * j / (samples - 1)) for j in range(samples))


def conditioning_flags(family: "ChartId | str", lp: LimitParams, R_grid: Sequence[float]) -> list[str]:
    """Human-readable warnings about a study's conditioning."""
    fam = _check_family(family, lp)
    flags = []
    if fam is HO and lp.k1 < HO_K1_MIN_RATIO * lp.k:
        flags.append(f"ill-conditioned: prefactor sqrt(k/2k1) singular as k1 -> 0 (k1/k = {lp.k1 / lp.k:.3g})")
    if phase_ill_conditioned(fam, lp, R_grid):
        flags.append(
            f"phase-envelope: |d phase/dR| = {phase_rate(fam, lp):.4g} makes the pointwise error "
            "ill-conditioned on this grid; using the sup over one phase half-period"
        )
    return flags


# ------------------------------------------------------------------ studies

@dataclass(frozen=True)
class ConvergenceRecord:
    R: float
    err: float
    order: float | None = None


@dataclass
class ConvergenceStudy:
    """Errors of one (family, lp, point) over an R grid."""

    family: ChartId
    lp: LimitParams
    point: EuclidPoint
    records: list[ConvergenceRecord] = field(default_factory=list)
    metric: str = "pointwise"
    slope: float | None = None
    monotone: bool = False
    exact: bool = False
    flags: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        if self.exact:
            return True
        return self.monotone and self.slope is not None and self.slope <= SLOPE_THRESHOLD

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        if self.exact:
            return "exact at all R"
        return "pass" if self.passed else "fail"


def fit_slope(R: Sequence[float], err: Sequence[float]) -> float:
    """Least-squares slope of log err against log R."""
    lr, le = np.log(np.asarray(R, float)), np.log(np.asarray(err, float))
    return float(np.polyfit(lr, le, 1)[0])


def convergence_study(family: "ChartId | str", lp: LimitParams, points: Sequence[EuclidPoint],
                      R_grid: Sequence[float] = DEFAULT_R_GRID, *, metric: str = "auto") -> list[ConvergenceStudy]:
    """Run the contraction error over an increasing R grid at each point.

    Parameters
    ----------
    metric : {"auto", "pointwise", "envelope"}
        "auto" uses the phase envelope when :func:`phase_ill_conditioned`.

    Returns
    -------
    list of ConvergenceStudy
        One per point.  A study passes when its errors are strictly
        decreasing with fitted slope <= -0.5, or vanish identically.
        Evaluation failures are kept as ``error`` entries.
    """
    fam = _check_family(family, lp)
    grid = [float(r) for r in R_grid]
    if len(grid) < 3:
        raise DomainError("a convergence study needs at least 3 grid values")
    if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] <= 0:
        raise DomainError("R grid must be positive and strictly increasing")
    if metric not in ("auto", "pointwise", "envelope"):
        raise ValueError(f"unknown metric {metric!r}")
    flags = conditioning_flags(fam, lp, grid)
    use_env = metric == "envelope" or (metric == "auto" and phase_ill_conditioned(fam, lp, grid))
    out = []
    for e in points:
        st = ConvergenceStudy(fam, lp, e, metric="phase_envelope" if use_env else "pointwise", flags=list(flags))
        try:
            errs = [contraction_error_envelope(fam, lp, e, R) if use_env else contraction_error(fam, lp, e, R)
                    for R in grid]
        except (DomainError, OverflowError, ArithmeticError) as exc:
            st.error = f"{type(exc).__name__}: {exc}"
            out.append(st)
            continue
        recs = []
        for i, (R, err) in enumerate(zip(grid, errs)):
            order = None
            if i and errs[i - 1] > 0 and err > 0:
                order = math.log(errs[i - 1] / err) / math.log(R / grid[i - 1])
            recs.append(ConvergenceRecord(R, err, order))
        st.records = recs
        st.exact = all(v == 0 for v in errs)
        st.monotone = all(b < a for a, b in zip(errs, errs[1:]))
        if all(v > 0 for v in errs):
            st.slope = fit_slope(grid, errs)
        out.append(st)
    return out


# ------------------------------------------------------------------ hyperbolic-parabolic closure

def kk_amplitude(k1: float, k2: float, R: float) -> LogComplex:
    """Stationary-phase amplitude of P^{ikR}_{-1/2 + iRq}(sqrt 2), q = sqrt(k1^2 - k2^2):

        2^{-5/4 + (iR/2)(q - k)} G(1/2 - ikR) / (G(1/2 - iR(q + k)) G(1/2 + iR(q - k)))
        * (i / (R k1))^{1/2} ((k1 - q)/(k + q))^{iRq} (k / (k - k1))^{ikR}

    with principal branches throughout.

    Raises
    ------
    DomainError
        Unless k1 > k2 > 0 and R > 0.
    """
    k1, k2, R = float(k1), float(k2), float(R)
    if not (k1 > k2 > 0):
        raise DomainError(f"kk_amplitude needs k1 > k2 > 0, got k1={k1:g}, k2={k2:g}")
    if not R > 0:
        raise DomainError(f"R must be positive, got {R!r}")
    k = math.hypot(k1, k2)
    q = math.sqrt((k1 - k2) * (k1 + k2))
    two = LogComplex.from_log((-1.25 + 0.5j * R * (q - k)) * _LOG2)
    gam = log_gamma_complex(0.5 - 1j * k * R) / (
        log_gamma_complex(0.5 - 1j * R * (q + k)) * log_gamma_complex(0.5 + 1j * R * (q - k)))
    root = LogComplex(-0.5 * math.log(R * k1), 0.25 * math.pi)
    powers = LogComplex.from_log(1j * R * q * math.log((k1 - q) / (k + q)) + 1j * k * R * math.log(k / (k - k1)))
    return two * gam * root * powers


def hp_legendre(k1: float, k2: float, R: float, x: float) -> LogComplex:
    """P^{ikR}_{-1/2 + iRq}(sqrt(2 (1 + x/R))), the b-factor of the scaled HP family."""
    k = math.hypot(k1, k2)
    q = math.sqrt((k1 - k2) * (k1 + k2))
    z = math.sqrt(2.0 * (1.0 + x / R))
    return log_legendre_p_ray(1j * k * R, -0.5 + 1j * R * q, z)


@dataclass(frozen=True)
class ABFit:
    """Coefficients of A exp(i k1 x) + B exp(-i k1 x) fitted to two samples."""

    A: LogComplex
    B: LogComplex
    condition: float
    residual: float

    @property
    def ratio(self) -> float:
        """|A| / |B|."""
        return math.exp(self.A.log_mag - self.B.log_mag)


def hp_fit_ab(k1: float, k2: float, R: float, x_samples: Sequence[float] = (0.0, 1.0)) -> ABFit:
    """Fit A, B from two evaluations of :func:`hp_legendre`.

    Raises
    ------
    DomainError
        Unless k1 > k2 > 0 or if the samples are not two distinct reals.
    ConditioningError
        When |sin(k1 (x1 - x2))| < 0.1 (sample matrix near rank deficiency).
    """
    k1, k2, R = float(k1), float(k2), float(R)
    if not (k1 > k2 > 0):
        raise DomainError(f"hp_fit_ab needs k1 > k2 > 0, got k1={k1:g}, k2={k2:g}")
    xs = [float(v) for v in x_samples]
    if len(xs) != 2 or xs[0] == xs[1]:
        raise DomainError("hp_fit_ab needs two distinct sample points")
    sin_gap = abs(math.sin(k1 * (xs[0] - xs[1])))
    if sin_gap < AB_MIN_SIN:
        raise ConditioningError(
            f"|sin(k1 (x1 - x2))| = {sin_gap:.3g} < {AB_MIN_SIN}: exp(+-i k1 x) samples nearly dependent")
    vals = [hp_legendre(k1, k2, R, x) for x in xs]
    scale = LogComplex(max(v.log_mag for v in vals))
    rhs = np.array([(v / scale).to_complex() for v in vals])
    mat = np.array([[np.exp(1j * k1 * x), np.exp(-1j * k1 * x)] for x in xs])
    a, b = np.linalg.solve(mat, rhs)
    res = float(np.linalg.norm(mat @ np.array([a, b]) - rhs) / np.linalg.norm(rhs))
    return ABFit(LogComplex.from_complex(a) * scale, LogComplex.from_complex(b) * scale,
                 float(np.linalg.cond(mat)), res)


# ------------------------------------------------------------------ defaults

def default_cases() -> dict[ChartId, tuple[LimitParams, list[EuclidPoint], tuple[float, ...]]]:
    """Limit parameters, test points and R grid used by the standard studies."""
    cart = [EuclidPoint(0.3, 0.4), EuclidPoint(-0.5, 1.0), EuclidPoint(1.0, -0.7)]
    return {
        PS: (Polar(1.0, 1), [EuclidPoint.from_polar(0.5, 0.3), EuclidPoint.from_polar(1.0, 2.0),
                             EuclidPoint.from_polar(2.0, 4.0)], EXTENDED_R_GRID),
        EQ: (Plane(0.6, 0.8, 1), cart, EXTENDED_R_GRID),
        HO: (HOLimit(0.8, 0.6), cart, DEFAULT_R_GRID),
        SCP: (SCPLimit(0.6, 0.8), cart, DEFAULT_R_GRID),
        EP: (EPLimit(1.0, 0.5), [EuclidPoint.from_parabolic(0.9, 0.7), EuclidPoint.from_parabolic(0.5, 1.2),
                                 EuclidPoint.from_parabolic(1.3, 0.4)], DEFAULT_R_GRID),
        HP: (HPLimit(0.8, 0.6), cart, DEFAULT_R_GRID),
    }
