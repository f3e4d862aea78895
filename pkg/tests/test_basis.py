import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from h2contract.basis import (
    EPLimit,
    EPParams,
    EQParams,
    HOLimit,
    HOParams,
    HPLimit,
    HPParams,
    Plane,
    Polar,
    SCPLimit,
    SCPParams,
    SParams,
    eval_basis,
    eval_limit,
    ho_normalization,
    phase_deltas,
    phase_m,
    prefactor,
)
from h2contract.errors import DomainError
from h2contract.geometry import EP, EQ, HO, HP, PS, SCP, SCPR, ChartPoint, EuclidPoint
from h2contract.specfun import LogComplex, bessel_j, macdonald_k, pcf_d

from .conftest import rel


def val(params, chart, a, b, R=1.0):
    return eval_basis(params, ChartPoint(chart, a, b), R).value.to_complex()


# ------------------------------------------------------------------ parameter validation

@pytest.mark.parametrize("make", [
    lambda: SParams(-1.0, 0), lambda: SParams(1.0, 0.5), lambda: EQParams(1.0, 0.3, 2),
    lambda: HOParams(1.0, 0.0), lambda: SCPParams(1.0, 0.0), lambda: HPParams(1.0, -0.5),
    lambda: SCPLimit(0.5, 0.5), lambda: HPLimit(0.6, 0.8), lambda: HOLimit(0.0, 1.0), lambda: Plane(0, 0),
])
def test_invalid_parameters_rejected(make):
    with pytest.raises(DomainError):
        make()


def test_hp_discrete_spectrum_message():
    with pytest.raises(DomainError, match="discrete-spectrum case excluded"):
        HPParams(1.0, -1.0)
    with pytest.raises(DomainError, match="discrete-spectrum case excluded"):
        HPLimit(0.6, 0.8)


def test_family_chart_mismatch_rejected():
    with pytest.raises(DomainError):
        eval_basis(SParams(1.0, 0), ChartPoint(HO, 0.0, 1.0), 1.0)
    with pytest.raises(DomainError):
        eval_basis(HOParams(1.0, 1.0), ChartPoint(HO, 0.0, 0.0), 1.0)


# ------------------------------------------------------------------ eval_basis examples

def test_pseudo_spherical_apex():
    for rho in (0.5, 3.0, 40.0):
        assert val(SParams(rho, 0), PS, 0.0, 1.0) == 1
        assert rel(val(SParams(rho, 0), PS, 1e-9, 1.0), 1.0) < 1e-12
        assert val(SParams(rho, 2), PS, 0.0, 1.0) == 0


def test_pseudo_spherical_against_mpmath():
    ref = complex(mp.legenp(-0.5 + 2j, 1, mp.cosh(0.9), type=3)) * cmath.exp(1j * 1.0)
    assert rel(val(SParams(2.0, 1), PS, 0.9, 1.0), ref) < 1e-10


def test_scp_on_diagonal_is_product():
    rho, s, xi = 2.0, 1.0, 1.0
    direct = xi * bessel_j(1j * rho, math.sqrt(s) * xi) * macdonald_k(rho, math.sqrt(s) * xi)
    assert rel(val(SCPParams(rho, s), SCP, xi, xi), direct) < 1e-10
    ref = xi * complex(mp.besselj(2j, 1) * mp.besselk(2j, 1))
    assert rel(val(SCPParams(rho, s), SCP, xi, xi), ref) < 1e-10


def test_horocyclic_example():
    rho = 3.0
    ref = math.sqrt(rho * math.sinh(math.pi * rho) / (2 * math.pi ** 3)) * float(mp.re(mp.besselk(3j, 1)))
    v = val(HOParams(rho, 1.0), HO, 0.0, 1.0)
    assert rel(v, ref) < 1e-10
    assert v.real == pytest.approx(-0.0153418, abs=1e-7)


def test_horocyclic_normalization_log_domain():
    for rho, R in ((0.3, 1.0), (3.0, 2.5), (80.0, 10.0), (400.0, 7.0)):
        expected = 0.5 * (math.log(rho) + float(mp.log(mp.sinh(mp.pi * rho))) - math.log(2 * R * R * math.pi ** 3))
        assert ho_normalization(rho, R).log_mag == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("params, chart, a, b, R, ref", [
    (EQParams(1.3, 0.7, 1), EQ, 0.4, 0.9, 1.0,
     lambda: mp.cosh(0.4) ** -0.5 * mp.legenp(-0.5 + 0.7j, 1.3j, -mp.tanh(0.4), type=2) * mp.expj(0.7 * 0.9)),
    (EPParams(1.5, 0.7), EP, 0.8, 0.3, 1.0,
     lambda: mp.sqrt(mp.cos(0.3)) * mp.legenp(0.7j - 0.5, 1.5j, mp.sin(0.3), type=2)
     * mp.legenp(1.5j - 0.5, 0.7j, mp.tanh(0.8), type=2)),
    (HPParams(1.2, 0.5), HP, 0.6, 1.2, 3.0,
     lambda: mp.sqrt(mp.sinh(0.6) * mp.sin(1.2)) * mp.legenp(0.5j - 0.5, 1.2j, mp.cosh(0.6), type=3)
     * mp.legenp(0.5j - 0.5, 1.2j, mp.cos(1.2), type=2)),
    (SCPParams(1.1, 0.8), SCPR, 0.7, 1.4, 1.0,
     lambda: mp.sqrt(0.7 * 1.4) * mp.besselj(1.1j, mp.sqrt(0.8) * 0.7) * mp.besselk(1.1j, mp.sqrt(0.8) * 1.4)),
])
def test_families_against_mpmath(params, chart, a, b, R, ref):
    assert rel(val(params, chart, a, b, R), complex(ref())) < 1e-9


def test_linear_matches_log_value():
    v = eval_basis(EPParams(2.0, -1.0), ChartPoint(EP, 0.5, 0.2), 1.0)
    assert rel(v.linear, cmath.exp(complex(v.value.log_mag, v.value.phase))) < 1e-12


def test_large_rho_stays_in_log_domain():
    # the horocyclic normalization alone is ~ exp(pi rho / 2)
    v = eval_basis(HOParams(250.0, 200.0), ChartPoint(HO, 0.0, 1.0), 1.0)
    assert math.isfinite(v.value.log_mag)


# ------------------------------------------------------------------ symmetries

def test_s_family_periodicity(rng):
    for _ in range(20):
        tau, phi, rho, m = rng.uniform(0.1, 2.5), rng.uniform(0, 2 * math.pi), rng.uniform(0.5, 5), rng.integers(-3, 4)
        a = eval_basis(SParams(rho, int(m)), ChartPoint(PS, tau, phi), 1.0).value
        b = eval_basis(SParams(rho, int(m)), ChartPoint(PS, tau, phi + 2 * math.pi), 1.0).value
        assert a.isclose(b, rtol=1e-12)


def test_eq_family_reflection(rng):
    for _ in range(20):
        t1, t2 = rng.uniform(-1.2, 1.2), rng.uniform(-2, 2)
        rho, nu = rng.uniform(0.5, 4), rng.uniform(-3, 3)
        a = val(EQParams(rho, nu, 1), EQ, t1, t2)
        b = val(EQParams(rho, nu, -1), EQ, -t1, t2)
        assert abs(a - b) <= 1e-10 * max(abs(a), 1e-300)


def test_scp_negative_s_is_swap(rng):
    for _ in range(20):
        xi, eta, rho, s = *rng.uniform(0.3, 2.0, 2), rng.uniform(0.5, 4), rng.uniform(0.3, 3)
        a = val(SCPParams(rho, -s), SCP, xi, eta)
        b = val(SCPParams(rho, s), SCP, eta, xi)
        assert abs(a - b) <= 1e-10 * abs(b)


@pytest.mark.parametrize("params, chart, box", [
    (SParams(2.0, 1), PS, ((0.05, 2.5), (0.0, 6.2))),
    (EQParams(2.0, 1.0, 1), EQ, ((-1.2, 1.2), (-2.0, 2.0))),
    (HOParams(2.0, 1.5), HO, ((-1.5, 1.5), (0.3, 3.0))),
    (SCPParams(2.0, -1.5), SCP, ((0.3, 2.0), (0.3, 2.0))),
    (EPParams(2.0, 1.0), EP, ((0.05, 1.5), (-1.0, 1.3))),
    (HPParams(2.0, 1.0), HP, ((0.3, 2.0), (0.3, 2.5))),
])
def test_continuity_on_fine_grids(params, chart, box):
    # third differences of a smooth function are O(h^3); a branch jump would show up at O(1)
    h = 2e-3
    (a0, a1), (b0, b1) = box
    am, bm = 0.5 * (a0 + a1), 0.5 * (b0 + b1)
    fa = np.array([val(params, chart, a, bm, 1.3) for a in np.arange(a0, a1, h)])
    fb = np.array([val(params, chart, am, b, 1.3) for b in np.arange(b0, b1, h)])
    for f in (fa, fb):
        assert np.max(np.abs(np.diff(f, 3))) < 1e-5 * np.max(np.abs(f))


# ------------------------------------------------------------------ limits

def test_limit_examples():
    assert eval_limit(Polar(1.0, 0), EuclidPoint(0.0, 0.0)).value.to_complex() == 1
    assert eval_limit(Plane(0.6, 0.8, 1), EuclidPoint(0.0, 0.0)).value.to_complex() == 1
    d = pcf_d(-0.5, cmath.sqrt(-2j))
    v = eval_limit(EPLimit(1.0, 0.0), EuclidPoint.from_parabolic(1.0, 1.0)).value.to_complex()
    assert rel(v, d * d) < 1e-12
    ref = complex(mp.pcfd(-0.5, mp.sqrt(-2j))) ** 2
    assert rel(v, ref) < 1e-10


def test_plane_wave_sign_convention():
    e = EuclidPoint(0.3, 0.4)
    v = eval_limit(Plane(0.6, 0.8, -1), e).value.to_complex()
    assert rel(v, cmath.exp(1j * (0.6 * 0.3 + 0.8 * 0.4))) < 1e-15


def test_phase_dependent_limits_need_radius():
    with pytest.raises(DomainError):
        eval_limit(HOLimit(0.8, 0.6), EuclidPoint(0.1, 0.2))
    with pytest.raises(DomainError):
        eval_limit(SCPLimit(0.6, 0.8), EuclidPoint(0.1, 0.2))


def test_phase_m():
    assert phase_m(0.0, 1.3, 50.0) == pytest.approx(math.pi / 4, abs=1e-15)
    k1, k2, R = 0.8, 0.6, 13.0
    assert phase_m(k1, k2, 2 * R) - math.pi / 4 == pytest.approx(2 * (phase_m(k1, k2, R) - math.pi / 4), rel=1e-13)


def test_phase_deltas_solve_printed_pair():
    k1, k2, R = 0.3, 0.4, 10.0
    d1, d2 = phase_deltas(k1, k2, R)
    k = 0.5
    assert d1 + d2 == pytest.approx(math.sqrt(2) * R * (k1 + k2) - R * k * math.asinh((k2 + k1) / (k2 - k1)), rel=1e-13)
    assert d1 - d2 == pytest.approx(math.sqrt(2) * R * (k2 - k1) - R * k * math.asinh((k2 - k1) / (k2 + k1)), rel=1e-13)
    with pytest.raises(DomainError):
        phase_deltas(0.4, 0.3, R)


# ------------------------------------------------------------------ prefactors

def test_prefactor_polar():
    p = prefactor(PS, Polar(1.0, 2), 10.0)
    assert p.log_mag == pytest.approx(math.log(100.0), rel=1e-15)
    assert p.phase == 0.0
    assert prefactor(PS, Polar(1.0, 0), 10.0) == LogComplex.one()
    assert prefactor(PS, Polar(1.0, -3), 10.0).phase == pytest.approx(math.pi)


def test_prefactor_equidistant_log_domain():
    lp = Plane(0.6, 0.8, 1)
    R, k = 100.0, 1.0
    p = prefactor(EQ, lp, R)
    ref = (0.5 * mp.log(mp.pi) - mp.re(mp.loggamma(0.75 - 0.5j * R * (k + 0.6)))
           - mp.re(mp.loggamma(0.75 - 0.5j * R * (k - 0.6))))
    assert p.log_mag == pytest.approx(float(ref), rel=1e-12)
    # |Gamma(3/4 - iy)| ~ exp(-pi y / 2), so the modulus grows like exp(pi k R / 2)
    assert p.log_mag == pytest.approx(math.pi * k * R / 2, rel=0.05)
    assert not prefactor(EQ, lp, 500.0).representable


def test_prefactor_linear_matches_direct_at_small_R():
    from scipy.special import gamma

    lp, R = Plane(0.6, 0.8, 1), 3.0
    direct = math.sqrt(math.pi) * 2 ** (1j * R) / (gamma(0.75 - 0.5j * R * 1.6) * gamma(0.75 - 0.5j * R * 0.4))
    assert rel(prefactor(EQ, lp, R).to_complex(), direct) < 1e-10
    lp = EPLimit(1.0, 0.5)
    direct = 2 ** (2j * R + 0.5 + 0.25j) / gamma(0.75 - 0.125j - 1j * R) ** 2
    assert rel(prefactor(EP, lp, R).to_complex(), direct) < 1e-10


def test_prefactor_signs():
    assert prefactor(HO, HOLimit(0.8, 0.6), 10.0).to_complex().real < 0
    assert prefactor(SCP, SCPLimit(0.6, 0.8), 10.0).to_complex().real < 0
    ho = prefactor(HO, HOLimit(0.8, 0.6), 10.0).to_complex()
    assert abs(ho) == pytest.approx(math.sqrt(1 / 1.6) / (10 * math.pi), rel=1e-14)


def test_prefactor_family_mismatch():
    with pytest.raises(DomainError):
        prefactor(EQ, Polar(1.0, 0), 10.0)


def test_hp_prefactor_finite():
    p = prefactor(HP, HPLimit(0.8, 0.6), 100.0)
    assert math.isfinite(p.log_mag)
