import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from h2contract.errors import ConvergenceError, DomainError, PoleError
from h2contract.oracles import load_macdonald_series, load_specfun_oracles, macdonald_cross_error
from h2contract.specfun import (
    LogComplex,
    asym_bessel_j_imag,
    asym_macdonald_k,
    bessel_j,
    bessel_j_scaled,
    gamma_complex,
    gamma_ratio,
    gamma_ratio_asym,
    hyp0f1,
    hyp1f1,
    hyp2f1,
    legendre_p_interval,
    legendre_p_ray,
    log_gamma_complex,
    log_legendre_p_cosh,
    log_legendre_p_ray,
    macdonald_asym_error,
    macdonald_k,
    macdonald_k_scaled,
    pcf_d,
    sqrt_minus_2ik,
)

from .conftest import rel


def cquad(f, a, b, **kw):
    """scipy quad of a complex integrand, split into real and imaginary parts."""
    re = integrate.quad(lambda t: f(t).real, a, b, limit=400, epsabs=0, epsrel=1e-13, **kw)[0]
    im = integrate.quad(lambda t: f(t).imag, a, b, limit=400, epsabs=0, epsrel=1e-13, **kw)[0]
    return complex(re, im)


def small_complex(lo=-3.0, hi=3.0):
    f = st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    return st.builds(complex, f, f)


# ------------------------------------------------------------------ LogComplex

def test_logcomplex_round_trip_and_arithmetic():
    a, b = 3 - 4j, -0.5 + 2j
    la, lb = LogComplex.from_complex(a), LogComplex.from_complex(b)
    assert rel((la * lb).to_complex(), a * b) < 1e-15
    assert rel((la / lb).to_complex(), a / b) < 1e-15
    assert rel((la + lb).to_complex(), a + b) < 1e-15
    assert LogComplex.from_complex(0).is_zero


def test_logcomplex_overflow_is_explicit():
    big = LogComplex(1000.0, 0.3)
    assert not big.representable
    with pytest.raises(OverflowError):
        big.to_complex()
    assert rel((big / LogComplex(999.0, 0.3)).to_complex(), math.e) < 1e-13


def test_logcomplex_phase_reduced():
    assert LogComplex(0.0, 3 * math.pi).phase == pytest.approx(math.pi)
    assert -math.pi < LogComplex(0.0, -math.pi).phase <= math.pi


# ------------------------------------------------------------------ gamma

def test_gamma_factorials():
    assert gamma_complex(1) == pytest.approx(1, rel=1e-15)
    assert gamma_complex(5) == pytest.approx(24, rel=1e-14)


def test_gamma_half_line_modulus():
    y = 1.0
    assert abs(gamma_complex(0.5 + 1j * y)) ** 2 == pytest.approx(math.pi / math.cosh(math.pi * y), rel=1e-13)


def test_gamma_against_integral_oracle():
    z = 0.5 + 2.5j
    # Gamma(z + 3) = int exp((z + 3) v - e^v) dv, then step down by the recurrence
    g3 = cquad(lambda v: cmath.exp((z + 3) * v - math.exp(v)), -60.0, 6.0)
    ref = g3 / (z * (z + 1) * (z + 2))
    assert rel(gamma_complex(z), ref) < 1e-10


def test_gamma_pole_carries_integer():
    with pytest.raises(PoleError) as info:
        gamma_complex(-3)
    assert info.value.n == -3


def test_log_gamma_no_underflow_far_up_the_line():
    # |Gamma(3/4 + iy) Gamma(1/4 - iy)|^2 = 2 pi^2 / cosh(2 pi y)
    y = 800.0
    lg = log_gamma_complex(0.75 + 1j * y) * log_gamma_complex(0.25 - 1j * y)
    expected = math.log(2 * math.pi ** 2) - (2 * math.pi * y - math.log(2.0))
    assert 2 * lg.log_mag == pytest.approx(expected, rel=1e-13)


@given(small_complex(0.1, 6.0))
def test_gamma_conjugation(z):
    assert rel(gamma_complex(z.conjugate()), gamma_complex(z).conjugate()) < 1e-12


def test_gamma_ratio_exact_for_unit_shift():
    for z in (3 + 4j, 50j, 7.5 - 2j):
        assert rel(gamma_ratio(z, 1, 0).to_complex(), z) < 1e-12
        assert rel(gamma_ratio_asym(z, 1, 0), z) < 1e-15


def test_gamma_ratio_asymptotic():
    alpha, beta = 0.5 + 1j, 0.25

    def err(z):
        return rel(gamma_ratio_asym(z, alpha, beta), gamma_ratio(z, alpha, beta).to_complex())

    assert err(50j) <= 0.05
    errs = [err(z) for z in (10j, 20j, 50j, 100j)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_gamma_ratio_asym_branch_cut():
    with pytest.raises(DomainError):
        gamma_ratio_asym(-2.0, 1, 0)


# ------------------------------------------------------------------ hypergeometric

def test_hypergeometric_at_zero():
    assert hyp2f1(0.3 + 1j, 2, 1.5, 0).value == 1
    assert hyp1f1(2 - 1j, 0.5, 0).value == 1
    assert hyp0f1(0.5j + 1, 0).value == 1


def test_hyp2f1_log_closed_form():
    rep = hyp2f1(1, 1, 2, 0.5)
    assert rep.converged
    assert rep.value.real == pytest.approx(2 * math.log(2), rel=1e-10)


def test_hyp0f1_sine_identity():
    y = 2.0
    assert hyp0f1(1.5, -y * y / 4).value.real == pytest.approx(math.sin(y) / y, rel=1e-12)
    assert hyp0f1(1.5, -y * y / 4).value.real == pytest.approx(0.454649, abs=1e-6)


def test_hyp1f1_degenerate_exponential():
    a, z = 0.7 + 0.3j, 1 + 1j
    assert rel(hyp1f1(a, a, z).value, cmath.exp(z)) < 1e-11
    assert rel(hyp1f1(a, a, z, tol=1e-16).value, cmath.exp(z)) < 1e-14


def test_hyp2f1_contraction_regime():
    # (1/2 + i rho, 1/2 - i rho; 1; -(r/2R)^2) -> 0F1(1; -k^2 r^2 / 4) = J_0(kr), rho = kR
    def err(R):
        z = -(1.0 / (2 * R)) ** 2
        return abs(hyp2f1(0.5 + 1j * R, 0.5 - 1j * R, 1, z).value - special.j0(1.0))

    errs = [err(R) for R in (50, 100, 200, 400)]
    assert errs[2] <= 1e-2
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_hyp2f1_domain_cap():
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 2, 0.9)
    with pytest.raises(DomainError):
        hyp2f1(1, 1, -2, 0.1)


def test_series_term_cap_reports_partial():
    with pytest.raises(ConvergenceError) as info:
        hyp1f1(1, 1, 30.0, max_terms=5)
    assert info.value.report is not None
    assert not info.value.report.converged


@given(small_complex(), small_complex(), small_complex(0.5, 3.0), small_complex(-0.7, 0.7))
def test_hyp2f1_tail_bound_invariant(a, b, c, z):
    if abs(z) > 0.7:
        return
    try:
        coarse = hyp2f1(a, b, c, z, tol=1e-8)
        fine = hyp2f1(a, b, c, z, tol=1e-9)
    except ConvergenceError:
        return
    assert coarse.converged
    assert abs(coarse.value - fine.value) <= 2 * coarse.tail_bound + 1e-15 * coarse.max_term


@given(small_complex(), small_complex(0.5, 3.0), small_complex(-4.0, 4.0))
def test_hyp1f1_tail_bound_invariant(a, c, z):
    coarse = hyp1f1(a, c, z, tol=1e-8)
    fine = hyp1f1(a, c, z, tol=1e-9)
    assert abs(coarse.value - fine.value) <= 2 * coarse.tail_bound + 1e-15 * coarse.max_term


@given(small_complex(), small_complex(), small_complex(0.5, 3.0), small_complex(-0.7, 0.7))
def test_hyp2f1_conjugation(a, b, c, z):
    if abs(z) > 0.7:
        return
    try:
        v = hyp2f1(a, b, c, z).value
        w = hyp2f1(a.conjugate(), b.conjugate(), c.conjugate(), z.conjugate()).value
    except ConvergenceError:
        return
    assert abs(w - v.conjugate()) <= 1e-12 * max(1.0, abs(v))


@given(small_complex(), small_complex(0.5, 3.0), small_complex(-4.0, 4.0))
def test_confluent_conjugation(a, c, z):
    v = hyp1f1(a, c, z).value
    assert abs(hyp1f1(a.conjugate(), c.conjugate(), z.conjugate()).value - v.conjugate()) <= 1e-12 * max(1, abs(v))
    u = hyp0f1(c, z).value
    assert abs(hyp0f1(c.conjugate(), z.conjugate()).value - u.conjugate()) <= 1e-12 * max(1, abs(u))


# ------------------------------------------------------------------ Bessel / Macdonald

def test_bessel_j_values():
    assert bessel_j(0, 0.0) == 1
    ref = integrate.quad(lambda t: math.cos(t - math.sin(t)), 0, math.pi, epsabs=0, epsrel=1e-13)[0] / math.pi
    assert bessel_j(1, 1.0).real == pytest.approx(ref, rel=1e-12)
    assert bessel_j(1, 1.0).real == pytest.approx(0.4400506, abs=1e-7)


def test_bessel_j_imaginary_order_schlafli():
    nu, x = 1j, 1.0
    first = cquad(lambda t: cmath.cos(nu * t - x * math.sin(t)), 0, math.pi) / math.pi
    second = cquad(lambda t: cmath.exp(-x * math.sinh(t) - nu * t), 0, 40.0)
    ref = first - cmath.sin(nu * math.pi) / math.pi * second
    assert rel(bessel_j(nu, x), ref) < 1e-8


def test_bessel_j_scaled_series_vs_contour():
    for rho, x in ((3.0, 2.0), (20.0, 15.0), (60.0, 30.0)):
        a = bessel_j_scaled(rho, x, method="series")
        b = bessel_j_scaled(rho, x, method="contour")
        assert rel(a, b) < 1e-9


def test_macdonald_k0_quadrature_oracle():
    ref = integrate.quad(lambda t: math.exp(-math.cosh(t)), 0, 8.0, epsabs=0, epsrel=1e-13)[0]
    assert macdonald_k(0.0, 1.0) == pytest.approx(ref, rel=1e-9)
    assert macdonald_k(0.0, 1.0) == pytest.approx(0.42102444, abs=1e-8)
    assert macdonald_k(0.0, 1.0) == pytest.approx(special.k0(1.0), rel=1e-13)


def test_macdonald_even_in_rho():
    assert macdonald_k(2.3, 1.7) == macdonald_k(-2.3, 1.7)


def test_macdonald_two_independent_paths():
    q = macdonald_k(5.0, 1.0, method="quad")
    s = macdonald_k(5.0, 1.0, method="series")
    assert q == pytest.approx(s, rel=1e-7)


@given(st.floats(0.0, 8.0), st.floats(0.1, 20.0))
def test_macdonald_contour_vs_real_axis(rho, x):
    # the real-axis integral cancels like exp(-pi rho/2), so keep rho moderate
    a = macdonald_k_scaled(rho, x)
    b = macdonald_k_scaled(rho, x, method="real")
    assert abs(a - b) <= 1e-9 * max(abs(a), 1e-12)


def test_macdonald_cross_oracle_fixture():
    rows = load_macdonald_series()
    assert rows
    for rho, x, ref in rows:
        assert macdonald_cross_error(rho, x, ref) <= 1e-7


def test_macdonald_quadrature_cap():
    with pytest.raises(DomainError, match="asym_macdonald_k"):
        macdonald_k_scaled(400.0, 10.0)


@given(st.floats(0.2, 20.0), st.floats(0.2, 15.0))
def test_scaled_product_equals_unscaled(rho, x):
    scaled = bessel_j_scaled(rho, x) * macdonald_k_scaled(rho, x)
    plain = bessel_j(1j * rho, x) * macdonald_k(rho, x)
    assert abs(scaled - plain) <= 1e-10 * max(abs(scaled), 1e-300) + 1e-300


# ------------------------------------------------------------------ Legendre

@pytest.mark.parametrize("x", [-0.8, -0.3, 0.0, 0.45, 0.95])
def test_legendre_interval_polynomials(x):
    assert legendre_p_interval(0, 0, x) == pytest.approx(1, abs=1e-12)
    assert legendre_p_interval(0, 1, x).real == pytest.approx(x, abs=1e-10)


def test_legendre_interval_ode_propagation():
    mu, nu = 1j, -0.5 + 2j
    # initial data at x = 0
    p0 = (2 ** mu / math.sqrt(math.pi) * cmath.cos(0.5 * (nu + mu) * math.pi)
          * special.gamma(0.5 * (nu + mu) + 0.5) / special.gamma(0.5 * (nu - mu) + 1))
    d0 = (2 ** (mu + 1) / math.sqrt(math.pi) * cmath.sin(0.5 * (nu + mu) * math.pi)
          * special.gamma(0.5 * (nu + mu) + 1) / special.gamma(0.5 * (nu - mu) + 0.5))
    assert rel(legendre_p_interval(mu, nu, 0.0), p0) < 1e-12

    def rhs(x, y):
        return [y[1], (2 * x * y[1] - (nu * (nu + 1) - mu * mu / (1 - x * x)) * y[0]) / (1 - x * x)]

    sol = integrate.solve_ivp(rhs, (0.0, 0.3), [complex(p0), complex(d0)], method="DOP853",
                              rtol=1e-13, atol=1e-15)
    assert rel(legendre_p_interval(mu, nu, 0.3), sol.y[0, -1]) < 1e-8


def test_legendre_interval_rejects_endpoints():
    with pytest.raises(DomainError):
        legendre_p_interval(0, 1, 1.0)


def test_legendre_ray_near_one_and_polynomial():
    assert rel(legendre_p_ray(0, 0.3 + 0.2j, 1 + 1e-8), 1.0) < 1e-4
    assert legendre_p_ray(0, 1, 1.5).real == pytest.approx(1.5, rel=1e-10)


def test_legendre_ray_quadrature_vs_hypergeometric():
    for mu, nu, z in ((0.7j, -0.5 + 1.3j, 1.4), (2j, -0.5 + 0.5j, 2.0), (-0.3 + 1j, -0.5 + 2j, 1.8)):
        a = log_legendre_p_ray(mu, nu, z, method="quad").to_complex()
        b = log_legendre_p_ray(mu, nu, z, method="hyp").to_complex()
        assert rel(a, b) < 1e-8


def test_legendre_ray_divergent_region():
    with pytest.raises(DomainError, match="diverge"):
        log_legendre_p_ray(1.0, 2.0, 5.0, method="quad")


def test_legendre_cosh_small_tau():
    # P^0_nu(cosh tau) -> 1 + nu(nu+1) tau^2/4 as tau -> 0
    nu, tau = -0.5 + 3j, 1e-5
    v = log_legendre_p_cosh(0, nu, tau).to_complex()
    assert rel(v, 1 + nu * (nu + 1) * tau * tau / 4) < 1e-13


# ------------------------------------------------------------------ parabolic cylinder

def test_pcf_d0_closed_form():
    z = 1.7
    assert rel(pcf_d(0, z), math.exp(-z * z / 4)) < 1e-12


def test_pcf_d1_recurrence():
    # D_1 = z D_0 - 0 * D_{-1}
    z = 1.0
    assert rel(pcf_d(1, z), z * pcf_d(0, z)) < 1e-12
    assert rel(pcf_d(1, z), z * math.exp(-z * z / 4)) < 1e-12


def test_pcf_recurrence_complex_order():
    nu, z = 0.3 + 0.5j, 0.8 - 0.4j
    assert rel(pcf_d(nu + 1, z), z * pcf_d(nu, z) - nu * pcf_d(nu - 1, z)) < 1e-11


def test_pcf_ode_residual():
    nu, z, h = 0.3 + 0.5j, 0.8, 1e-3
    d = [pcf_d(nu, z + j * h) for j in (-2, -1, 0, 1, 2)]
    d2 = (-d[0] + 16 * d[1] - 30 * d[2] + 16 * d[3] - d[4]) / (12 * h * h)
    assert abs(d2 + (nu + 0.5 - z * z / 4) * d[2]) <= 1e-6 * abs(d[2])


@given(small_complex(-2, 2), small_complex(-2, 2))
def test_pcf_conjugation(nu, z):
    v = pcf_d(nu, z)
    assert abs(pcf_d(nu.conjugate(), z.conjugate()) - v.conjugate()) <= 1e-11 * max(1.0, abs(v))


def test_sqrt_minus_2ik_branch():
    k = 1.3
    assert rel(sqrt_minus_2ik(k), math.sqrt(2 * k) * cmath.exp(-0.25j * math.pi)) < 1e-15


# ------------------------------------------------------------------ asymptotic forms

def test_asym_macdonald_within_three_percent():
    ref = macdonald_k_scaled(100.0, 50.0)
    assert rel(asym_macdonald_k(100.0, 50.0, scaled=True), ref) <= 0.03


def test_asym_macdonald_improves_on_doubling():
    errs = [macdonald_asym_error(nu, 0.5 * nu) for nu in (25.0, 50.0, 100.0, 200.0)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert macdonald_asym_error(200.0, 50.0) < macdonald_asym_error(100.0, 50.0)


def test_asym_macdonald_domain():
    with pytest.raises(DomainError):
        asym_macdonald_k(10.0, 20.0)


def test_asym_bessel_j_imag():
    def errs(p):
        a = asym_bessel_j_imag(p, p, scaled=True)
        b = bessel_j_scaled(p, p)
        return abs(abs(a) / abs(b) - 1), abs(cmath.phase(a / b))

    mod, ph = errs(100.0)
    assert mod <= 0.05
    assert ph <= 0.1
    mods = [errs(p)[0] for p in (50.0, 100.0, 200.0)]
    assert all(b < a for a, b in zip(mods, mods[1:]))


def test_asym_bessel_domain():
    with pytest.raises(DomainError):
        asym_bessel_j_imag(-1.0, 2.0)


# ------------------------------------------------------------------ shipped oracle table

@pytest.mark.parametrize("row", load_specfun_oracles(), ids=lambda r: r.case)
def test_oracle_table(row):
    assert row.rel_error() <= row.rtol
