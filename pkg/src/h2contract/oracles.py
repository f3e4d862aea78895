"""Reference tables shipped with the package and the checks that use them."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from . import specfun

_FUNCS = {
    "gamma": lambda z: specfun.gamma_complex(z),
    "loggamma": lambda z: specfun.loggamma(z),
    "hyp2f1": lambda a, b, c, z: specfun.hyp2f1(a, b, c, z, tol=1e-16).value,
    "hyp1f1": lambda a, c, z: specfun.hyp1f1(a, c, z, tol=1e-16).value,
    "hyp0f1": lambda c, z: specfun.hyp0f1(c, z, tol=1e-16).value,
    "bessel_j": lambda nu, x: specfun.bessel_j(nu, x.real),
    "bessel_j_scaled": lambda rho, x: specfun.bessel_j_scaled(rho.real, x.real),
    "macdonald_k_scaled": lambda rho, x: specfun.macdonald_k_scaled(rho.real, x.real),
    "legendre_p_interval": lambda mu, nu, x: specfun.legendre_p_interval(mu, nu, x.real),
    "legendre_p_ray": lambda mu, nu, z: specfun.legendre_p_ray(mu, nu, z.real),
    "pcf_d": lambda nu, z: specfun.pcf_d(nu, z),
}


@dataclass(frozen=True)
class OracleRow:
    case: str
    function: str
    args: tuple
    ref: complex
    rtol: float
    source: str

    def evaluate(self) -> complex:
        return complex(_FUNCS[self.function](*self.args))

    def rel_error(self) -> float:
        return abs(self.evaluate() - self.ref) / abs(self.ref)


def _open(name: str):
    return resources.files("h2contract").joinpath("data", name).open("r", newline="")


def load_specfun_oracles() -> list[OracleRow]:
    """Rows of ``data/specfun_oracles.csv`` (mpmath references at 40 digits)."""
    with _open("specfun_oracles.csv") as fh:
        return [OracleRow(r["case"], r["function"], tuple(complex(a) for a in r["args"].split()),
                          complex(float(r["ref_re"]), float(r["ref_im"])), float(r["rtol"]), r["source"])
                for r in csv.DictReader(fh)]


def load_macdonald_series() -> list[tuple[float, float, float]]:
    """(rho, x, exp(pi rho/2) K_{i rho}(x)) from the high-precision series continuation."""
    with _open("macdonald_series.csv") as fh:
        return [(float(r["rho"]), float(r["x"]), float(r["k_scaled"])) for r in csv.DictReader(fh)]


def macdonald_cross_error(rho: float, x: float, ref: float) -> float:
    """|quad - ref| / max(|ref|, envelope floor) for the scaled Macdonald function.

    In the oscillatory regime x < rho the function has zeros, so the
    denominator is floored at 1e-3 of the local amplitude sqrt(2 pi)(rho^2 - x^2)^(-1/4).
    """
    val = specfun.macdonald_k_scaled(rho, x)
    floor = 1e-3 * specfun.macdonald_envelope(rho, x) if rho > x else 0.0
    return abs(val - ref) / max(abs(ref), floor)
