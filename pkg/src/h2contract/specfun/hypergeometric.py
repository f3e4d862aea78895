"""Maclaurin series for 2F1, 1F1 and 0F1 with certified tail bounds.

After summing terms 0..n the remainder is bounded by a geometric series,
``|t_{n+1}| / (1 - r)``, where ``r`` bounds every later term ratio.  For term
index m >= n the ratio factors obey ``|a+m| <= |a|+m`` and
``|c+m| >= m-|c|``, and each such quotient is monotone in m, so its sup is
reached at m = n or in the limit m -> inf (where it tends to 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ConvergenceError, DomainError

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 10_000
HYP2F1_ZMAX = 0.75


@dataclass(frozen=True)
class SeriesReport:
    """Outcome of a series summation.

    Attributes
    ----------
    value : complex
        Partial sum.
    terms_used : int
        Number of terms included.
    tail_bound : float
        Upper bound on the modulus of the neglected remainder.
    converged : bool
        True when ``tail_bound <= tol * |value|`` (or the series terminated).
    max_term : float
        Largest term modulus seen; ``max_term / |value|`` measures cancellation.
    """

    value: complex
    terms_used: int
    tail_bound: float
    converged: bool
    max_term: float

    @property
    def cancellation(self) -> float:
        """Ratio of the largest term to the result (>= 1 up to rounding)."""
        if self.value == 0:
            return math.inf
        return self.max_term / abs(self.value)


def _sup_ratio_factor(num_abs: float, den_abs: float, n: int, den_offset: int) -> float:
    # sup over m >= n of (|num| + m) / (m + den_offset - |den|), or inf if undefined
    d = n + den_offset - den_abs
    if d <= 0:
        return math.inf
    return max(1.0, (num_abs + n) / d)


def _check_c(c: complex, name: str = "c") -> None:
    if c.imag == 0.0 and c.real <= 0.0 and c.real == math.floor(c.real):
        raise DomainError(f"{name} = {c.real:g} is a nonpositive integer")


def _sum(numer, denom, z, tol, max_terms, ratio_bound) -> SeriesReport:
    """Sum prod (a)_n / prod (b)_n z^n / n!; ``ratio_bound(n)`` bounds later ratios."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    max_term = 1.0
    if z == 0:
        return SeriesReport(total, 1, 0.0, True, 1.0)
    n = 0
    tail = math.inf
    while n < max_terms:
        num = z
        for a in numer:
            num *= a + n
        den = float(n + 1)
        for b in denom:
            den *= b + n
        term = term * num / den
        n += 1
        if term == 0:
            return SeriesReport(total, n, 0.0, True, max_term)
        total += term
        at = abs(term)
        if at > max_term:
            max_term = at
        r = ratio_bound(n)
        if r < 1.0:
            # |t_{n+1}| <= |t_n| * r
            tail = at * r / (1.0 - r)
            if tail <= tol * abs(total) or tail == 0.0:
                return SeriesReport(total, n + 1, tail, True, max_term)
    report = SeriesReport(total, n + 1, tail, False, max_term)
    raise ConvergenceError(f"series not converged after {max_terms} terms", report)


def hyp2f1(a: complex, b: complex, c: complex, z: complex, *, tol: float = DEFAULT_TOL,
           max_terms: int = DEFAULT_MAX_TERMS, zmax: float = HYP2F1_ZMAX) -> SeriesReport:
    """Gauss hypergeometric series 2F1(a, b; c; z) for |z| <= zmax.

    Raises
    ------
    DomainError
        If |z| > zmax or c is a nonpositive integer.
    ConvergenceError
        If the tail bound does not fall below ``tol`` within ``max_terms``.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    _check_c(c)
    if abs(z) > zmax:
        raise DomainError(f"|z| = {abs(z):.6g} exceeds the series cap {zmax}")
    aa, ab, ac, az = abs(a), abs(b), abs(c), abs(z)

    def bound(n):
        return az * _sup_ratio_factor(aa, 0.0, n, 1) * _sup_ratio_factor(ab, ac, n, 0)

    return _sum((a, b), (c,), z, tol, max_terms, bound)


def hyp1f1(a: complex, c: complex, z: complex, *, tol: float = DEFAULT_TOL,
           max_terms: int = DEFAULT_MAX_TERMS) -> SeriesReport:
    """Kummer series 1F1(a; c; z)."""
    a, c, z = complex(a), complex(c), complex(z)
    _check_c(c)
    aa, ac, az = abs(a), abs(c), abs(z)

    def bound(n):
        d = n - ac
        if d <= 0:
            return math.inf
        return az * _sup_ratio_factor(aa, 0.0, n, 1) / d

    return _sum((a,), (c,), z, tol, max_terms, bound)


def hyp0f1(c: complex, z: complex, *, tol: float = DEFAULT_TOL,
           max_terms: int = DEFAULT_MAX_TERMS) -> SeriesReport:
    """Confluent limit series 0F1(; c; z)."""
    c, z = complex(c), complex(z)
    _check_c(c)
    ac, az = abs(c), abs(z)

    def bound(n):
        d = (n - ac) * (n + 1)
        if d <= 0:
            return math.inf
        return az / d

    return _sum((), (c,), z, tol, max_terms, bound)
