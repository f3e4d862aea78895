"""Complex numbers stored as (log|z|, arg z).

Prefactors built from gamma functions of large imaginary argument span
hundreds of orders of magnitude, so they are assembled in this form and only
turned into ordinary complex numbers at the very end (if at all).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

# exp(709.78) is the largest finite double
MAX_LINEAR_LOG = 700.0


def reduce_phase(phase: float) -> float:
    """Map an angle onto (-pi, pi]."""
    if not math.isfinite(phase):
        raise ValueError(f"non-finite phase {phase!r}")
    p = math.remainder(phase, 2.0 * math.pi)
    if p <= -math.pi:
        p += 2.0 * math.pi
    return p


@dataclass(frozen=True)
class LogComplex:
    """Nonzero complex number ``exp(log_mag) * exp(1j * phase)``.

    Zero is represented by ``log_mag = -inf`` and ``phase = 0``.

    Parameters
    ----------
    log_mag : float
        Natural log of the modulus.
    phase : float
        Argument in radians; reduced to (-pi, pi] on construction.
    """

    log_mag: float
    phase: float = 0.0

    def __post_init__(self):
        lm = float(self.log_mag)
        if math.isnan(lm) or lm == math.inf:
            raise ValueError(f"invalid log-magnitude {lm!r}")
        object.__setattr__(self, "log_mag", lm)
        if lm == -math.inf:
            object.__setattr__(self, "phase", 0.0)
        else:
            object.__setattr__(self, "phase", reduce_phase(float(self.phase)))

    # constructors
    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(-math.inf, 0.0)

    @classmethod
    def one(cls) -> "LogComplex":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, z: complex) -> "LogComplex":
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"non-finite value {z!r}")
        if z == 0:
            return cls.zero()
        return cls(math.log(abs(z)), cmath.phase(z))

    @classmethod
    def from_log(cls, w: complex) -> "LogComplex":
        """Return ``exp(w)`` for a complex logarithm ``w``."""
        w = complex(w)
        return cls(w.real, w.imag)

    # queries
    @property
    def is_zero(self) -> bool:
        return self.log_mag == -math.inf

    @property
    def representable(self) -> bool:
        """True when the value fits comfortably in a double."""
        return self.log_mag <= MAX_LINEAR_LOG

    @property
    def modulus(self) -> float:
        return math.exp(self.log_mag)

    def log(self) -> complex:
        """Complex logarithm with imaginary part in (-pi, pi]."""
        if self.is_zero:
            raise ValueError("log of zero")
        return complex(self.log_mag, self.phase)

    def to_complex(self) -> complex:
        """Materialize as a Python complex.

        Raises
        ------
        OverflowError
            If the modulus exceeds ``exp(MAX_LINEAR_LOG)``.
        """
        if self.is_zero:
            return 0j
        if not self.representable:
            raise OverflowError(
                f"|z| = exp({self.log_mag:.6g}) is not representable as a double"
            )
        return cmath.rect(math.exp(self.log_mag), self.phase)

    def __complex__(self) -> complex:
        return self.to_complex()

    # arithmetic
    def __mul__(self, other) -> "LogComplex":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log_mag + other.log_mag, self.phase + other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogComplex":
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("LogComplex division by zero")
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log_mag - other.log_mag, self.phase - other.phase)

    def __rtruediv__(self, other) -> "LogComplex":
        return _coerce(other) / self

    def __pow__(self, p: float) -> "LogComplex":
        """Real power using the stored (principal) phase."""
        p = float(p)
        if self.is_zero:
            if p > 0:
                return LogComplex.zero()
            raise ZeroDivisionError("zero to a non-positive power")
        return LogComplex(p * self.log_mag, p * self.phase)

    def __neg__(self) -> "LogComplex":
        if self.is_zero:
            return self
        return LogComplex(self.log_mag, self.phase + math.pi)

    def conj(self) -> "LogComplex":
        return LogComplex(self.log_mag, -self.phase)

    def __add__(self, other) -> "LogComplex":
        other = _coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.log_mag >= other.log_mag else (other, self)
        rel = cmath.rect(math.exp(small.log_mag - big.log_mag), small.phase - big.phase)
        s = 1.0 + rel
        if s == 0:
            return LogComplex.zero()
        return LogComplex(big.log_mag + math.log(abs(s)), big.phase + cmath.phase(s))

    __radd__ = __add__

    def __sub__(self, other) -> "LogComplex":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LogComplex":
        return _coerce(other) - self

    def scaled(self, log_factor: float) -> "LogComplex":
        """Multiply by the positive real number ``exp(log_factor)``."""
        if self.is_zero:
            return self
        return LogComplex(self.log_mag + log_factor, self.phase)

    def isclose(self, other, rtol: float = 1e-12) -> bool:
        """Relative closeness, insensitive to phase wrapping."""
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        d = cmath.rect(1.0, other.phase - self.phase) * math.exp(other.log_mag - self.log_mag)
        return abs(d - 1.0) <= rtol


def _coerce(x) -> LogComplex:
    if isinstance(x, LogComplex):
        return x
    return LogComplex.from_complex(complex(x))
