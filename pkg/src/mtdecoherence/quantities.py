"""
Dimensioned scalars and the physical constants used throughout the package.

A :class:`Quantity` is a float tagged with a :class:`Dimension`, the vector
of exponents over five base dimensions (mass, length, time, temperature,
electric charge). Charge rather than current is a base so that Coulomb's
constant has the simple dimension ``M L^3 T^-2 Q^-2``.

Exponents are rationals restricted to denominators 1 or 2. Square roots of
momenta (``sqrt(M * kB * T)``) are legal; a cube root is almost certainly a
typo in a formula and raises :class:`DimensionError`.

>>> from mtdecoherence.quantities import qty, TIME
>>> (qty(2.0, TIME) * qty(3.0, TIME ** -1)).is_dimensionless
True
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .errors import DimensionError, DomainError, NonFiniteError

__all__ = [
    "Dimension",
    "Quantity",
    "Constants",
    "CONSTANTS",
    "qty",
    "sqrt",
    "thermal_wavelength",
    "DIMENSIONLESS",
    "MASS",
    "LENGTH",
    "TIME",
    "TEMPERATURE",
    "CHARGE",
    "ENERGY",
    "ACTION",
    "DIPOLE_MOMENT",
    "RATE",
]

_BASES = ("M", "L", "T", "Θ", "Q")


def _exponent(x) -> Fraction:
    f = Fraction(x).limit_denominator(1000)
    if f.denominator not in (1, 2):
        raise DimensionError(f"dimension exponent {f} has denominator > 2")
    return f


@dataclass(frozen=True)
class Dimension:
    """Exponents of mass, length, time, temperature and charge."""

    mass: Fraction = Fraction(0)
    length: Fraction = Fraction(0)
    time: Fraction = Fraction(0)
    temperature: Fraction = Fraction(0)
    charge: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("mass", "length", "time", "temperature", "charge"):
            object.__setattr__(self, name, _exponent(getattr(self, name)))

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return (self.mass, self.length, self.time, self.temperature, self.charge)

    @property
    def is_dimensionless(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: Dimension) -> Dimension:
        return Dimension(*(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Dimension) -> Dimension:
        return Dimension(*(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, n) -> Dimension:
        n = Fraction(n).limit_denominator(1000)
        return Dimension(*(a * n for a in self.exponents))

    def __str__(self) -> str:
        parts = []
        for sym, e in zip(_BASES, self.exponents):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        return " ".join(parts) or "1"


DIMENSIONLESS = Dimension()
MASS = Dimension(mass=1)
LENGTH = Dimension(length=1)
TIME = Dimension(time=1)
TEMPERATURE = Dimension(temperature=1)
CHARGE = Dimension(charge=1)
ENERGY = MASS * LENGTH**2 / TIME**2
ACTION = ENERGY * TIME
DIPOLE_MOMENT = CHARGE * LENGTH
RATE = TIME**-1


def _finite(value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteError(f"non-finite quantity value {value!r}")
    return value


@dataclass(frozen=True)
class Quantity:
    """A finite real value paired with a dimension."""

    value: float
    dim: Dimension = DIMENSIONLESS

    def __post_init__(self):
        object.__setattr__(self, "value", _finite(self.value))

    @property
    def is_dimensionless(self) -> bool:
        return self.dim.is_dimensionless

    def to(self, dim: Dimension) -> float:
        """Return the SI value after checking that the dimension is ``dim``."""
        if self.dim != dim:
            raise DimensionError(f"expected dimension {dim}, got {self.dim}")
        return self.value

    def _coerce(self, other) -> Quantity:
        if isinstance(other, Quantity):
            return other
        if isinstance(other, Real):
            return Quantity(float(other))
        return NotImplemented

    def _same_dim(self, other: Quantity, op: str):
        if self.dim != other.dim:
            raise DimensionError(f"cannot {op} {self.dim} and {other.dim}")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "add")
        return Quantity(self.value + other.value, self.dim)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "subtract")
        return Quantity(self.value - other.value, self.dim)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Quantity(-self.value, self.dim)

    def __abs__(self):
        return Quantity(abs(self.value), self.dim)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Quantity(self.value * other.value, self.dim * other.dim)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.value == 0.0:
            raise NonFiniteError("division by a zero quantity")
        return Quantity(self.value / other.value, self.dim / other.dim)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if isinstance(n, Quantity):
            if not n.is_dimensionless:
                raise DimensionError("exponent must be dimensionless")
            n = n.value
        dim = self.dim ** n
        if self.value < 0 and Fraction(n).limit_denominator(1000).denominator != 1:
            raise DomainError(f"fractional power of negative value {self.value}")
        if self.value == 0.0 and n < 0:
            raise NonFiniteError("negative power of a zero quantity")
        return Quantity(self.value ** float(n), dim)

    def sqrt(self) -> Quantity:
        if self.value < 0:
            raise DomainError(f"square root of negative value {self.value}")
        return Quantity(math.sqrt(self.value), self.dim ** Fraction(1, 2))

    def _compare(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "compare")
        return op(self.value, other.value)

    def __lt__(self, other):
        return self._compare(other, float.__lt__)

    def __le__(self, other):
        return self._compare(other, float.__le__)

    def __gt__(self, other):
        return self._compare(other, float.__gt__)

    def __ge__(self, other):
        return self._compare(other, float.__ge__)

    def __float__(self):
        return self.to(DIMENSIONLESS)

    def __str__(self):
        return f"{self.value:.6g} [{self.dim}]"


def qty(value: float, dim: Dimension = DIMENSIONLESS) -> Quantity:
    return Quantity(value, dim)


def sqrt(x: Quantity) -> Quantity:
    return x.sqrt()


@dataclass(frozen=True)
class Constants:
    """Physical constants, with hbar derived from the stored Planck constant."""

    h: Quantity = qty(6.6260755e-34, ACTION)
    kappa: Quantity = qty(1.38e-23, ENERGY / TEMPERATURE)
    coulomb_k: Quantity = qty(9e9, ENERGY * LENGTH / CHARGE**2)
    elementary_charge: Quantity = qty(1.6e-19, CHARGE)
    proton_mass: Quantity = qty(1.67e-27, MASS)

    @property
    def hbar(self) -> Quantity:
        return self.h / (2.0 * math.pi)

    def snapshot(self) -> dict[str, float]:
        """SI values keyed by name with a unit suffix."""
        return {
            "h_Js": self.h.value,
            "hbar_Js": self.hbar.value,
            "kappa_JperK": self.kappa.value,
            "coulomb_k_Nm2perC2": self.coulomb_k.value,
            "elementary_charge_C": self.elementary_charge.value,
            "proton_mass_kg": self.proton_mass.value,
        }


CONSTANTS = Constants()


def _as(x, dim: Dimension) -> Quantity:
    if isinstance(x, Quantity):
        x.to(dim)
        return x
    return Quantity(x, dim)


def thermal_wavelength(M, T, constants: Constants = CONSTANTS) -> Quantity:
    """
    Thermal wavepacket width ``hbar / sqrt(M kB T)`` of an environment particle.

    Parameters
    ----------
    M : Quantity or float
        Mass in kg.
    T : Quantity or float
        Temperature in K.

    Returns
    -------
    Quantity
        Length in m.
    """
    M = _as(M, MASS)
    T = _as(T, TEMPERATURE)
    if M.value <= 0 or T.value <= 0:
        raise DomainError("thermal_wavelength needs M > 0 and T > 0")
    return constants.hbar / (M * constants.kappa * T).sqrt()
