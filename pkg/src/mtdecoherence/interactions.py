"""
System-environment interaction potentials.

The macromolecule (particle 1) sits at the origin in one branch of the
superposition and at ``(x1, y1, 0)`` in the other. The environmental ion
(particle 2) travels along the line ``(x2, d, 0)``. The functions here
return the potential-energy difference between the two branches as a
function of ``x2``; that difference, times ``t / hbar``, is the relative
phase accumulated by the off-diagonal density-matrix element.

All functions accept plain floats or numpy arrays (SI units) for ``x2``.
Systems whose fields are :class:`~mtdecoherence.quantities.Quantity`
objects are evaluated with full dimension tracking instead, which is how
the tests confirm every potential has dimension energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, SingularityError
from .quantities import CONSTANTS, Quantity

__all__ = [
    "CoulombSystem",
    "DipoleSystem",
    "KinkProfile",
    "kink_moment",
    "coulomb_delta_v",
    "dipole_delta_v",
    "geometric_factor",
]

# |cos(alpha)| below this makes sec(alpha) blow up.
COS_GUARD = 1e-9


def _val(x):
    return x.value if isinstance(x, Quantity) else x


def _coulomb_k(*args):
    if any(isinstance(a, Quantity) for a in args):
        return CONSTANTS.coulomb_k
    return CONSTANTS.coulomb_k.value


@dataclass(frozen=True)
class CoulombSystem:
    """Charged ring (``q1 = N e``) and one environmental ion of charge ``q2``."""

    q1: float
    q2: float
    d: float
    x1: float
    y1: float = 0.0
    N: int = 1

    def __post_init__(self):
        if _val(self.d) <= 0:
            raise DomainError("closest approach d must be positive")
        if self.N < 1:
            raise DomainError("N must be at least 1")


@dataclass(frozen=True)
class DipoleSystem:
    """Tubulin dipole ``p`` at angle ``alpha`` to the ion's line of flight."""

    p: float
    alpha: float
    q: float
    d: float
    s: float

    def __post_init__(self):
        if _val(self.p) < 0 or _val(self.s) < 0:
            raise DomainError("p and s must be non-negative")
        if _val(self.d) <= 0:
            raise DomainError("closest approach d must be positive")

    @property
    def px(self):
        return self.p * math.cos(self.alpha)

    @property
    def py(self):
        return self.p * math.sin(self.alpha)

    @property
    def omega_dipole(self) -> float:
        return geometric_factor(self.alpha)


def geometric_factor(alpha: float) -> float:
    """``sec(alpha)``; raises near ``alpha = pi/2`` where it diverges."""
    c = math.cos(alpha)
    if abs(c) < COS_GUARD:
        raise SingularityError(f"geometric factor sec({alpha}) diverges")
    return 1.0 / c


@dataclass(frozen=True)
class KinkProfile:
    p0: float
    z0: float = 0.0


def kink_moment(profile: KinkProfile, z):
    """Dipole moment along the axis: ``+p0`` past the kink, ``-p0`` before it.

    The transition is taken as a sharp step with value 0 exactly at ``z0``.
    """
    return profile.p0 * np.sign(np.asarray(z, dtype=float) - profile.z0)


def coulomb_delta_v(sys: CoulombSystem, x2, mode: Literal["exact", "expanded"] = "expanded"):
    """
    Potential difference ``V(R') - V(R)`` between the two branches.

    ``expanded`` keeps the first-order Taylor term with the full
    ``(x2**2 + d**2)**1.5`` denominator. ``exact`` evaluates both Coulomb
    terms directly (``z1 = 0``).
    """
    k = _coulomb_k(sys.q1, sys.d, x2)
    if mode == "expanded":
        r2_cubed = (x2 * x2 + sys.d * sys.d) ** 1.5
        return k * sys.q1 * sys.q2 * (sys.x1 * x2 + sys.y1 * sys.d) / r2_cubed
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    dx = x2 - sys.x1
    dy = sys.d - sys.y1
    sep_sq = dx * dx + dy * dy
    if np.any(np.asarray(_val(sep_sq)) == 0.0):
        raise SingularityError("ion coincides with the displaced macromolecule")
    r2 = (x2 * x2 + sys.d * sys.d) ** 0.5
    return k * sys.q1 * sys.q2 * (1.0 / sep_sq**0.5 - 1.0 / r2)


def dipole_delta_v(sys: DipoleSystem, x2):
    """Phase-generating dipole term ``3 K q s (px x2 + py d) / (x2**2 + d**2)**2``."""
    k = _coulomb_k(sys.p, sys.d, x2)
    r2_sq = x2 * x2 + sys.d * sys.d
    return 3.0 * k * sys.q * sys.s * (sys.px * x2 + sys.py * sys.d) / (r2_sq * r2_sq)
