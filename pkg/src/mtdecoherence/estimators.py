"""
Closed-form decoherence timescales.

Two couplings (the charged microtubule ring against an ion, and a tubulin
dipole against an ion) each come in a narrow-packet and a broad-packet
form, plus the energy/time uncertainty converter used for the orch-OR
coherence time. Every formula is evaluated on
:class:`~mtdecoherence.quantities.Quantity` values and the result is
checked to have dimension time before it is returned.

Notation: ``R`` (interaction distance) plays the role of the closest
approach ``d`` and ``s`` (superposition separation) the role of the
displacement ``x1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .interactions import geometric_factor
from .quantities import (
    CONSTANTS,
    DIPOLE_MOMENT,
    ENERGY,
    LENGTH,
    MASS,
    RATE,
    TEMPERATURE,
    TIME,
    Constants,
    Quantity,
    qty,
    thermal_wavelength,
)
from .regimes import Regime, classify_regime

__all__ = [
    "Method",
    "ScenarioParams",
    "TauEstimate",
    "orch_or_energy",
    "orch_or_time",
    "tau_ion_narrow",
    "tau_ion_narrow_lambda",
    "tau_ion_broad",
    "tau_ion_broad_threshold",
    "tau_dipole_narrow",
    "tau_dipole_narrow_lambda",
    "tau_dipole_broad",
]


class Method(enum.Enum):
    ION_NARROW = "ION_NARROW"
    ION_NARROW_WIDTH = "ION_NARROW_WIDTH"
    ION_BROAD = "ION_BROAD"
    DIPOLE_NARROW = "DIPOLE_NARROW"
    DIPOLE_BROAD = "DIPOLE_BROAD"
    ORACLE_QUADRATURE = "ORACLE_QUADRATURE"


@dataclass(frozen=True)
class ScenarioParams:
    """
    System-environment parameters, all SI.

    R : interaction distance / closest approach (m)
    s : superposition separation (m)
    M : environmental ion mass (kg)
    T : temperature (K)
    N : elementary charges on the macromolecule ring
    p : tubulin dipole moment (C m)
    alpha : dipole angle to the ion's line of flight (rad)
    y1 : transverse displacement of the superposed branch (m)
    """

    R: float
    s: float
    M: float
    T: float
    N: int = 1
    p: float = 0.0
    alpha: float = 0.0
    y1: float = 0.0

    def __post_init__(self):
        for name in ("R", "s", "M", "T"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and positive, got {v!r}")
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N!r}")
        if not (math.isfinite(self.p) and self.p >= 0):
            raise DomainError(f"p must be finite and >= 0, got {self.p!r}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.y1)):
            raise DomainError("alpha and y1 must be finite")


@dataclass(frozen=True)
class TauEstimate:
    tau: Quantity
    method: Method
    regime: Optional[Regime] = None
    scenario_id: str = ""

    def __post_init__(self):
        if self.tau.to(TIME) <= 0:
            raise DomainError(f"decoherence time must be positive, got {self.tau}")

    @property
    def seconds(self) -> float:
        return self.tau.value

    @property
    def lambda_rate(self) -> Quantity:
        """Decay rate ``1 / tau``."""
        rate = 1.0 / self.tau
        rate.to(RATE)
        return rate


def _q(sc: ScenarioParams):
    return (
        qty(sc.R, LENGTH),
        qty(sc.s, LENGTH),
        qty(sc.M, MASS),
        qty(sc.T, TEMPERATURE),
    )


def _estimate(tau: Quantity, method, regime, scenario_id) -> TauEstimate:
    tau.to(TIME)
    return TauEstimate(tau=tau, method=method, regime=regime, scenario_id=scenario_id)


def _thermal_regime(sc, constants):
    lam = thermal_wavelength(sc.M, sc.T, constants)
    return lam, classify_regime(lam, sc.R)


def orch_or_energy(t, constants: Constants = CONSTANTS) -> Quantity:
    """Energy ``hbar / t`` matched to a coherence time ``t`` (s)."""
    t = t if isinstance(t, Quantity) else qty(t, TIME)
    if t.to(TIME) <= 0:
        raise DomainError("coherence time must be positive")
    return constants.hbar / t


def orch_or_time(E, constants: Constants = CONSTANTS) -> Quantity:
    """Inverse of :func:`orch_or_energy`: ``hbar / E``."""
    E = E if isinstance(E, Quantity) else qty(E, ENERGY)
    if E.to(ENERGY) <= 0:
        raise DomainError("energy must be positive")
    return constants.hbar / E


def tau_ion_narrow(sc: ScenarioParams, scenario_id: str = "", constants: Constants = CONSTANTS) -> TauEstimate:
    """``R**3 sqrt(M kB T) / (K N e**2 s)``; grows like sqrt(T)."""
    R, s, M, T = _q(sc)
    c = constants
    tau = R**3 * (M * c.kappa * T).sqrt() / (c.coulomb_k * sc.N * c.elementary_charge**2 * s)
    _, regime = _thermal_regime(sc, constants)
    return _estimate(tau, Method.ION_NARROW, regime, scenario_id)


def tau_ion_narrow_lambda(
    sc: ScenarioParams, lam, scenario_id: str = "", constants: Constants = CONSTANTS
) -> TauEstimate:
    """
    Gaussian-envelope decoherence time for an explicit wavepacket width.

    ``hbar d**3 / (x1 lam K q1 q2)`` with ``d = R``, ``x1 = s``,
    ``q1 = N e`` and ``q2 = e``. Substituting the thermal wavelength for
    ``lam`` recovers :func:`tau_ion_narrow`.
    """
    lam = lam if isinstance(lam, Quantity) else qty(lam, LENGTH)
    if lam.to(LENGTH) <= 0:
        raise DomainError("wavepacket width must be positive")
    d, x1, _, _ = _q(sc)
    c = constants
    q1 = sc.N * c.elementary_charge
    q2 = c.elementary_charge
    tau = c.hbar * d**3 / (x1 * lam * c.coulomb_k * q1 * q2)
    return _estimate(tau, Method.ION_NARROW_WIDTH, classify_regime(lam, d), scenario_id)


def tau_ion_broad_threshold(sc: ScenarioParams, lam, constants: Constants = CONSTANTS) -> Quantity:
    """
    Cancellation threshold for a broad packet of width ``lam``:
    ``hbar / (K q1 q2) * (lam**2 + d**2)**1.5 / (x1 lam + y1 d)``.

    An order-of-magnitude time only; the oracle is compared against it.
    """
    lam = lam if isinstance(lam, Quantity) else qty(lam, LENGTH)
    d, x1, _, _ = _q(sc)
    y1 = qty(sc.y1, LENGTH)
    c = constants
    q1 = sc.N * c.elementary_charge
    q2 = c.elementary_charge
    lever = x1 * lam + y1 * d
    if lever.value <= 0:
        raise DomainError("x1 lam + y1 d must be positive")
    return c.hbar / (c.coulomb_k * q1 * q2) * (lam**2 + d**2) ** 1.5 / lever


def tau_ion_broad(sc: ScenarioParams, scenario_id: str = "", constants: Constants = CONSTANTS) -> TauEstimate:
    """``hbar**3 / (K q1 q2 x1 M kB T)``; falls like 1/T."""
    _, x1, M, T = _q(sc)
    c = constants
    q1 = sc.N * c.elementary_charge
    q2 = c.elementary_charge
    tau = c.hbar**3 / (c.coulomb_k * q1 * q2 * x1 * M * c.kappa * T)
    _, regime = _thermal_regime(sc, constants)
    return _estimate(tau, Method.ION_BROAD, regime, scenario_id)


def _dipole_common(sc: ScenarioParams, constants: Constants):
    if sc.p <= 0:
        raise DomainError("dipole estimators need p > 0")
    omega = geometric_factor(sc.alpha)
    c = constants
    return 3.0 * c.coulomb_k * c.elementary_charge * qty(sc.p, DIPOLE_MOMENT) * qty(sc.s, LENGTH), omega


def tau_dipole_narrow(sc: ScenarioParams, scenario_id: str = "", constants: Constants = CONSTANTS) -> TauEstimate:
    """``d**4 sqrt(M kB T) sec(alpha) / (3 K q p s)``."""
    d, _, M, T = _q(sc)
    denom, omega = _dipole_common(sc, constants)
    tau = d**4 * (M * constants.kappa * T).sqrt() * omega / denom
    _, regime = _thermal_regime(sc, constants)
    return _estimate(tau, Method.DIPOLE_NARROW, regime, scenario_id)


def tau_dipole_narrow_lambda(
    sc: ScenarioParams, lam, scenario_id: str = "", constants: Constants = CONSTANTS
) -> TauEstimate:
    """Dipole analogue of :func:`tau_ion_narrow_lambda`: ``hbar d**4 sec(alpha) / (3 K q p s lam)``."""
    lam = lam if isinstance(lam, Quantity) else qty(lam, LENGTH)
    if lam.to(LENGTH) <= 0:
        raise DomainError("wavepacket width must be positive")
    d = qty(sc.R, LENGTH)
    denom, omega = _dipole_common(sc, constants)
    tau = constants.hbar * d**4 * omega / (denom * lam)
    return _estimate(tau, Method.DIPOLE_NARROW, classify_regime(lam, d), scenario_id)


def tau_dipole_broad(sc: ScenarioParams, scenario_id: str = "", constants: Constants = CONSTANTS) -> TauEstimate:
    """``hbar**4 (M kB T)**-1.5 sec(alpha) / (3 K q p s)``; falls like T**-1.5."""
    _, _, M, T = _q(sc)
    denom, omega = _dipole_common(sc, constants)
    tau = constants.hbar**4 * (M * constants.kappa * T) ** -1.5 * omega / denom
    _, regime = _thermal_regime(sc, constants)
    return _estimate(tau, Method.DIPOLE_BROAD, regime, scenario_id)


ION_ESTIMATORS = (tau_ion_narrow, tau_ion_broad)
DIPOLE_ESTIMATORS = (tau_dipole_narrow, tau_dipole_broad)
