"""
Thermal-wavepacket regimes and temperature sweeps.

The closed-form decoherence times come in two flavours. The narrow-packet
forms assume the ion's thermal wavelength is much smaller than its
closest approach ``d``; the broad-packet forms assume the opposite. The
ratio ``lambda / d`` decides which one to trust, with an explicit
intermediate band where neither is reliable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Literal, Optional

import numpy as np

from .errors import DecoherenceError, DomainError
from .quantities import CONSTANTS, LENGTH, MASS, Constants, Quantity, thermal_wavelength

__all__ = [
    "Regime",
    "NARROW_MAX",
    "BROAD_MIN",
    "classify_regime",
    "crossover_temperature",
    "SweepRow",
    "temperature_sweep",
]

NARROW_MAX = 0.1
BROAD_MIN = 10.0


class Regime(enum.Enum):
    NARROW = "NARROW"
    INTERMEDIATE = "INTERMEDIATE"
    BROAD = "BROAD"


def _si(x, dim) -> float:
    return x.to(dim) if isinstance(x, Quantity) else float(x)


def classify_regime(lam, d) -> Regime:
    """Label the ratio ``lam / d``: NARROW <= 0.1 < INTERMEDIATE < 10 <= BROAD."""
    lam = _si(lam, LENGTH)
    d = _si(d, LENGTH)
    if lam <= 0 or d <= 0:
        raise DomainError("classify_regime needs positive lengths")
    ratio = lam / d
    if ratio <= NARROW_MAX:
        return Regime.NARROW
    if ratio >= BROAD_MIN:
        return Regime.BROAD
    return Regime.INTERMEDIATE


def crossover_temperature(M, d, constants: Constants = CONSTANTS) -> Quantity:
    """Temperature at which the thermal wavelength equals ``d``: ``hbar**2 / (M kB d**2)``."""
    M = M if isinstance(M, Quantity) else Quantity(M, MASS)
    d = d if isinstance(d, Quantity) else Quantity(d, LENGTH)
    if M.to(MASS) <= 0 or d.to(LENGTH) <= 0:
        raise DomainError("crossover_temperature needs M > 0 and d > 0")
    return constants.hbar**2 / (M * constants.kappa * d**2)


@dataclass(frozen=True)
class SweepRow:
    T: float
    lam: float
    ratio: float
    regime: Regime
    tau_narrow: Optional[float]
    tau_broad: Optional[float]
    tau_oracle: Optional[float] = None
    error: Optional[str] = None


def _sweep_row(sc, interaction, T, with_oracle, constants):
    from . import estimators
    from .evolution import oracle_tau

    sc_T = replace(sc, T=T)
    lam = thermal_wavelength(sc.M, T, constants).value
    ratio = lam / sc.R
    regime = classify_regime(lam, sc.R)
    errors = []
    if interaction == "ion":
        narrow_fn, broad_fn = estimators.tau_ion_narrow, estimators.tau_ion_broad
    else:
        narrow_fn, broad_fn = estimators.tau_dipole_narrow, estimators.tau_dipole_broad
    taus = []
    for fn in (narrow_fn, broad_fn):
        try:
            taus.append(fn(sc_T, constants=constants).seconds)
        except DecoherenceError as exc:
            taus.append(None)
            errors.append(f"{fn.__name__}: {exc}")
    tau_oracle = None
    if with_oracle:
        try:
            tau_oracle = oracle_tau(sc_T, interaction, constants=constants).seconds
        except DecoherenceError as exc:
            errors.append(f"oracle: {exc}")
    return SweepRow(
        T=T,
        lam=lam,
        ratio=ratio,
        regime=regime,
        tau_narrow=taus[0],
        tau_broad=taus[1],
        tau_oracle=tau_oracle,
        error="; ".join(errors) or None,
    )


def temperature_sweep(
    sc,
    interaction: Literal["ion", "dipole"],
    T_min: float,
    T_max: float,
    points: int,
    log_spacing: bool = True,
    with_oracle: bool = False,
    constants: Constants = CONSTANTS,
) -> list[SweepRow]:
    """
    Evaluate narrow and broad closed forms (and optionally the quadrature
    oracle) on a temperature grid.

    Rows come back in increasing ``T``. A failing formula or oracle leaves
    ``None`` in its cell and a message in ``row.error``; the sweep itself
    keeps going.
    """
    if not 0 < T_min < T_max:
        raise DomainError("need 0 < T_min < T_max")
    if points < 2:
        raise DomainError("a sweep needs at least 2 points")
    if interaction not in ("ion", "dipole"):
        raise ValueError(f"unknown interaction {interaction!r}")
    if log_spacing:
        grid = np.geomspace(T_min, T_max, points)
    else:
        grid = np.linspace(T_min, T_max, points)
    return [_sweep_row(sc, interaction, float(T), with_oracle, constants) for T in grid]


def regime_rank(regime: Regime) -> int:
    """Order BROAD < INTERMEDIATE < NARROW, i.e. increasing temperature."""
    return {Regime.BROAD: 0, Regime.INTERMEDIATE: 1, Regime.NARROW: 2}[regime]

