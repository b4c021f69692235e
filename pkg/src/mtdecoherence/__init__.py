"""Decoherence-time estimators for microtubule quantum states, with a quadrature oracle."""

from .errors import (
    ConvergenceError,
    DecoherenceError,
    DimensionError,
    DomainError,
    NoCrossingError,
    NonFiniteError,
    SingularityError,
)
from .estimators import (
    Method,
    ScenarioParams,
    TauEstimate,
    orch_or_energy,
    orch_or_time,
    tau_dipole_broad,
    tau_dipole_narrow,
    tau_dipole_narrow_lambda,
    tau_ion_broad,
    tau_ion_broad_threshold,
    tau_ion_narrow,
    tau_ion_narrow_lambda,
)
from .evolution import (
    DecayCurve,
    EnsembleSpec,
    QuadratureConfig,
    coherence_factor,
    decay_curve,
    default_time_grid,
    extract_tau,
    oracle_tau,
    scenario_delta_v,
)
from .interactions import (
    CoulombSystem,
    DipoleSystem,
    KinkProfile,
    coulomb_delta_v,
    dipole_delta_v,
    kink_moment,
)
from .quantities import CONSTANTS, Constants, Dimension, Quantity, qty, thermal_wavelength
from .regimes import Regime, SweepRow, classify_regime, crossover_temperature, temperature_sweep
from .scenarios import builtin_scenarios, reference_values, table1_report

__version__ = "0.1.0"
