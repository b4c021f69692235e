"""
Brute-force coherence oracle.

With the Hamiltonian reduced to the interaction potential, the off-diagonal
element of the macromolecule's reduced density matrix picks up the phase
``-dV(x2) t / hbar`` for each ion position ``x2``. Tracing over a Gaussian
ion wavepacket ``w(x2) = exp(-(x2 / (2 lam))**2)`` gives the normalised
coherence factor

    D(t) = |int w(x2) exp(-i dV(x2) t / hbar) dx2| / int w(x2) dx2

which this module evaluates by phase-resolved adaptive quadrature, with no
small-displacement or narrow-packet approximation in ``dV``. The closed
forms in :mod:`mtdecoherence.estimators` are checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, NoCrossingError
from .estimators import (
    Method,
    ScenarioParams,
    TauEstimate,
    tau_dipole_narrow_lambda,
    tau_ion_broad_threshold,
    tau_ion_narrow_lambda,
)
from .interactions import CoulombSystem, DipoleSystem, coulomb_delta_v, dipole_delta_v, geometric_factor
from .quantities import CONSTANTS, TIME, Constants, qty, thermal_wavelength
from .regimes import Regime, classify_regime

__all__ = [
    "EnsembleSpec",
    "QuadratureConfig",
    "DecayCurve",
    "coherence_factor",
    "decay_curve",
    "default_time_grid",
    "extract_tau",
    "scenario_delta_v",
    "oracle_tau",
]

Interaction = Literal["ion", "dipole"]

# Slack allowed above 1 for D(t) from rounding.
D_SLACK = 1e-9


@dataclass(frozen=True)
class EnsembleSpec:
    """Gaussian ion ensemble: weight exp(-(x/(2 lam))**2), std dev lam*sqrt(2)."""

    lam: float
    truncation: float = 8.0

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("ensemble width must be positive")
        if self.truncation < 4:
            raise DomainError("truncation must be at least 4 standard deviations")

    @property
    def sigma(self) -> float:
        return self.lam * math.sqrt(2.0)

    @property
    def half_width(self) -> float:
        return self.truncation * self.sigma

    def weight(self, x):
        return np.exp(-((x / (2.0 * self.lam)) ** 2))

    def norm(self) -> float:
        """Exact integral of the weight over the truncated domain."""
        return 2.0 * math.sqrt(math.pi) * self.lam * math.erf(self.half_width / (2.0 * self.lam))


@dataclass(frozen=True)
class QuadratureConfig:
    max_phase_step: float = math.pi / 8
    max_subdivisions: int = 400_000
    rel_tol: float = 1e-6
    order: int = 12
    initial_panels: int = 64

    def __post_init__(self):
        if not 0 < self.max_phase_step <= math.pi / 2:
            raise DomainError("max_phase_step must lie in (0, pi/2]")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.order < 2 or self.initial_panels < 1:
            raise DomainError("order >= 2 and initial_panels >= 1 required")


@dataclass(frozen=True)
class DecayCurve:
    scenario_id: str
    times: tuple
    values: tuple
    interaction: str = ""
    regime: Optional[Regime] = None

    def __post_init__(self):
        if len(self.times) != len(self.values) or not self.times:
            raise DomainError("times and values must be non-empty and equally long")
        t = np.asarray(self.times)
        if np.any(np.diff(t) <= 0):
            raise DomainError("times must be strictly increasing")
        if t[0] < 0:
            raise DomainError("times must be non-negative")
        v = np.asarray(self.values)
        if np.any(v < 0) or np.any(v > 1 + D_SLACK):
            raise DomainError("coherence values must lie in [0, 1]")


def _nodes(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _refine_by_phase(phase, a, b, cfg, nodes):
    """Split panels until the phase varies by at most ``max_phase_step`` in each."""
    probe = np.concatenate(([-1.0], nodes, [1.0]))
    while True:
        mid = 0.5 * (a + b)
        hw = 0.5 * (b - a)
        ph = phase(mid[:, None] + hw[:, None] * probe[None, :])
        var = np.ptp(ph, axis=1)
        pieces = np.ceil(var / cfg.max_phase_step).astype(np.int64)
        pieces = np.maximum(pieces, 1)
        if np.all(pieces == 1):
            return a, b
        total = int(pieces.sum())
        if total > cfg.max_subdivisions:
            i = int(np.argmax(var))
            raise ConvergenceError(
                f"phase resolution needs {total} subintervals (limit {cfg.max_subdivisions})",
                worst_interval=(float(a[i]), float(b[i]), float(var[i])),
            )
        # split panel i into pieces[i] equal parts
        idx = np.repeat(np.arange(a.size), pieces)
        first = np.cumsum(pieces) - pieces
        k = np.arange(total) - np.repeat(first, pieces)
        width = (b - a)[idx] / pieces[idx]
        right = b
        a, b = a[idx] + k * width, a[idx] + (k + 1) * width
        b[np.cumsum(pieces) - 1] = right  # no rounding gap at original edges
        a[1:] = b[:-1]


def _gl(f, a, b, nodes, weights):
    mid = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    vals = f(mid[:, None] + hw[:, None] * nodes[None, :])
    return hw * (vals @ weights)


def _integrate(f, a, b, total_tol, total_len, cfg, nodes, weights):
    """Adaptive composite Gauss-Legendre with panel bisection for error control."""
    result = 0.0 + 0.0j
    while a.size:
        mid = 0.5 * (a + b)
        coarse = _gl(f, a, b, nodes, weights)
        fine = _gl(f, a, mid, nodes, weights) + _gl(f, mid, b, nodes, weights)
        err = np.abs(fine - coarse)
        tol = total_tol * (b - a) / total_len
        ok = err <= tol
        result += fine[ok].sum()
        if ok.all():
            break
        bad = ~ok
        a_bad, m_bad, b_bad = a[bad], mid[bad], b[bad]
        if 2 * a_bad.size > cfg.max_subdivisions:
            i = int(np.argmax(err[bad] / tol[bad]))
            raise ConvergenceError(
                f"quadrature did not reach rel_tol={cfg.rel_tol} within "
                f"{cfg.max_subdivisions} subintervals",
                worst_interval=(float(a_bad[i]), float(b_bad[i]), float(err[bad][i])),
            )
        if np.any(b_bad - a_bad <= 1e-14 * total_len):
            i = int(np.argmax(err[bad]))
            raise ConvergenceError(
                "subinterval width underflow in quadrature",
                worst_interval=(float(a_bad[i]), float(b_bad[i]), float(err[bad][i])),
            )
        a = np.concatenate((a_bad, m_bad))
        b = np.concatenate((m_bad, b_bad))
    return result


def coherence_factor(
    delta_v: Callable,
    ens: EnsembleSpec,
    t: float,
    cfg: QuadratureConfig = QuadratureConfig(),
    hbar: float = CONSTANTS.hbar.value,
) -> float:
    """
    Normalised modulus of the ensemble-averaged phase factor at time ``t``.

    Parameters
    ----------
    delta_v : callable
        Maps an array of ion positions ``x2`` (m) to the potential-energy
        difference between the two branches (J).
    ens : EnsembleSpec
        Ion wavepacket.
    t : float
        Time in s, ``t >= 0``.

    Returns
    -------
    float
        ``D(t)`` in ``[0, 1]``; exactly 1 at ``t = 0`` up to ``rel_tol``.

    Raises
    ------
    ConvergenceError
        If ``max_subdivisions`` panels do not suffice; the exception's
        ``worst_interval`` names the offending subinterval.
    """
    if not t >= 0:
        raise DomainError("t must be non-negative")
    nodes, weights = _nodes(cfg.order)
    scale = t / hbar

    def phase(x):
        return delta_v(x) * scale

    def integrand(x):
        return ens.weight(x) * np.exp(-1j * phase(x))

    L = ens.half_width
    edges = np.linspace(-L, L, cfg.initial_panels + 1)
    a, b = edges[:-1], edges[1:]
    a, b = _refine_by_phase(phase, a, b, cfg, nodes)
    norm = ens.norm()
    integral = _integrate(integrand, a, b, cfg.rel_tol * norm, 2.0 * L, cfg, nodes, weights)
    return float(min(abs(integral) / norm, 1.0 + D_SLACK))


def default_time_grid(tau_est: float, points: int = 60, span: tuple = (0.01, 100.0)) -> list:
    """``t = 0`` followed by ``points - 1`` geometric samples over ``span * tau_est``."""
    if not tau_est > 0 or points < 2:
        raise DomainError("need tau_est > 0 and at least 2 points")
    return [0.0] + list(np.geomspace(span[0] * tau_est, span[1] * tau_est, points - 1))


def decay_curve(
    delta_v: Callable,
    ens: EnsembleSpec,
    t_grid: Sequence[float],
    cfg: QuadratureConfig = QuadratureConfig(),
    *,
    scenario_id: str = "",
    interaction: str = "",
    regime: Optional[Regime] = None,
    hbar: float = CONSTANTS.hbar.value,
    stop_below: Optional[float] = None,
) -> DecayCurve:
    """
    Sample :func:`coherence_factor` on ``t_grid`` (non-empty, increasing,
    starting at 0).

    With ``stop_below`` set, sampling ends at the first value below it and
    the returned curve is truncated there. Late samples are the expensive
    ones, since the number of phase-resolved panels grows with ``t``.
    """
    t_grid = [float(t) for t in t_grid]
    if not t_grid or t_grid[0] != 0.0:
        raise DomainError("time grid must be non-empty and start at 0")
    values = []
    for t in t_grid:
        values.append(coherence_factor(delta_v, ens, t, cfg, hbar))
        if stop_below is not None and values[-1] < stop_below:
            break
    return DecayCurve(
        scenario_id=scenario_id,
        times=tuple(t_grid[: len(values)]),
        values=tuple(values),
        interaction=interaction,
        regime=regime,
    )


def extract_tau(curve: DecayCurve, threshold: float = math.exp(-1)) -> TauEstimate:
    """
    First time the curve drops below ``threshold``.

    Between the bracketing samples ``log(-log D)`` is interpolated linearly
    in ``log t``, which is exact for any stretched-exponential envelope
    ``exp(-(t/tau)**k)`` (both Gaussian and simple exponential decay). When
    the left bracket is ``t = 0`` or ``D = 1`` it falls back to ``log D``
    linear in ``t``.
    """
    if len(curve.times) < 2:
        raise DomainError("need at least two samples")
    if not 0 < threshold < 1:
        raise DomainError("threshold must lie in (0, 1)")
    t = np.asarray(curve.times, dtype=float)
    d = np.asarray(curve.values, dtype=float)
    below = np.nonzero(d < threshold)[0]
    if below.size == 0 or below[0] == 0:
        raise NoCrossingError(
            f"curve never crosses {threshold:.4g} (min D = {d.min():.4g}); widen the time grid"
        )
    j = int(below[0])
    t0, t1, d0, d1 = t[j - 1], t[j], d[j - 1], d[j]
    target = -math.log(threshold)
    tiny = np.finfo(float).tiny
    if t0 > 0 and d0 < 1.0 and d1 > 0:
        y0, y1 = math.log(-math.log(d0)), math.log(-math.log(max(d1, tiny)))
        frac = (math.log(target) - y0) / (y1 - y0)
        tau = math.exp(math.log(t0) + frac * (math.log(t1) - math.log(t0)))
    else:
        l0, l1 = math.log(max(d0, tiny)), math.log(max(d1, tiny))
        frac = (-target - l0) / (l1 - l0)
        tau = t0 + frac * (t1 - t0)
    return TauEstimate(
        tau=qty(tau, TIME),
        method=Method.ORACLE_QUADRATURE,
        regime=curve.regime,
        scenario_id=curve.scenario_id,
    )


def scenario_delta_v(
    sc: ScenarioParams,
    interaction: Interaction,
    constants: Constants = CONSTANTS,
    mode: Literal["exact", "expanded"] = "expanded",
) -> Callable:
    """Potential difference ``x2 -> dV`` for a scenario, with the ion carrying one elementary charge."""
    e = constants.elementary_charge.value
    if interaction == "ion":
        system = CoulombSystem(q1=sc.N * e, q2=e, d=sc.R, x1=sc.s, y1=sc.y1, N=sc.N)
        return lambda x2: coulomb_delta_v(system, x2, mode)
    if interaction == "dipole":
        geometric_factor(sc.alpha)
        system = DipoleSystem(p=sc.p, alpha=sc.alpha, q=e, d=sc.R, s=sc.s)
        return lambda x2: dipole_delta_v(system, x2)
    raise ValueError(f"unknown interaction {interaction!r}")


def _tau_guess(sc, interaction, lam, constants):
    d = sc.R
    if interaction == "ion":
        if lam <= d:
            return tau_ion_narrow_lambda(sc, lam, constants=constants).seconds
        return tau_ion_broad_threshold(sc, lam, constants).value
    # narrow form with d replaced by lam once the packet is broader than d
    width = lam if lam <= d else d**4 / lam**3
    return tau_dipole_narrow_lambda(sc, width, constants=constants).seconds


def oracle_tau(
    sc: ScenarioParams,
    interaction: Interaction,
    lam: Optional[float] = None,
    cfg: QuadratureConfig = QuadratureConfig(),
    *,
    scenario_id: str = "",
    points: int = 60,
    constants: Constants = CONSTANTS,
    return_curve: bool = False,
):
    """
    Decoherence time from the quadrature oracle.

    ``lam`` defaults to the thermal wavelength at the scenario temperature.
    The time grid is :func:`default_time_grid` around the matching closed
    form; if the curve does not cross ``1/e`` the grid is shifted one
    decade at a time (at most three times) toward later times.
    """
    if lam is None:
        lam = thermal_wavelength(sc.M, sc.T, constants).value
    ens = EnsembleSpec(lam)
    dv = scenario_delta_v(sc, interaction, constants)
    hbar = constants.hbar.value
    regime = classify_regime(lam, sc.R)
    guess = _tau_guess(sc, interaction, lam, constants)
    for _ in range(4):
        curve = decay_curve(
            dv,
            ens,
            default_time_grid(guess, points),
            cfg,
            scenario_id=scenario_id,
            interaction=interaction,
            regime=regime,
            hbar=hbar,
            stop_below=None if return_curve else math.exp(-1),
        )
        try:
            est = extract_tau(curve)
        except NoCrossingError:
            guess *= 10.0
            continue
        return (est, curve) if return_curve else est
    raise NoCrossingError(f"oracle curve for {scenario_id or interaction} never decayed to 1/e")
