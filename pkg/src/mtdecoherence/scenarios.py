"""
Built-in parameter sets and the decoherence-time comparison report.

The report sets published reference times next to values computed here.
It never merges the two: each numeric cell is labelled ``[paper]`` or
``[computed]``, and a published row that no computed value reaches within
one order of magnitude is marked as not reproduced.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DecoherenceError
from .estimators import (
    ScenarioParams,
    TauEstimate,
    orch_or_energy,
    tau_dipole_broad,
    tau_dipole_narrow,
    tau_ion_broad,
    tau_ion_narrow,
    tau_ion_narrow_lambda,
)
from .quantities import CONSTANTS, Constants, thermal_wavelength

__all__ = [
    "Scenario",
    "ReferenceValue",
    "ReportRow",
    "ComparisonReport",
    "builtin_scenarios",
    "get_scenario",
    "reference_values",
    "estimates_for",
    "table1_report",
    "order_distance",
    "AGREES",
    "NOT_REPRODUCED",
    "REFERENCE_ONLY",
]

AGREES = "agrees within one order of magnitude"
NOT_REPRODUCED = "not reproduced by stated formulas"
REFERENCE_ONLY = "reference only: no formula given"

MICROTUBULE_DIAMETER = 24e-9  # m
BODY_TEMPERATURE = 309.0  # K
WATER_ION_MASS = 18 * CONSTANTS.proton_mass.value  # kg
TUBULIN_DIPOLE = 1e-27  # C m
RING_CHARGES = 1000
SUMMARY_TABLE = "published summary table"


@dataclass(frozen=True)
class Scenario:
    id: str
    params: Optional[ScenarioParams]
    description: str
    sources: tuple = ()
    interaction: str = "ion"  # "ion", "dipole" or "orch-or"
    coherence_time: Optional[float] = None  # s, orch-or entries only


@dataclass(frozen=True)
class ReferenceValue:
    """A published time. ``tau`` is one value or a ``(low, high)`` range in s."""

    label: str
    tau: object
    source: str

    def __post_init__(self):
        lo, hi = self.bounds
        if not 0 < lo <= hi:
            raise ValueError(f"reference time must be positive: {self.tau!r}")

    @property
    def bounds(self) -> tuple:
        if isinstance(self.tau, tuple):
            return float(self.tau[0]), float(self.tau[1])
        return float(self.tau), float(self.tau)


def builtin_scenarios() -> list:
    geometry = dict(
        R=MICROTUBULE_DIAMETER,
        s=MICROTUBULE_DIAMETER,
        M=WATER_ION_MASS,
        T=BODY_TEMPERATURE,
    )
    return [
        Scenario(
            id="tegmark-mt-ion",
            params=ScenarioParams(N=RING_CHARGES, y1=0.0, **geometry),
            description=(
                "Calcium-ion ring (N = 1000 elementary charges) at a kink, "
                "interacting with a water ion at one microtubule diameter"
            ),
            sources=("published parameter values", "published summary table: Soliton superposition"),
            interaction="ion",
        ),
        Scenario(
            id="hht-mt-dipole",
            params=ScenarioParams(p=TUBULIN_DIPOLE, alpha=0.0, **geometry),
            description="Tubulin dipole p = 1e-27 C m along the axis, same geometry",
            sources=("published dipole parameters",),
            interaction="dipole",
        ),
        Scenario(
            id="orch-or-500ms",
            params=None,
            description="Orch-OR coherence time of 500 ms from brain response times",
            sources=("published coherence time",),
            interaction="orch-or",
            coherence_time=0.5,
        ),
    ]


def get_scenario(scenario_id: str) -> Scenario:
    for sc in builtin_scenarios():
        if sc.id == scenario_id:
            return sc
    raise KeyError(scenario_id)


def reference_values() -> list:
    t1 = SUMMARY_TABLE
    return [
        ReferenceValue("Superposition of neural firing", 1e-20, t1),
        ReferenceValue("Soliton superposition", 1e-13, t1),
        ReferenceValue("Orch. OR superpositions", (1e-5, 1e-4), t1),
        ReferenceValue("Decoherence Model (MT - ion interaction)", 1e-9, t1),
        ReferenceValue("Decoherence Model (MT - dipole interaction)", 1e-16, t1),
        ReferenceValue("Dipole formula with tubulin p (text value)", 1e-10, "published text, dipole estimate"),
        ReferenceValue("water drop 10^{-4} cm (gravitational reduction)", 0.1, "published text"),
        ReferenceValue("water drop 10^{-3} cm (gravitational reduction)", 1e-6, "published text"),
        ReferenceValue("typical decoherence, radius 10^{-3} cm", 1e-23, "published text"),
        ReferenceValue("typical decoherence, radius 10^{-5} cm", 1e-9, "published text"),
        ReferenceValue("Orch. OR coherence time", 0.5, "published text"),
    ]


TABLE1_LABELS = tuple(r.label for r in reference_values() if r.source == SUMMARY_TABLE)


def estimates_for(scenario: Scenario, with_oracle: bool = False, constants: Constants = CONSTANTS) -> tuple:
    """
    All applicable closed forms (and optionally the oracle) for a scenario.

    Returns ``(estimates, notes)``; a failing estimator adds a note rather
    than raising.
    """
    estimates, notes = [], []
    sc = scenario.params
    if sc is None:
        return estimates, notes
    if scenario.interaction == "ion":
        lam = thermal_wavelength(sc.M, sc.T, constants)
        fns = [
            tau_ion_narrow,
            lambda p, scenario_id, constants: tau_ion_narrow_lambda(p, lam, scenario_id, constants),
            tau_ion_broad,
        ]
    else:
        fns = [tau_dipole_narrow, tau_dipole_broad]
    for fn in fns:
        try:
            estimates.append(fn(sc, scenario_id=scenario.id, constants=constants))
        except DecoherenceError as exc:
            notes.append(f"estimator failed: {exc}")
    if with_oracle:
        from .evolution import oracle_tau

        try:
            estimates.append(oracle_tau(sc, scenario.interaction, scenario_id=scenario.id, constants=constants))
        except DecoherenceError as exc:
            notes.append(f"oracle failed: {type(exc).__name__}: {exc}")
    return estimates, notes


def order_distance(value: float, ref: ReferenceValue) -> float:
    """``|log10|`` distance from ``value`` to the reference value or range (0 inside a range)."""
    lo, hi = ref.bounds
    if value < lo:
        return math.log10(lo / value)
    if value > hi:
        return math.log10(value / hi)
    return 0.0


@dataclass(frozen=True)
class ReportRow:
    label: str
    paper_value: Optional[ReferenceValue]
    computed: tuple = ()
    status: str = REFERENCE_ONLY
    notes: tuple = ()

    def to_tree(self) -> dict:
        pv = None
        if self.paper_value is not None:
            lo, hi = self.paper_value.bounds
            pv = lo if lo == hi else [lo, hi]
        return {
            "label": self.label,
            "paper_value_s": pv,
            "computed": [
                {
                    "method": e.method.value,
                    "tau_s": e.seconds,
                    "regime": e.regime.value if e.regime else None,
                    "scenario": e.scenario_id,
                    "provenance": "computed",
                    "orders_from_paper": (
                        round(order_distance(e.seconds, self.paper_value), 3) if self.paper_value else None
                    ),
                }
                for e in self.computed
            ],
            "provenance": {
                "paper_value": self.paper_value.source if self.paper_value else None,
                "computed": "mtdecoherence",
            },
            "status": self.status,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple
    constants_used: dict
    with_oracle: bool = False
    generated_at: Optional[str] = field(default=None, compare=False)

    def to_tree(self, include_timestamp: bool = False) -> dict:
        tree = {
            "rows": [r.to_tree() for r in self.rows],
            "constants_used": dict(self.constants_used),
            "with_oracle": self.with_oracle,
        }
        if include_timestamp:
            tree["generated_at"] = self.generated_at
        return tree

    def to_json(self, include_timestamp: bool = False) -> str:
        return json.dumps(self.to_tree(include_timestamp), indent=2) + "\n"

    def to_text(self, include_timestamp: bool = False) -> str:
        lines = ["# Decoherence time comparison", ""]
        if include_timestamp:
            lines += [f"generated: {self.generated_at}", ""]
        for row in self.rows:
            lines.append(f"## {row.label}")
            if row.paper_value is not None:
                lo, hi = row.paper_value.bounds
                val = f"{lo:.3g} s" if lo == hi else f"{lo:.3g} s - {hi:.3g} s"
                lines.append(f"- [paper] {val} ({row.paper_value.source})")
            for e in row.computed:
                regime = e.regime.value if e.regime else "-"
                lines.append(f"- [computed] {e.method.value} {e.scenario_id}: {e.seconds:.4e} s (regime {regime})")
            for note in row.notes:
                lines.append(f"- note: {note}")
            lines.append(f"- status: {row.status}")
            lines.append("")
        lines.append("## Constants used")
        for k, v in self.constants_used.items():
            lines.append(f"- {k} = {v!r}")
        return "\n".join(lines) + "\n"


def _status(ref, estimates):
    if not estimates:
        return REFERENCE_ONLY
    if any(order_distance(e.seconds, ref) <= 1.0 for e in estimates):
        return AGREES
    return NOT_REPRODUCED


def table1_report(with_oracle: bool = False, constants: Constants = CONSTANTS) -> ComparisonReport:
    """Pair every published reference time with the estimates that address it."""
    refs = {r.label: r for r in reference_values()}
    scen = {s.id: s for s in builtin_scenarios()}
    ion, ion_notes = estimates_for(scen["tegmark-mt-ion"], with_oracle, constants)
    dip, dip_notes = estimates_for(scen["hht-mt-dipole"], with_oracle, constants)
    orch = scen["orch-or-500ms"]
    energy = orch_or_energy(orch.coherence_time, constants)
    orch_note = (
        f"[computed] orch-or-500ms: t = {orch.coherence_time} s <-> E = hbar/t = {energy.value:.4e} J"
    )

    def row(label, computed=(), notes=()):
        ref = refs[label]
        return ReportRow(label, ref, tuple(computed), _status(ref, computed), tuple(notes))

    rows = [
        row("Superposition of neural firing"),
        row("Soliton superposition", ion, ion_notes),
        ReportRow(
            "Orch. OR superpositions",
            refs["Orch. OR superpositions"],
            (),
            REFERENCE_ONLY,
            (orch_note,),
        ),
        row("Decoherence Model (MT - ion interaction)", ion, ion_notes),
        row("Decoherence Model (MT - dipole interaction)", dip, dip_notes),
        row("Dipole formula with tubulin p (text value)", [e for e in dip if e.method.value == "DIPOLE_NARROW"]),
        ReportRow("Orch. OR coherence time", refs["Orch. OR coherence time"], (), REFERENCE_ONLY, (orch_note,)),
    ]
    for label in (
        "water drop 10^{-4} cm (gravitational reduction)",
        "water drop 10^{-3} cm (gravitational reduction)",
        "typical decoherence, radius 10^{-3} cm",
        "typical decoherence, radius 10^{-5} cm",
    ):
        rows.append(row(label))
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return ComparisonReport(
        rows=tuple(rows),
        constants_used=constants.snapshot(),
        with_oracle=with_oracle,
        generated_at=stamp,
    )
