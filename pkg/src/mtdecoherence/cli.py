"""
Command-line interface.

    mtdecoherence tau      --scenario ID|FILE [--with-oracle] [--format text|json]
    mtdecoherence evolve   --scenario ID|FILE [--interaction ion|dipole]
                           [--lambda-ratio R] [--points N] [-o out.csv]
    mtdecoherence sweep    --scenario ID|FILE --param temperature --from T0 --to T1
                           --points N [--log] [--with-oracle] [-o out.csv]
    mtdecoherence report   [--with-oracle] [--format text|json] [--timestamp]
    mtdecoherence validate

Exit status: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .errors import DecoherenceError
from .estimators import (
    ScenarioParams,
    tau_dipole_broad,
    tau_dipole_narrow,
    tau_ion_narrow,
    tau_ion_narrow_lambda,
)
from .evolution import DecayCurve, oracle_tau
from .quantities import TIME, thermal_wavelength
from .regimes import crossover_temperature, temperature_sweep
from .scenarios import Scenario, builtin_scenarios, estimates_for, get_scenario, table1_report

COMMANDS = ("tau", "evolve", "sweep", "report", "validate")

# key -> (field name, type, required)
SCENARIO_KEYS = {
    "R_m": ("R", float, True),
    "s_m": ("s", float, True),
    "M_kg": ("M", float, True),
    "T_K": ("T", float, True),
    "N": ("N", int, False),
    "p_Cm": ("p", float, False),
    "alpha_rad": ("alpha", float, False),
    "y1_m": ("y1", float, False),
}


class UsageError(Exception):
    pass


class ScenarioFileError(UsageError):
    pass


@dataclass
class CliInvocation:
    command: str
    scenario: Optional[Scenario] = None
    flags: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    format: str = "text"


def format_sci(x: float) -> str:
    """Ten-digit scientific notation with a bare exponent: ``1.000000000e0``."""
    mantissa, exp = f"{x:.9e}".split("e")
    return f"{mantissa}e{int(exp)}"


def parse_scenario_file(text: str) -> ScenarioParams:
    """Parse ``key = value`` lines; ``#`` starts a comment; SI values."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioFileError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCENARIO_KEYS:
            raise ScenarioFileError(f"line {lineno}: unknown key {key!r}")
        name, typ, _ = SCENARIO_KEYS[key]
        try:
            values[name] = typ(value)
        except ValueError:
            raise ScenarioFileError(f"line {lineno}: malformed number {value!r} for {key}") from None
    missing = [k for k, (name, _, req) in SCENARIO_KEYS.items() if req and name not in values]
    if missing:
        raise ScenarioFileError("missing required keys: " + ", ".join(missing))
    try:
        return ScenarioParams(**values)
    except DecoherenceError as exc:
        raise ScenarioFileError(str(exc)) from None


def format_scenario_file(params: ScenarioParams) -> str:
    lines = []
    for key, (name, typ, _) in SCENARIO_KEYS.items():
        v = getattr(params, name)
        lines.append(f"{key} = {v!r}" if typ is float else f"{key} = {v}")
    return "\n".join(lines) + "\n"


def _load_scenario(ref: str) -> Scenario:
    try:
        return get_scenario(ref)
    except KeyError:
        pass
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read scenario {ref!r}: {exc.strerror or exc}") from None
    params = parse_scenario_file(text)
    interaction = "dipole" if params.p > 0 else "ion"
    return Scenario(id=path.stem, params=params, description=f"from {ref}", interaction=interaction)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtdecoherence", description="Microtubule decoherence-time estimators")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_arg(p, required=True):
        p.add_argument("--scenario", required=required, help="built-in id or path to a key = value file")

    def out_args(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("-o", "--output", help="output path (default: stdout)")

    p = sub.add_parser("tau", help="closed-form decoherence times for a scenario")
    scenario_arg(p)
    p.add_argument("--with-oracle", action="store_true")
    out_args(p, ("text", "json"), "text")

    p = sub.add_parser("evolve", help="coherence decay curve D(t) as CSV")
    scenario_arg(p)
    p.add_argument("--interaction", choices=("ion", "dipole"))
    p.add_argument("--lambda-ratio", type=float, help="wavepacket width as a multiple of R (default: thermal)")
    p.add_argument("--points", type=int, default=60)
    out_args(p, ("csv",), "csv")

    p = sub.add_parser("sweep", help="temperature sweep as CSV")
    scenario_arg(p)
    p.add_argument("--param", choices=("temperature",), default="temperature")
    p.add_argument("--from", dest="t_from", type=float, required=True)
    p.add_argument("--to", dest="t_to", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--log", action="store_true", help="geometric spacing")
    p.add_argument("--interaction", choices=("ion", "dipole"))
    p.add_argument("--with-oracle", action="store_true")
    out_args(p, ("csv",), "csv")

    p = sub.add_parser("report", help="comparison with published decoherence times")
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--timestamp", action="store_true", help="include generation time (breaks byte-identity)")
    out_args(p, ("text", "json"), "text")

    p = sub.add_parser("validate", help="run the identity, dimension and oracle checks")
    out_args(p, ("text",), "text")
    return parser


def parse_invocation(argv) -> CliInvocation:
    """Validate ``argv``. argparse errors exit with status 2; scenario problems raise :class:`UsageError`."""
    ns = _build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(ns).items() if k not in ("command", "scenario", "output", "format")}
    scenario = _load_scenario(ns.scenario) if getattr(ns, "scenario", None) else None
    if scenario is not None and scenario.params is None and ns.command in ("evolve", "sweep"):
        raise UsageError(f"scenario {scenario.id!r} has no physical parameters for {ns.command}")
    if ns.command in ("evolve", "sweep") and flags.get("points") is not None and flags["points"] < 2:
        raise UsageError("--points must be at least 2")
    return CliInvocation(
        command=ns.command,
        scenario=scenario,
        flags=flags,
        output_path=ns.output,
        format=ns.format,
    )


def curve_csv(curve: DecayCurve) -> str:
    lines = ["t_s,D"]
    lines += [f"{format_sci(t)},{format_sci(d)}" for t, d in zip(curve.times, curve.values)]
    return "\n".join(lines) + "\n"


def sweep_csv(rows) -> str:
    lines = ["T_K,lambda_m,ratio,regime,tau_narrow_s,tau_broad_s,tau_oracle_s"]

    def cell(x):
        return "" if x is None else format_sci(x)

    for r in rows:
        lines.append(
            ",".join(
                [
                    format_sci(r.T),
                    format_sci(r.lam),
                    format_sci(r.ratio),
                    r.regime.value,
                    cell(r.tau_narrow),
                    cell(r.tau_broad),
                    cell(r.tau_oracle),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_outputs(data: str, path: Optional[str] = None) -> None:
    if path is None:
        sys.stdout.write(data)
        sys.stdout.flush()
        return
    Path(path).write_text(data)


def _interaction(inv: CliInvocation) -> str:
    return inv.flags.get("interaction") or inv.scenario.interaction


def _cmd_tau(inv: CliInvocation) -> str:
    sc = inv.scenario
    if sc.params is None:
        from .estimators import orch_or_energy

        E = orch_or_energy(sc.coherence_time)
        if inv.format == "json":
            return json.dumps({"scenario": sc.id, "coherence_time_s": sc.coherence_time, "energy_J": E.value}) + "\n"
        return f"{sc.id}: t = {sc.coherence_time} s, E = hbar/t = {E.value:.6e} J\n"
    estimates, notes = estimates_for(sc, inv.flags.get("with_oracle", False))
    lam = thermal_wavelength(sc.params.M, sc.params.T).value
    if inv.format == "json":
        tree = {
            "scenario": sc.id,
            "lambda_m": lam,
            "ratio": lam / sc.params.R,
            "estimates": [
                {
                    "method": e.method.value,
                    "tau_s": e.seconds,
                    "rate_per_s": e.lambda_rate.value,
                    "regime": e.regime.value if e.regime else None,
                }
                for e in estimates
            ],
            "notes": notes,
        }
        return json.dumps(tree, indent=2) + "\n"
    lines = [f"scenario {sc.id}: lambda = {lam:.4e} m, lambda/R = {lam / sc.params.R:.4e}"]
    for e in estimates:
        regime = e.regime.value if e.regime else "-"
        lines.append(f"{e.method.value:<18} tau_s = {e.seconds:.6e}  regime = {regime}")
    lines += [f"note: {n}" for n in notes]
    return "\n".join(lines) + "\n"


def _cmd_evolve(inv: CliInvocation) -> str:
    sc = inv.scenario
    lam = None
    if inv.flags.get("lambda_ratio") is not None:
        lam = inv.flags["lambda_ratio"] * sc.params.R
    _, curve = oracle_tau(
        sc.params,
        _interaction(inv),
        lam,
        scenario_id=sc.id,
        points=inv.flags["points"],
        return_curve=True,
    )
    return curve_csv(curve)


def _cmd_sweep(inv: CliInvocation) -> str:
    f = inv.flags
    rows = temperature_sweep(
        inv.scenario.params,
        _interaction(inv),
        f["t_from"],
        f["t_to"],
        f["points"],
        log_spacing=f["log"],
        with_oracle=f["with_oracle"],
    )
    for r in rows:
        if r.error:
            print(f"warning: T={r.T:.4e} K: {r.error}", file=sys.stderr)
    return sweep_csv(rows)


def _cmd_report(inv: CliInvocation) -> str:
    report = table1_report(with_oracle=inv.flags["with_oracle"])
    stamp = inv.flags["timestamp"]
    return report.to_json(stamp) if inv.format == "json" else report.to_text(stamp)


def run_validation(n_random: int = 1000, ratios=(0.02, 0.05), seed: int = 20240101) -> list:
    """
    Self-checks: closed-form identities, output dimensions and
    oracle-vs-closed-form agreement on the built-in scenarios.

    Returns ``(name, passed, measured, tolerance)`` tuples.
    """
    results = []
    rng = random.Random(seed)

    def rand_scenario():
        return ScenarioParams(
            R=10 ** rng.uniform(-9, -6),
            s=10 ** rng.uniform(-10, -7),
            M=10 ** rng.uniform(-27, -24),
            T=10 ** rng.uniform(-6, 4),
            N=rng.randint(1, 5000),
            p=10 ** rng.uniform(-30, -26),
            alpha=rng.uniform(-1.4, 1.4),
        )

    worst_ion = worst_dip = 0.0
    for _ in range(n_random):
        sc = rand_scenario()
        lam = thermal_wavelength(sc.M, sc.T)
        a = tau_ion_narrow(sc).seconds
        b = tau_ion_narrow_lambda(sc, lam).seconds
        worst_ion = max(worst_ion, abs(a - b) / abs(a))
        c = tau_dipole_broad(sc).seconds
        d = tau_dipole_narrow(replace(sc, R=lam.value)).seconds
        worst_dip = max(worst_dip, abs(c - d) / abs(c))
    results.append(("identity: ion narrow == width form at thermal lambda", worst_ion <= 1e-12, worst_ion, 1e-12))
    results.append(("identity: dipole broad == dipole narrow with d -> lambda", worst_dip <= 1e-12, worst_dip, 1e-12))

    dims_ok = True
    for s in builtin_scenarios():
        ests, _ = estimates_for(s)
        for e in ests:
            dims_ok &= e.tau.dim == TIME
    results.append(("dimensions: every estimator returns time", dims_ok, float(dims_ok), 1.0))

    base = get_scenario("tegmark-mt-ion").params
    dip = get_scenario("hht-mt-dipole").params
    for ratio in ratios:
        lam = ratio * base.R
        ora = oracle_tau(base, "ion", lam).seconds
        ref = tau_ion_narrow_lambda(base, lam).seconds
        dev = abs(ora / ref - 1)
        results.append((f"oracle vs ion width form at lambda/d={ratio}", dev <= 0.1, dev, 0.1))
        T = crossover_temperature(dip.M, dip.R).value / ratio**2
        sc = replace(dip, T=T)
        ora = oracle_tau(sc, "dipole").seconds
        ref = tau_dipole_narrow(sc).seconds
        dev = abs(ora / ref - 1)
        results.append((f"oracle vs dipole narrow form at lambda/d={ratio}", dev <= 0.1, dev, 0.1))
    return results


def _cmd_validate(inv: CliInvocation) -> tuple:
    results = run_validation()
    lines = []
    for name, ok, measured, tol in results:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  measured={measured:.3e} tol={tol:.1e}")
    return "\n".join(lines) + "\n", all(r[1] for r in results)


def execute(inv: CliInvocation) -> int:
    try:
        if inv.command == "validate":
            text, ok = _cmd_validate(inv)
            write_outputs(text, inv.output_path)
            return 0 if ok else 1
        handler = {"tau": _cmd_tau, "evolve": _cmd_evolve, "sweep": _cmd_sweep, "report": _cmd_report}[inv.command]
        write_outputs(handler(inv), inv.output_path)
    except (DecoherenceError, ArithmeticError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    try:
        inv = parse_invocation(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return execute(inv)


if __name__ == "__main__":
    sys.exit(main())
