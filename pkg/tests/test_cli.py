import json

import pytest

from mtdecoherence.cli import (
    format_sci,
    format_scenario_file,
    main,
    parse_invocation,
    parse_scenario_file,
    ScenarioFileError,
    UsageError,
)
from mtdecoherence.estimators import ScenarioParams
from mtdecoherence.scenarios import TABLE1_LABELS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_tau():
    inv = parse_invocation(["tau", "--scenario", "tegmark-mt-ion", "--format", "json"])
    assert inv.command == "tau" and inv.format == "json"
    assert inv.scenario.id == "tegmark-mt-ion"


def test_parse_sweep():
    inv = parse_invocation(
        ["sweep", "--scenario", "tegmark-mt-ion", "--param", "temperature", "--from", "1e-6", "--to", "1e3", "--points", "100", "--log"]
    )
    assert inv.flags["t_from"] == 1e-6 and inv.flags["t_to"] == 1e3
    assert inv.flags["points"] == 100 and inv.flags["log"] is True


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "tau", "--scenario", str(tmp_path / "missing.cfg"))
    assert code == 2
    assert "missing.cfg" in err


def test_unknown_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tau", "--scenario", "tegmark-mt-ion", "--bogus"])
    assert info.value.code == 2


def test_unknown_command_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_tau_text(capsys):
    code, out, _ = run(capsys, "tau", "--scenario", "tegmark-mt-ion")
    assert code == 0
    assert "ION_NARROW" in out and "2.830436e-14" in out


def test_tau_json(capsys):
    code, out, _ = run(capsys, "tau", "--scenario", "hht-mt-dipole", "--format", "json")
    tree = json.loads(out)
    narrow = next(e for e in tree["estimates"] if e["method"] == "DIPOLE_NARROW")
    assert narrow["tau_s"] == pytest.approx(3.623e-11, rel=1e-4)
    assert narrow["regime"] == "NARROW"


def test_tau_orch_or(capsys):
    code, out, _ = run(capsys, "tau", "--scenario", "orch-or-500ms")
    assert code == 0 and "2.109145e-34" in out


def test_format_sci():
    assert format_sci(0.0) == "0.000000000e0"
    assert format_sci(1.0) == "1.000000000e0"
    assert format_sci(2.5e-14) == "2.500000000e-14"
    assert float(format_sci(1.234567891234e-7)) == pytest.approx(1.234567891234e-7, rel=1e-9)


def test_evolve_csv(capsys, tmp_path):
    out_path = tmp_path / "curve.csv"
    code, _, _ = run(capsys, "evolve", "--scenario", "tegmark-mt-ion", "--lambda-ratio", "0.02", "-o", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "t_s,D"
    assert lines[1] == "0.000000000e0,1.000000000e0"
    assert len(lines) == 61


def test_sweep_csv(capsys):
    code, out, _ = run(
        capsys, "sweep", "--scenario", "tegmark-mt-ion", "--param", "temperature", "--from", "1e-6", "--to", "1e3", "--points", "100", "--log"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "T_K,lambda_m,ratio,regime,tau_narrow_s,tau_broad_s,tau_oracle_s"
    assert len(lines) == 101
    assert all(line.endswith(",") for line in lines[1:])  # no oracle column


def test_sweep_with_oracle(capsys):
    code, out, _ = run(
        capsys, "sweep", "--scenario", "tegmark-mt-ion", "--from", "1", "--to", "300", "--points", "2", "--with-oracle"
    )
    assert code == 0
    assert not out.splitlines()[1].endswith(",")


def test_report_json(capsys):
    code, out, _ = run(capsys, "report", "--format", "json")
    assert code == 0
    tree = json.loads(out)
    labels = [r["label"] for r in tree["rows"]]
    for label in TABLE1_LABELS:
        assert label in labels
    assert "constants_used" in tree
    for row in tree["rows"]:
        assert set(row) >= {"label", "paper_value_s", "computed", "provenance"}


def test_report_deterministic(capsys):
    _, a, _ = run(capsys, "report", "--format", "json")
    _, b, _ = run(capsys, "report", "--format", "json")
    _, c, _ = run(capsys, "report")
    _, d, _ = run(capsys, "report")
    assert a == b and c == d


def test_scenario_file_roundtrip(tmp_path, capsys):
    params = ScenarioParams(R=3.3e-8, s=1.1e-9, M=2.2e-26, T=77.7, N=12, p=3e-28, alpha=0.25, y1=1e-10)
    text = format_scenario_file(params)
    assert parse_scenario_file(text) == params
    path = tmp_path / "mine.cfg"
    path.write_text("# custom\n" + text)
    code, out, _ = run(capsys, "tau", "--scenario", str(path))
    assert code == 0 and "mine" in out and "DIPOLE_NARROW" in out


def test_scenario_file_errors():
    with pytest.raises(ScenarioFileError) as info:
        parse_scenario_file("R_m = 1e-8\n")
    msg = str(info.value)
    assert "s_m" in msg and "M_kg" in msg and "T_K" in msg
    with pytest.raises(ScenarioFileError):
        parse_scenario_file("R_m = 1e-8\ns_m=1e-8\nM_kg=1e-26\nT_K=abc\n")
    with pytest.raises(ScenarioFileError):
        parse_scenario_file("R_m = 1e-8\ncolour = blue\n")
    with pytest.raises(ScenarioFileError):
        parse_scenario_file("R_m = -1\ns_m=1e-8\nM_kg=1e-26\nT_K=1\n")


def test_bad_scenario_file_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("R_m = 1e-8\n")
    code, _, err = run(capsys, "tau", "--scenario", str(path))
    assert code == 2 and "missing required keys" in err


def test_computation_error_exit_1(tmp_path, capsys):
    path = tmp_path / "perp.cfg"
    path.write_text("R_m=1e-8\ns_m=1e-8\nM_kg=3e-26\nT_K=300\np_Cm=1e-27\nalpha_rad=1.5707963267948966\n")
    code, _, err = run(capsys, "evolve", "--scenario", str(path))
    assert code == 1
    assert len(err.strip().splitlines()) == 1 and err.startswith("error: SingularityError")


def test_evolve_rejects_orch_or(capsys):
    code, _, err = run(capsys, "evolve", "--scenario", "orch-or-500ms")
    assert code == 2


def test_validate(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7 and all(l.startswith("PASS") for l in lines)
