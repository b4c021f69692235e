import math

import pytest

from mtdecoherence.estimators import ScenarioParams

# Independent plain-float constants for hand evaluations.
H = 6.6260755e-34
HBAR = H / (2 * math.pi)
K = 9e9
KB = 1.38e-23
E = 1.6e-19
MP = 1.67e-27
M_WATER = 18 * MP
T_BODY = 309.0
D_MT = 2.4e-8

_acceptance_lines = []


def record(criterion, ok, detail):
    _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    return ok


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tegmark():
    return ScenarioParams(R=D_MT, s=D_MT, M=M_WATER, T=T_BODY, N=1000)


@pytest.fixture(scope="session")
def dipole():
    return ScenarioParams(R=D_MT, s=D_MT, M=M_WATER, T=T_BODY, p=1e-27, alpha=0.0)
