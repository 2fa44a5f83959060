import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lieinv.reps import builtin_rep

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def load_printed_invariants():
    return json.loads((DATA / "printed_invariants.json").read_text())


def load_printed_matrices():
    return json.loads((DATA / "printed_matrices.json").read_text())


@pytest.fixture(scope="session")
def nat():
    return builtin_rep("sl2-natural")


@pytest.fixture(scope="session")
def adj():
    return builtin_rep("sl2-adjoint")


@pytest.fixture(scope="session")
def sl3():
    return builtin_rep("sl3-natural")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
