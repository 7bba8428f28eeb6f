import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planarly.diagonal import build, TLPA  # noqa: E402
from planarly.perturb import symmetric_perturbation  # noqa: E402


@pytest.fixture(scope="session")
def P():
    return build(2)


@pytest.fixture(scope="session")
def Q(P):
    # unimodular, non-spherical perturbation at lambda = 2
    return symmetric_perturbation(P, 2)


@pytest.fixture(scope="session")
def TL2():
    return TLPA(2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
