import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from telegraph import ModelParams, make_rng  # noqa: E402


@pytest.fixture
def unit():
    return ModelParams(1.0, 1.0)


@pytest.fixture
def rng():
    return make_rng(20261016)


# acceptance verdicts, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
