import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from substral import Substitution, TileSet  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def golden():
    return Substitution.from_strings("21", "1")


@pytest.fixture(scope="session")
def golden_ts(golden):
    return TileSet.from_substitution(golden)


@pytest.fixture(scope="session")
def thue_morse():
    return Substitution.from_strings("12", "21")


@pytest.fixture(scope="session")
def tm_ts(thue_morse):
    return TileSet.from_substitution(thue_morse)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
