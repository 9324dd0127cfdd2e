import os
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "ordolex" / "data" / "fixtures"

_CRITERIA = []


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""
    def record(number, passed, detail=""):
        _CRITERIA.append((number, passed, detail))
        return passed
    return record


def data_dir():
    root = os.environ.get("ORDOLEX_DATA_DIR")
    return Path(root) if root else None


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"AC{number} {status} {detail}")
