import sys
from pathlib import Path

import pytest

from flownet.cli import fixture_config_path
from flownet.config import load_config

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixture_config():
    return load_config(fixture_config_path())


@pytest.fixture
def fixture_dir():
    return fixture_config_path().parent


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
