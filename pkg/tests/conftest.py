import sys
import random

import pytest

from hfkit.hf import hf_universe


@pytest.fixture(scope="session")
def v4():
    """The 16 sets of rank <= 3."""
    return hf_universe(4)


@pytest.fixture(scope="session")
def v5():
    """The 65536 sets of rank <= 4."""
    return hf_universe(5)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
