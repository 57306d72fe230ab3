import random

import pytest

from rmlab.ffield import tower_create


@pytest.fixture
def f8():
    return tower_create(2, 1, 3)


@pytest.fixture
def f16():
    return tower_create(2, 1, 4)


@pytest.fixture
def f2_28():
    return tower_create(2, 1, 28)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
