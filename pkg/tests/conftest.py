import math
import sys

import numpy as np
import pytest

from sol_curves.helix import reference_helix

SQRT2 = math.sqrt(2.0)


@pytest.fixture(scope="session")
def helix():
    return reference_helix()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
