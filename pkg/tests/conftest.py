import sys
import warnings

import numpy as np
import pytest

from rednets.reduction import ReductionWarning


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


@pytest.fixture(autouse=True)
def _quiet_reduction_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ReductionWarning)
        yield



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
