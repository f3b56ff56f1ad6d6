import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qspace import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once so timed tests measure steady state."""
    kernels.permanent_numba([[1.0]])
    kernels.determinant_numba([[1.0]])
    kernels.determinant_numba([[1.0] * 8] * 8)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
