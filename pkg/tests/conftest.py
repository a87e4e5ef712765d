import numpy as np
import pytest

from morphclust import _backend


@pytest.fixture(params=sorted(_backend.AVAILABLE))
def backend(request):
    """Run the test once per available kernel backend."""
    previous = _backend.set_backend(request.param)
    yield request.param
    _backend.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_grid(rng, dim, R, density):
    return rng.random((R,) * dim) < density


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``criterion("1 Table 1 reproduction", ok, "detail")``; the line is
    printed in the terminal summary and the test fails if ``ok`` is false.
    """

    def record(name, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
        assert ok, f"criterion {name} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
