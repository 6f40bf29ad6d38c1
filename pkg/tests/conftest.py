import pytest

from bullen_bounds.core import Interval, make_frame
from bullen_bounds.registry import builtin_registry, get_entry


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()


@pytest.fixture(scope="session")
def quadratic():
    return get_entry("quadratic").fn


@pytest.fixture(scope="session")
def exp1():
    return get_entry("exp1").fn


@pytest.fixture
def unit():
    return Interval(0.0, 1.0)


@pytest.fixture
def centre_frame():
    return make_frame(0, 1, 0.5, 1, 1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
