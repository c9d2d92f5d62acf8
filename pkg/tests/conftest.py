import pytest

from relosc import IntegratorConfig, exact_period, integrate


@pytest.fixture(scope="session")
def numeric_08():
    """Ten exact periods of the beta = 0.8 oracle trajectory."""
    period = exact_period(0.8)
    return integrate(0.8, IntegratorConfig(t_end=10 * period)), period


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
