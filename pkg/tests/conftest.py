import math

import pytest

from biphoton_convert.spectral_core import GaussianSourceParams

TWO_PI = 2.0 * math.pi
GAUSS_FWHM = 2.0 * math.sqrt(2.0 * math.log(2.0))


@pytest.fixture
def fig2_params():
    # sigma_minus = 2 pi x 1 THz, sigma_p = sigma_minus / 10, tau0 = 0.2 ps
    return GaussianSourceParams(TWO_PI * 400, TWO_PI * 0.1, TWO_PI * 2, TWO_PI * 1, 0.2)


@pytest.fixture
def fig4_shift():
    # Delta - Omega = 2 pi x 0.05 THz
    return TWO_PI * 1.95

ACCEPTANCE_LINES = []
SESSION = {}


def pytest_sessionstart(session):
    import time

    SESSION["start"] = time.perf_counter()


def pytest_collection_modifyitems(items):
    # acceptance checks run last so the runtime criterion sees the whole suite
    items.sort(key=lambda item: item.nodeid.startswith("tests/test_acceptance.py") or "test_acceptance" in item.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
