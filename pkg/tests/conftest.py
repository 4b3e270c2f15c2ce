import numpy as np
import pytest

from imac import ImacChannel

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def log_uniform(rng, lo, hi):
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def random_channel(rng, p_range=(0.05, 50.0), h_max=4.0):
    return ImacChannel(
        log_uniform(rng, *p_range),
        log_uniform(rng, *p_range),
        float(rng.uniform(-h_max, h_max)),
        float(rng.uniform(-h_max, h_max)),
    )
