import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("disklab", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("disklab")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def disk_points(rng, n, radius=0.99):
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def random_poly(rng, degree):
    from disklab.functions import PowerSeries

    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return PowerSeries(c / (degree + 1))


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
