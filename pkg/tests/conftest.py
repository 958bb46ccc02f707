import numpy as np
import pytest
from hypothesis import settings

from maxlenqm import DeformationParams, ThetaChart, build_grid

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

TAUS = (0.01, 0.1, 1.0, 10.0)


@pytest.fixture(params=TAUS, ids=lambda t: f"tau={t:g}")
def params(request):
    return DeformationParams(tau=request.param)


@pytest.fixture
def grid(params):
    return build_grid(ThetaChart(params))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
