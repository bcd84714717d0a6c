import random

import pytest
from hypothesis import HealthCheck, settings

from wittkit import NumberField, StandardSpec, Subgroup

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def Q():
    return NumberField.of([0, 1])


@pytest.fixture
def K():
    """Q(sqrt 2)."""
    return NumberField.of([-2, 0, 1])


def unit_lattice(n, field):
    return Subgroup([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)


@pytest.fixture
def spec111(Q):
    return StandardSpec(1, 1, 1, unit_lattice(2, Q))


@pytest.fixture
def rng():
    return random.Random(20240601)
