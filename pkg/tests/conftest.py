from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from tlj.scalars import Level

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "tlj",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("tlj")

ACCEPTANCE_LINES: list[str] = []

LEVELS = [Level(1), Level(2), Level(3), Level(4), Level.delta_two()]
SMALL_LEVELS = [Level(1), Level(2), Level.delta_two()]


def level_id(level: Level) -> str:
    return level.name


@pytest.fixture(params=LEVELS, ids=level_id)
def level(request) -> Level:
    return request.param


@pytest.fixture(params=SMALL_LEVELS, ids=level_id)
def small_level(request) -> Level:
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
