from __future__ import annotations

import time

import pytest
from hypothesis import HealthCheck, settings

from lcmlat.enumeration import enumerate_meet_semilattices, filter_special

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


class _Census:
    def __init__(self, n: int):
        t0 = time.perf_counter()
        self.structures = list(enumerate_meet_semilattices(n))
        self.enumerate_seconds = time.perf_counter() - t0
        self.special = filter_special(self.structures)


@pytest.fixture(scope="session")
def census9():
    return _Census(9)


@pytest.fixture(scope="session")
def census10():
    return _Census(10)
