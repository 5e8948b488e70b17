"""Shared fixtures: the named graphs, seeded random DAGs and settings overrides."""
import os
from datetime import timedelta

import pytest
from hypothesis import HealthCheck, Verbosity, settings

from reachidx.core.config import get_settings
from reachidx.graph.fixtures import chain, diamond
from reachidx.graph.models import Dag

# graph builds are slow per example; deadlines only on CI
settings.register_profile(
    "reachidx",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=timedelta(milliseconds=5000), max_examples=60)
settings.register_profile("dev", deadline=None, max_examples=10)
settings.register_profile("debug", deadline=None, max_examples=10, verbosity=Verbosity.verbose)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "reachidx"))


@pytest.fixture
def chain3() -> Dag:
    return chain(3)


@pytest.fixture
def chain4() -> Dag:
    return chain(4)


@pytest.fixture
def diamond_dag() -> Dag:
    return diamond()


@pytest.fixture
def edgeless() -> Dag:
    return Dag.from_edges(3, [])


@pytest.fixture
def override_settings(monkeypatch):
    """Set REACHIDX_* variables for one test and rebuild the cached settings."""

    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"REACHIDX_{key}", str(value))
        get_settings.cache_clear()
        return get_settings()

    yield apply
    get_settings.cache_clear()
