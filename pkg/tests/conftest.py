from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from lingua_spoof.oracles.cache import MemoryCache
from lingua_spoof.oracles.gateway import OracleGateway, stub_gateway
from lingua_spoof.wordnet import bundled_lexicon

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture()
def gateway() -> OracleGateway:
    """Stub-backed gateway with a fresh in-memory cache."""
    return stub_gateway(7, cache=MemoryCache())


@pytest.fixture(scope="session")
def lexicon():
    return bundled_lexicon()
