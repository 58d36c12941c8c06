"""Oracle access: configs, caching, budget ledger, stubs, wire client."""

from .cache import CACHE_DIR_ENV, DiskCache, MemoryCache, default_cache_dir
from .gateway import OracleGateway, stub_gateway
from .ledger import QueryLedger
from .stubs import StubSuite, StubTransport, hash64
from .types import (
    Aesthetics,
    Annotations,
    AudioClip,
    BudgetExhausted,
    MalformedResponse,
    OracleConfig,
    OracleError,
    OracleUnavailable,
)

__all__ = [
    "CACHE_DIR_ENV",
    "Aesthetics",
    "Annotations",
    "AudioClip",
    "BudgetExhausted",
    "DiskCache",
    "MalformedResponse",
    "MemoryCache",
    "OracleConfig",
    "OracleError",
    "OracleGateway",
    "OracleUnavailable",
    "QueryLedger",
    "StubSuite",
    "StubTransport",
    "default_cache_dir",
    "hash64",
    "stub_gateway",
]
