"""Content-addressed response cache.

Keys are SHA-256 digests of (route, oracle identity, request payload); values
are raw response bytes. The disk variant stores one file per entry and writes
atomically (temp file + rename) so concurrent workers and interrupted runs
never leave partial entries behind.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Protocol

CACHE_DIR_ENV = "LINGUA_SPOOF_CACHE_DIR"


def cache_key(route: str, identity: str, payload: bytes) -> str:
    h = hashlib.sha256()
    h.update(route.encode("utf-8"))
    h.update(b"\x00")
    h.update(identity.encode("utf-8"))
    h.update(b"\x00")
    h.update(payload)
    return h.hexdigest()


def canonical_payload(payload: dict) -> bytes:
    """Stable byte serialization of a request body."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


class ResponseCache(Protocol):
    def get(self, key: str) -> bytes | None: ...

    def put(self, key: str, value: bytes) -> None: ...


class MemoryCache:
    """Process-local cache with hit/miss counters."""

    def __init__(self) -> None:
        self._store: dict[str, bytes] = {}
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> bytes | None:
        value = self._store.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: str, value: bytes) -> None:
        self._store[key] = value

    def __len__(self) -> int:
        return len(self._store)


class DiskCache:
    """One file per entry under ``root``, sharded by key prefix."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.bin"

    def get(self, key: str) -> bytes | None:
        path = self._path(key)
        try:
            value = path.read_bytes()
        except FileNotFoundError:
            self.misses += 1
            return None
        self.hits += 1
        return value

    def put(self, key: str, value: bytes) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(value)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)


def default_cache_dir() -> Path:
    """Honors the LINGUA_SPOOF_CACHE_DIR override, else a user cache dir."""
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lingua_spoof"
