"""Shared oracle-facing types and errors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class OracleError(Exception):
    """Base class for oracle-access failures."""


class OracleUnavailable(OracleError):
    """Transport failed after exhausting retries."""


class MalformedResponse(OracleError):
    """A response violated the wire contract (missing field, bad range)."""


class PartialAnnotation(MalformedResponse):
    """An annotation response is missing a required field."""

    def __init__(self, field_name: str):
        super().__init__(f"annotation missing field: {field_name}")
        self.field_name = field_name


class BudgetExhausted(OracleError):
    """The detector-query budget has no remaining allowance."""

    def __init__(self, used: int, budget: int):
        super().__init__(f"query budget exhausted ({used}/{budget})")
        self.used = used
        self.budget = budget


@dataclass(frozen=True)
class AudioClip:
    """Mono audio: amplitude samples in [-1, 1] at a fixed sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self) -> None:
        if self.samples.ndim != 1:
            raise ValueError("clip samples must be 1-D")
        if self.sample_rate <= 0:
            raise ValueError("sample rate must be positive")
        if len(self.samples) and not np.all(np.isfinite(self.samples)):
            raise ValueError("clip contains non-finite samples")

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class OracleConfig:
    """How to reach one oracle role.

    ``endpoint`` is either ``stub:<seed>`` for the in-process deterministic
    stubs or an HTTP base URL for the wire protocol. ``voice_id`` matters for
    synthesis (and is part of cache identity for every role that has it).
    """

    endpoint: str
    voice_id: str = "default"
    timeout: float = 10.0
    retries: int = 2
    bearer_token: str = ""
    backoff_base: float = 0.25
    backoff_factor: float = 2.0
    max_inflight: int = 4

    def __post_init__(self) -> None:
        if self.retries < 0:
            raise ValueError("retries must be >= 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")
        if self.max_inflight < 1:
            raise ValueError("max_inflight must be >= 1")

    @property
    def is_stub(self) -> bool:
        return self.endpoint.startswith("stub:")

    @property
    def stub_seed(self) -> int:
        if not self.is_stub:
            raise ValueError(f"{self.endpoint!r} is not a stub endpoint")
        return int(self.endpoint.split(":", 1)[1])


@dataclass(frozen=True)
class Aesthetics:
    """Four [0, 10] quality axes reported by the annotator."""

    ce: float
    cu: float
    pc: float
    pq: float

    def __post_init__(self) -> None:
        for name in ("ce", "cu", "pc", "pq"):
            v = getattr(self, name)
            if not 0.0 <= v <= 10.0:
                raise ValueError(f"aesthetics {name}={v} outside [0, 10]")


@dataclass(frozen=True)
class Annotations:
    """Auxiliary text annotations used by feature extraction."""

    pos_tags: tuple[str, ...]
    syntax_depth: int
    token_ppl: float
    phoneme_ppl: float
    aesthetics: Aesthetics

    def __post_init__(self) -> None:
        if self.syntax_depth < 1:
            raise ValueError("syntax depth must be >= 1")
        if self.token_ppl <= 0 or self.phoneme_ppl <= 0:
            raise ValueError("perplexities must be positive")
