"""Semantic and syntactic admissibility of a perturbed transcript.

A perturbation is admissible when the whole-text embedding cosine clears the
policy threshold and every replaced word keeps at least one part-of-speech
category in common with the original (lexicon evidence; explicit annotator
tags override when supplied).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .oracles.gateway import OracleGateway
from .transcript import Transcript
from .wordnet import Lexicon, pos_of


class ZeroVectorError(ValueError):
    """Cosine similarity is undefined for a zero vector."""


class DimensionMismatchError(ValueError):
    """Vectors (or token sequences) do not line up."""


@dataclass(frozen=True)
class SimPolicy:
    """Admissibility thresholds.

    delta: minimum whole-text embedding cosine.
    require_pos_match: gate replacements on POS-category overlap.
    skip_stopwords: stop-word positions are never perturbed.
    """

    delta: float = 0.84
    require_pos_match: bool = True
    skip_stopwords: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta {self.delta} outside [0, 1]")


@dataclass(frozen=True)
class SimVerdict:
    passed: bool
    cosine: float
    pos_ok: bool
    reason: str  # "", "cosine", "pos", or "cosine+pos"


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of the angle between two vectors, clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"shapes {u.shape} and {v.shape} differ")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError("cosine undefined for zero-norm vector")
    if np.array_equal(u, v):
        # Identity must be exact so a threshold of 1.0 still passes t == t.
        return 1.0
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def _pos_compatible(
    lexicon: Lexicon,
    original: str,
    replacement: str,
    tag_pair: tuple[str, str] | None,
) -> bool:
    if tag_pair is not None:
        return tag_pair[0] == tag_pair[1]
    orig_pos = pos_of(lexicon, original)
    repl_pos = pos_of(lexicon, replacement)
    # No evidence on either side is not a veto.
    if not orig_pos or not repl_pos:
        return True
    return bool(orig_pos & repl_pos)


def check_sim(
    orig: Transcript,
    pert: Transcript,
    policy: SimPolicy,
    gateway: OracleGateway,
    lexicon: Lexicon,
    pos_tags: tuple[Sequence[str], Sequence[str]] | None = None,
) -> SimVerdict:
    """Verdict on the (original, perturbed) pair under the policy.

    ``pos_tags``, when given, is the (original, perturbed) annotator tag
    sequence pair and takes precedence over lexicon categories.
    """
    if len(orig.tokens) != len(pert.tokens):
        raise DimensionMismatchError(
            f"token counts differ: {len(orig.tokens)} vs {len(pert.tokens)}"
        )
    cosine = cosine_similarity(gateway.text_embed(orig.raw), gateway.text_embed(pert.raw))
    pos_ok = True
    if policy.require_pos_match:
        for i, (a, b) in enumerate(zip(orig.surfaces, pert.surfaces)):
            if a.lower() == b.lower():
                continue
            pair = (pos_tags[0][i], pos_tags[1][i]) if pos_tags is not None else None
            if not _pos_compatible(lexicon, a, b, pair):
                pos_ok = False
                break
    cos_ok = cosine >= policy.delta
    reasons = [] if cos_ok else ["cosine"]
    if not pos_ok:
        reasons.append("pos")
    return SimVerdict(
        passed=cos_ok and pos_ok,
        cosine=cosine,
        pos_ok=pos_ok,
        reason="+".join(reasons),
    )
