"""Feature battery over attack outcomes.

Fifteen per-sample measurements: five linguistic (perturbation rate,
readability shift, semantic similarity, token-perplexity shift, parse-depth
shift), six acoustic (duration shift, mel-frame DTW distance, phoneme
perplexity shift, four aesthetics-score shifts), and four model-level
(voice-group audio-encoder similarity plus the detector's baseline F1 pair).
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, fields
from typing import Callable, Iterable

import numpy as np

from .audio import MelParams, duration, dtw_distance, mel_spectrogram
from .constraints import cosine_similarity
from .oracles.gateway import OracleGateway
from .oracles.types import AudioClip
from .stats import ClassificationReport, LengthMismatchError
from .transcript import Transcript
from .wordnet import _morph_candidates

_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*")
_SENTENCE_SPLIT = re.compile(r"[.!?]+")

DIFFICULT_BONUS = 3.6365
DIFFICULT_WORD_WEIGHT = 0.1579
SENTENCE_LENGTH_WEIGHT = 0.0496


class EmptyTextError(ValueError):
    """Readability needs at least one word."""


class NonFiniteError(ValueError):
    """A delta operand is NaN or infinite."""


class ZeroCentroidError(ValueError):
    """Group embeddings cancel out; the centroid cannot be normalized."""


class FeatureExtractionError(RuntimeError):
    """A feature field could not be computed; names the field(s)."""

    def __init__(self, field_name: str, cause: Exception) -> None:
        super().__init__(f"{field_name}: {cause}")
        self.field_name = field_name


@dataclass(frozen=True)
class FeatureVector:
    """One analysis row; field order is the serialization order."""

    perturbed_pct: float
    d_readability: float
    semantic_sim: float
    d_token_ppl: float
    d_tree_depth: float
    d_duration: float
    dtw_dist: float
    d_phoneme_ppl: float
    d_ce: float
    d_cu: float
    d_pc: float
    d_pq: float
    aes: float
    spoof_f1: float
    bonafide_f1: float

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise NonFiniteError(f"{f.name} is {value}")
        if not 0.0 <= self.perturbed_pct <= 1.0:
            raise ValueError(f"perturbed_pct {self.perturbed_pct} outside [0, 1]")
        if not -1.0 <= self.semantic_sim <= 1.0:
            raise ValueError(f"semantic_sim {self.semantic_sim} outside [-1, 1]")
        if not -1.0 <= self.aes <= 1.0:
            raise ValueError(f"aes {self.aes} outside [-1, 1]")
        for name in ("spoof_f1", "bonafide_f1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} {value} outside [0, 1]")

    def as_row(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in FEATURE_COLUMNS)


FEATURE_COLUMNS: tuple[str, ...] = tuple(f.name for f in fields(FeatureVector))


@dataclass(eq=False)
class VoiceGroup:
    """Detector embeddings of one voice's original (pre-attack) clips."""

    voice_id: str
    embeddings: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not self.embeddings:
            raise ValueError("a voice group needs at least one embedding")
        self.embeddings = tuple(
            np.asarray(e, dtype=np.float64) for e in self.embeddings
        )
        dims = {e.shape for e in self.embeddings}
        if len(dims) != 1 or self.embeddings[0].ndim != 1:
            raise ValueError(f"embeddings must share one 1-D shape, got {dims}")


def perturbed_fraction(orig: Transcript, pert: Transcript) -> float:
    """Share of positions whose surface changed, case-insensitively."""
    if len(orig.tokens) != len(pert.tokens):
        raise LengthMismatchError(
            f"token counts differ: {len(orig.tokens)} vs {len(pert.tokens)}"
        )
    changed = sum(
        1 for a, b in zip(orig.surfaces, pert.surfaces) if a.lower() != b.lower()
    )
    return changed / len(orig.tokens)


_BUNDLED_FAMILIAR: frozenset[str] | None = None


def familiar_word_list() -> frozenset[str]:
    """Bundled common-word list used by default for readability."""
    global _BUNDLED_FAMILIAR
    if _BUNDLED_FAMILIAR is None:
        from importlib import resources

        text = (
            resources.files("lingua_spoof")
            .joinpath("data/familiar_words.txt")
            .read_text(encoding="utf-8")
        )
        _BUNDLED_FAMILIAR = frozenset(text.split())
    return _BUNDLED_FAMILIAR


def _is_familiar(word: str, familiar: frozenset[str]) -> bool:
    low = word.lower()
    if low in familiar or low.isdigit():
        return True
    return any(stem in familiar for stem in _morph_candidates(low))


def dale_chall(text: str, familiar_words: frozenset[str] | None = None) -> float:
    """Readability from difficult-word rate and mean sentence length.

    score = 0.1579 * pct_difficult + 0.0496 * words_per_sentence,
    plus 3.6365 when more than 5% of words are difficult.
    """
    familiar = familiar_words if familiar_words is not None else familiar_word_list()
    words = _WORD_RE.findall(text)
    if not words:
        raise EmptyTextError("readability needs at least one word")
    sentences = [s for s in _SENTENCE_SPLIT.split(text) if s.strip()]
    n_sentences = max(len(sentences), 1)
    difficult = sum(1 for w in words if not _is_familiar(w, familiar))
    pct_difficult = 100.0 * difficult / len(words)
    score = (
        DIFFICULT_WORD_WEIGHT * pct_difficult
        + SENTENCE_LENGTH_WEIGHT * len(words) / n_sentences
    )
    if pct_difficult > 5.0:
        score += DIFFICULT_BONUS
    return score


def token_perplexity(text: str, prob: Callable[[str], float]) -> float:
    """exp of the mean token negative log-likelihood under ``prob``."""
    tokens = [w.lower() for w in _WORD_RE.findall(text)]
    if not tokens:
        raise EmptyTextError("perplexity needs at least one token")
    total = 0.0
    for tok in tokens:
        p = prob(tok)
        if not 0.0 < p <= 1.0:
            raise ValueError(f"probability {p} for {tok!r} outside (0, 1]")
        total += math.log(p)
    return math.exp(-total / len(tokens))


def delta(after: float, before: float) -> float:
    """Signed change, perturbed minus original."""
    if not (math.isfinite(after) and math.isfinite(before)):
        raise NonFiniteError(f"delta operands ({after}, {before}) must be finite")
    return after - before


def audio_encoder_similarity(group: VoiceGroup) -> float:
    """Mean cosine between each member and the normalized group centroid."""
    stacked = np.stack(group.embeddings)
    centroid = stacked.mean(axis=0)
    norm = float(np.linalg.norm(centroid))
    if norm < 1e-12:
        raise ZeroCentroidError(f"voice {group.voice_id!r} centroid is zero")
    if len(group.embeddings) == 1:
        # The sole member is its own centroid; the cosine is 1 by construction.
        return 1.0
    centroid = centroid / norm
    sims = [cosine_similarity(e, centroid) for e in group.embeddings]
    return float(np.clip(np.mean(sims), -1.0, 1.0))


def extract_features(
    outcome,
    clips: tuple[AudioClip, AudioClip],
    group: VoiceGroup,
    detector_report: ClassificationReport,
    gateway: OracleGateway,
    familiar_words: frozenset[str] | None = None,
    mel: MelParams = MelParams(),
) -> FeatureVector:
    """Assemble the full 15-field row for one attack outcome.

    ``clips`` is the (original, adversarial) synthesis pair, same voice.
    Oracle or DSP failures surface as FeatureExtractionError naming the
    field(s) that could not be computed.
    """
    source: Transcript = outcome.source
    adversarial: Transcript = outcome.adversarial
    orig_clip, pert_clip = clips

    def compute(name: str, fn: Callable[[], float]) -> float:
        try:
            return fn()
        except Exception as exc:  # noqa: BLE001 - re-raised with field context
            raise FeatureExtractionError(name, exc) from exc

    pct = compute("perturbed_pct", lambda: perturbed_fraction(source, adversarial))
    d_read = compute(
        "d_readability",
        lambda: delta(
            dale_chall(adversarial.raw, familiar_words),
            dale_chall(source.raw, familiar_words),
        ),
    )
    try:
        ann_orig = gateway.annotate(source.raw)
        ann_pert = gateway.annotate(adversarial.raw)
    except Exception as exc:  # noqa: BLE001
        raise FeatureExtractionError(
            "d_token_ppl/d_tree_depth/d_phoneme_ppl/d_ce/d_cu/d_pc/d_pq", exc
        ) from exc

    d_tok = compute("d_token_ppl", lambda: delta(ann_pert.token_ppl, ann_orig.token_ppl))
    d_depth = compute(
        "d_tree_depth", lambda: delta(ann_pert.syntax_depth, ann_orig.syntax_depth)
    )
    d_dur = compute(
        "d_duration", lambda: delta(duration(pert_clip), duration(orig_clip))
    )
    dtw = compute(
        "dtw_dist",
        lambda: dtw_distance(
            mel_spectrogram(orig_clip, mel), mel_spectrogram(pert_clip, mel)
        ),
    )
    d_phone = compute(
        "d_phoneme_ppl", lambda: delta(ann_pert.phoneme_ppl, ann_orig.phoneme_ppl)
    )
    ao, ap = ann_orig.aesthetics, ann_pert.aesthetics
    d_ce = compute("d_ce", lambda: delta(ap.ce, ao.ce))
    d_cu = compute("d_cu", lambda: delta(ap.cu, ao.cu))
    d_pc = compute("d_pc", lambda: delta(ap.pc, ao.pc))
    d_pq = compute("d_pq", lambda: delta(ap.pq, ao.pq))
    aes = compute("aes", lambda: audio_encoder_similarity(group))

    return FeatureVector(
        perturbed_pct=pct,
        d_readability=d_read,
        semantic_sim=outcome.semantic_sim,
        d_token_ppl=d_tok,
        d_tree_depth=d_depth,
        d_duration=d_dur,
        dtw_dist=dtw,
        d_phoneme_ppl=d_phone,
        d_ce=d_ce,
        d_cu=d_cu,
        d_pc=d_pc,
        d_pq=d_pq,
        aes=aes,
        spoof_f1=detector_report["spoof"].f1,
        bonafide_f1=detector_report["bonafide"].f1,
    )


def features_to_csv(vectors: Iterable[FeatureVector]) -> str:
    """Fixed 15-column CSV, header first."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FEATURE_COLUMNS)
    for vec in vectors:
        writer.writerow(f"{v:.10g}" for v in vec.as_row())
    return buf.getvalue()


def read_features_csv(text: str) -> tuple[np.ndarray, tuple[str, ...]]:
    """Parse a feature CSV back into (matrix, column names)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise ValueError("empty feature CSV") from None
    rows = [[float(v) for v in row] for row in reader if row]
    if any(len(r) != len(header) for r in rows):
        raise ValueError("ragged feature CSV")
    matrix = np.asarray(rows, dtype=np.float64).reshape(len(rows), len(header))
    return matrix, header
