"""Reference backends for every wire-protocol role.

These are deterministic, dependency-free stand-ins with the same
contracts as production models: a host operator swaps in real TTS or
detector checkpoints by registering another backend factory, and the
protocol layer does not change.
"""

from __future__ import annotations

import hashlib
import re
from importlib import resources

import numpy as np

from .calibration import CalibrationState
from .wav import decode_wav, encode_wav

SAMPLE_RATE = 16000
WORD_SAMPLES = 1280  # 80 ms per word
AUDIO_EMBED_DIM = 16
TEXT_EMBED_DIM = 256
DETECTOR_BANDS = 8

_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*")


def stable64(value: str) -> int:
    return int.from_bytes(hashlib.md5(value.encode("utf-8")).digest()[:8], "little")


def _words(text: str) -> list[str]:
    return [w.lower() for w in _WORD_RE.findall(text)]


def _sigmoid(z: float) -> float:
    return float(1.0 / (1.0 + np.exp(-np.clip(z, -60.0, 60.0))))


class TtsBackend:
    """Two-harmonic tone per word, plus a per-voice carrier."""

    def __init__(self, seed: int):
        self.seed = seed

    def synthesize(self, text: str, voice_id: str | None) -> tuple[int, bytes]:
        words = _words(text)
        if not words:
            raise ValueError(f"nothing to synthesize in {text!r}")
        fade = np.linspace(0.0, 1.0, 128)
        envelope = np.ones(WORD_SAMPLES)
        envelope[:128] = fade
        envelope[-128:] = fade[::-1]
        t = np.arange(WORD_SAMPLES) / SAMPLE_RATE
        segments = []
        for word in words:
            freq = 150 + stable64(f"{self.seed}:w:{word}") % 2200
            tone = 0.35 * np.sin(2 * np.pi * freq * t)
            tone += 0.12 * np.sin(2 * np.pi * 2 * freq * t)
            segments.append(tone * envelope)
        samples = np.concatenate(segments)
        voice = voice_id if voice_id is not None else "default"
        carrier = 4000 + stable64(f"{self.seed}:v:{voice}") % 600
        t_all = np.arange(len(samples)) / SAMPLE_RATE
        samples = samples + 0.08 * np.sin(2 * np.pi * carrier * t_all)
        return SAMPLE_RATE, encode_wav(samples, SAMPLE_RATE)


def band_energies(blob: bytes, bands: int) -> np.ndarray:
    """Log energy in ``bands`` equal slices of the magnitude spectrum."""
    samples, _ = decode_wav(blob)
    if len(samples) == 0:
        raise ValueError("clip has no samples")
    spectrum = np.abs(np.fft.rfft(samples)) ** 2
    edges = np.linspace(0, len(spectrum), bands + 1).astype(int)
    return np.array(
        [np.log1p(spectrum[a:b].sum()) for a, b in zip(edges[:-1], edges[1:])]
    )


class DetectorBackend:
    """Spectral-tilt scorer over normalized band energies.

    Excess energy in the upper bands reads as bona fide, excess in the
    lower bands as spoof; the seed only perturbs that direction. The
    normalization layer's running mean and variance live in ``state``,
    and calibration shifts them toward the current voice's distribution,
    which is what decides accuracy in practice.
    """

    def __init__(self, seed: int):
        rng = np.random.default_rng([seed, 0xB0A7])
        tilt = np.linspace(-1.5, 1.5, DETECTOR_BANDS)
        self.weights = tilt + 0.15 * rng.standard_normal(DETECTOR_BANDS)
        self.bias = 0.1 * float(rng.standard_normal())
        self.state = CalibrationState(
            mean=np.zeros(DETECTOR_BANDS), var=np.ones(DETECTOR_BANDS)
        )

    def features(self, blob: bytes) -> np.ndarray:
        return band_energies(blob, DETECTOR_BANDS)

    def score(self, blob: bytes) -> float:
        normalized = (self.features(blob) - self.state.mean) / np.sqrt(self.state.var)
        return _sigmoid(float(self.weights @ normalized) + self.bias)


class EmbedderBackend:
    def __init__(self, seed: int):
        self.seed = seed

    def embed_audio(self, blob: bytes) -> list[float]:
        energies = band_energies(blob, AUDIO_EMBED_DIM)
        norm = float(np.linalg.norm(energies))
        return list((energies / norm) if norm > 0 else energies)

    def embed_text(self, text: str) -> list[float]:
        acc = np.zeros(TEXT_EMBED_DIM)
        for word in _words(text):
            rng = np.random.default_rng([self.seed, stable64(word)])
            acc += rng.standard_normal(TEXT_EMBED_DIM)
        norm = float(np.linalg.norm(acc))
        return list((acc / norm) if norm > 0 else acc)


class MlmBackend:
    """Hash-scored fill-in over a bundled vocabulary."""

    def __init__(self, seed: int):
        self.seed = seed
        text = resources.files("model_host.data").joinpath("vocab.txt").read_text("utf-8")
        self.vocabulary = tuple(sorted(set(text.split())))

    def propose(self, tokens: list[str], mask_index: int, top_k: int) -> list[tuple[str, float]]:
        if not 0 <= mask_index < len(tokens):
            raise ValueError(f"mask index {mask_index} outside 0..{len(tokens) - 1}")
        if top_k < 1:
            raise ValueError("top_k must be >= 1")
        left = " ".join(tokens[:mask_index])
        right = " ".join(tokens[mask_index + 1 :])
        scored = [
            (word, (stable64(f"{self.seed}|{left}|{word}|{right}") % 10**9) / 10**9)
            for word in self.vocabulary
            if word != tokens[mask_index]
        ]
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        return scored[:top_k]


_DETERMINERS = frozenset("a an the this that these those".split())
_PRONOUNS = frozenset("i you he she it we they him her them his its our".split())
_PREPOSITIONS = frozenset("in on at by for with from of to under over".split())
_CONJUNCTIONS = frozenset("and or but nor so yet".split())


class AnnotatorBackend:
    """Heuristic tags plus hash-derived fluency and aesthetics scores."""

    def __init__(self, seed: int):
        self.seed = seed

    def _pos(self, word: str) -> str:
        if word in _DETERMINERS:
            return "DET"
        if word in _PRONOUNS:
            return "PRON"
        if word in _PREPOSITIONS:
            return "ADP"
        if word in _CONJUNCTIONS:
            return "CCONJ"
        if word.isdigit():
            return "NUM"
        if word.endswith(("ing", "ed", "ify", "ize")):
            return "VERB"
        if word.endswith(("ly",)):
            return "ADV"
        if word.endswith(("ous", "ful", "ive", "able", "al")):
            return "ADJ"
        return "NOUN"

    def annotate(self, text: str) -> dict:
        words = _words(text)
        if not words:
            raise ValueError(f"nothing to annotate in {text!r}")
        log_probs = [
            np.log((1 + stable64(f"{self.seed}:u:{w}") % 9999) / 10000.0) for w in words
        ]
        token_ppl = float(np.exp(-np.mean(log_probs)))
        phoneme_ppl = 1.0 + (stable64(f"{self.seed}:p:{' '.join(words)}") % 400) / 1e4
        aesthetics = {
            name: round(1.0 + (stable64(f"{self.seed}:{name}:{' '.join(words)}") % 8001) / 1e3, 3)
            for name in ("ce", "cu", "pc", "pq")
        }
        return {
            "aesthetics": aesthetics,
            "phoneme_ppl": round(phoneme_ppl, 6),
            "pos_tags": [self._pos(w) for w in words],
            "syntax_depth": 1 + min(5, len(words) // 3),
            "token_ppl": round(token_ppl, 6),
        }


_FACTORIES = {
    "reference": {
        "tts": TtsBackend,
        "detector": DetectorBackend,
        "embedder": EmbedderBackend,
        "mlm": MlmBackend,
        "annotator": AnnotatorBackend,
    }
}


def build_backends(backends: dict[str, str], seed: int) -> dict[str, object]:
    """Instantiate one backend per enabled role; name problems raise together."""
    missing = sorted(
        f"{role} -> {name!r}"
        for role, name in backends.items()
        if name not in _FACTORIES or role not in _FACTORIES[name]
    )
    if missing:
        raise LookupError(f"missing backends: {', '.join(missing)}")
    return {role: _FACTORIES[name][role](seed) for role, name in backends.items()}
