"""Seeded in-process oracle stubs.

Everything here is a pure function of (seed, request): stable across runs,
processes, and platforms. The synthesizer plants one tone per token (plus a
quiet voice-identity tone well above the token band), and the detector
recovers those tones from the waveform alone, so the attack loop exercises a
genuine audio round trip while remaining fully deterministic and offline.
"""

from __future__ import annotations

import base64
import hashlib
import json
import re
from functools import lru_cache
from importlib import resources

import numpy as np

from .types import Annotations, Aesthetics, AudioClip, MalformedResponse, OracleError

SAMPLE_RATE = 16000
TOKEN_SAMPLES = 1600  # 100 ms per token
RAMP_SAMPLES = 160  # 10 ms linear fade at each token edge
TOKEN_AMP = 0.5
TOKEN_F_LO = 200
TOKEN_F_SPAN = 1800
VOICE_AMP = 0.1
VOICE_F_LO = 3000
VOICE_F_SPAN = 800

DETECTOR_BINS = 64
DETECTOR_BIAS = -8.0
TEXT_EMBED_DIM = 256
AUDIO_EMBED_DIM = 16

_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*")


def hash64(value: str) -> int:
    """Stable 64-bit hash (unsalted, unlike builtin hash)."""
    digest = hashlib.blake2b(value.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _words(text: str) -> list[str]:
    return [w.lower() for w in _WORD_RE.findall(text)]


def _sigmoid(z: float) -> float:
    return float(1.0 / (1.0 + np.exp(-np.clip(z, -60.0, 60.0))))


def _quantize(samples: np.ndarray) -> np.ndarray:
    # Match the wire format: the stub emits exactly what a PCM16 round trip
    # would, so in-process and HTTP paths score identically.
    return np.clip(np.rint(samples * 32768.0), -32768, 32767) / 32768.0


@lru_cache(maxsize=1)
def stub_vocabulary() -> tuple[str, ...]:
    text = resources.files("lingua_spoof.data").joinpath("stub_vocab.txt").read_text("utf-8")
    return tuple(sorted(set(text.split())))


def token_frequency(token: str) -> int:
    return TOKEN_F_LO + hash64(token.lower()) % TOKEN_F_SPAN


def voice_frequency(voice_id: str) -> int:
    return VOICE_F_LO + hash64(f"voice:{voice_id}") % VOICE_F_SPAN


_UNIT_ROTATIONS: dict[int, np.ndarray] = {}


def _unit_rotation(n: int) -> np.ndarray:
    """exp(-2j pi t / SAMPLE_RATE) for t < n; one table per segment length."""
    table = _UNIT_ROTATIONS.get(n)
    if table is None:
        table = np.exp((-2j * np.pi / SAMPLE_RATE) * np.arange(n))
        _UNIT_ROTATIONS[n] = table
    return table


def _dominant_frequency(segment: np.ndarray, lo: int, hi: int) -> int:
    """Exact integer-Hz tone recovery within [lo, hi].

    Coarse zero-padded spectrum argmax, then a correlation sweep over the
    nearby integer frequencies. For a clean tone at integer frequency the
    sweep maximum is the true frequency.  The sweep advances one Hz per
    step by rotating the projection vector instead of rebuilding it.
    """
    n = len(segment)
    pad = 4096 if n <= 4096 else 1 << int(np.ceil(np.log2(n)))
    spectrum = np.abs(np.fft.rfft(segment, n=pad))
    bin_hz = SAMPLE_RATE / pad
    k_lo = int(np.ceil(lo / bin_hz))
    k_hi = min(int(np.floor(hi / bin_hz)), len(spectrum) - 1)
    coarse = (k_lo + int(np.argmax(spectrum[k_lo : k_hi + 1]))) * bin_hz
    f_lo = max(lo, int(np.floor(coarse - 16)))
    f_hi = min(hi, int(np.ceil(coarse + 16)))
    step = _unit_rotation(n)
    rotated = segment.astype(np.complex128) * step**f_lo
    best_f = f_lo
    best_power = -1.0
    for f in range(f_lo, f_hi + 1):
        power = abs(rotated.sum())
        if power > best_power:
            best_power = power
            best_f = f
        rotated *= step
    return best_f


class StubSuite:
    """All oracle roles, driven by one integer seed."""

    def __init__(self, seed: int):
        self.seed = seed
        rng = np.random.default_rng([seed, 0xD37EC7])
        self.detector_weights = rng.standard_normal(DETECTOR_BINS)
        self._token_vec_cache: dict[str, np.ndarray] = {}
        self._unigram: dict[str, float] | None = None
        self._unigram_z = 0.0

    # -- synthesis ---------------------------------------------------------

    def synthesize(self, text: str, voice_id: str) -> AudioClip:
        """100 ms tone per token at 200 + (hash64(token) mod 1800) Hz.

        Tokens get 10 ms linear edge fades; a quiet voice tone (outside the
        token band) runs under the whole clip. Output length is exactly
        1600 * n_tokens samples at 16 kHz.
        """
        words = _words(text)
        if not words:
            raise OracleError(f"nothing to synthesize in {text!r}")
        envelope = np.ones(TOKEN_SAMPLES)
        ramp = np.arange(RAMP_SAMPLES) / RAMP_SAMPLES
        envelope[:RAMP_SAMPLES] = ramp
        envelope[-RAMP_SAMPLES:] = ramp[::-1]
        t = np.arange(TOKEN_SAMPLES) / SAMPLE_RATE
        segments = [
            TOKEN_AMP * np.sin(2.0 * np.pi * token_frequency(w) * t) * envelope for w in words
        ]
        samples = np.concatenate(segments)
        t_all = np.arange(len(samples)) / SAMPLE_RATE
        samples = samples + VOICE_AMP * np.sin(2.0 * np.pi * voice_frequency(voice_id) * t_all)
        return AudioClip(samples=_quantize(samples), sample_rate=SAMPLE_RATE)

    # -- detector ----------------------------------------------------------

    def _token_bins(self, clip: AudioClip) -> np.ndarray:
        counts = np.zeros(DETECTOR_BINS)
        n_windows = len(clip.samples) // TOKEN_SAMPLES
        for w in range(n_windows):
            start = w * TOKEN_SAMPLES
            interior = clip.samples[start + 176 : start + 1424]
            freq = _dominant_frequency(interior, TOKEN_F_LO, TOKEN_F_LO + TOKEN_F_SPAN - 1)
            counts[(freq - TOKEN_F_LO) % DETECTOR_BINS] += 1.0
        return counts

    def score(self, clip: AudioClip) -> float:
        """Bona-fide probability: sigmoid over planted per-bin tone weights."""
        z = float(self.detector_weights @ self._token_bins(clip)) + DETECTOR_BIAS
        return _sigmoid(z)

    def embed_audio(self, clip: AudioClip) -> np.ndarray:
        """16-dim embedding dominated by the recovered voice tone.

        Two clips sharing a voice land within cos > 0.9 of each other by
        construction; content contributes a small orthogonal component.
        """
        head = clip.samples[: min(len(clip.samples), SAMPLE_RATE)]
        fv = _dominant_frequency(head, VOICE_F_LO, VOICE_F_LO + VOICE_F_SPAN - 1)
        voice_rng = np.random.default_rng([self.seed, 0xA11CE, fv])
        u = voice_rng.standard_normal(AUDIO_EMBED_DIM)
        u /= np.linalg.norm(u)
        pcm = np.clip(np.rint(clip.samples * 32768.0), -32768, 32767).astype("<i2")
        content_key = int.from_bytes(
            hashlib.blake2b(pcm.tobytes(), digest_size=8).digest(), "big"
        )
        content_rng = np.random.default_rng([self.seed, 0xC0FFEE, content_key])
        g = content_rng.standard_normal(AUDIO_EMBED_DIM)
        g /= np.linalg.norm(g)
        e = u + 0.2 * g
        return e / np.linalg.norm(e)

    # -- text embedding ----------------------------------------------------

    def _token_vector(self, token: str) -> np.ndarray:
        vec = self._token_vec_cache.get(token)
        if vec is None:
            rng = np.random.default_rng([self.seed, 0x7E27, hash64(f"emb:{token}")])
            vec = rng.standard_normal(TEXT_EMBED_DIM)
            self._token_vec_cache[token] = vec
        return vec

    def embed_text(self, text: str) -> np.ndarray:
        """L2-normalized bag of hashed-token vectors."""
        words = _words(text)
        if not words:
            return np.zeros(TEXT_EMBED_DIM)
        bag = np.zeros(TEXT_EMBED_DIM)
        for w in words:
            bag += self._token_vector(w)
        norm = np.linalg.norm(bag)
        return bag / norm if norm > 0 else bag

    # -- masked language model ----------------------------------------------

    def mlm(self, tokens: list[str], mask_index: int, top_k: int) -> list[tuple[str, float]]:
        """Pseudo-synonyms: seeded draw from the fixture vocabulary."""
        if not 0 <= mask_index < len(tokens):
            raise OracleError(f"mask index {mask_index} out of range")
        if top_k < 1:
            raise OracleError("top_k must be >= 1")
        masked = tokens[mask_index].lower()
        vocab = [w for w in stub_vocabulary() if w != masked]
        context_key = hash64(f"mlm:{' '.join(tokens)}:{mask_index}")
        rng = np.random.default_rng([self.seed, context_key])
        picks = rng.permutation(len(vocab))[:top_k]
        return [(vocab[int(p)], 0.99 * float(np.exp(-i / 4.0))) for i, p in enumerate(picks)]

    # -- annotations ---------------------------------------------------------

    def _unigram_prob(self, token: str) -> float:
        if self._unigram is None:
            self._unigram = {
                w: 0.5 + (hash64(f"{self.seed}:uni:{w}") % 1024) / 1024.0
                for w in stub_vocabulary()
            }
            self._unigram_z = sum(self._unigram.values()) + 0.25
        return self._unigram.get(token, 0.25) / self._unigram_z

    def annotate(self, text: str) -> Annotations:
        """Deterministic hash-derived tags, depths, perplexities, aesthetics."""
        words = _words(text)
        if not words:
            raise OracleError(f"nothing to annotate in {text!r}")
        tag_names = ("NOUN", "VERB", "ADJ", "ADV")
        tags = tuple(tag_names[hash64(f"{self.seed}:pos:{w}") % 4] for w in words)
        depth = 2 + hash64(f"{self.seed}:depth:{text}") % 5
        nll = -float(np.mean([np.log(self._unigram_prob(w)) for w in words]))
        token_ppl = float(np.exp(nll))
        phoneme_ppl = 1.0 + (hash64(f"{self.seed}:ph:{text}") % 1000) / 10000.0
        aes = Aesthetics(
            ce=(hash64(f"{self.seed}:ce:{text}") % 10001) / 1000.0,
            cu=(hash64(f"{self.seed}:cu:{text}") % 10001) / 1000.0,
            pc=(hash64(f"{self.seed}:pc:{text}") % 10001) / 1000.0,
            pq=(hash64(f"{self.seed}:pq:{text}") % 10001) / 1000.0,
        )
        return Annotations(
            pos_tags=tags,
            syntax_depth=depth,
            token_ppl=token_ppl,
            phoneme_ppl=phoneme_ppl,
            aesthetics=aes,
        )


def _canonical(obj: dict) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


class StubTransport:
    """Serves the wire-protocol routes from a StubSuite, bytes in/bytes out.

    Responses are canonical JSON identical to what the HTTP stub server
    emits, so cache entries and downstream decoding are path-independent.
    """

    def __init__(self, seed: int):
        self.suite = StubSuite(seed)

    def request(self, route: str, payload: dict) -> bytes:
        from ..audio import read_wav, write_wav  # local import avoids a cycle

        try:
            if route == "/v1/synthesize":
                clip = self.suite.synthesize(payload["text"], payload["voice_id"])
                return _canonical(
                    {
                        "sample_rate": clip.sample_rate,
                        "wav_b64": base64.b64encode(write_wav(clip)).decode("ascii"),
                    }
                )
            if route == "/v1/score":
                clip = read_wav(base64.b64decode(payload["wav_b64"]))
                return _canonical({"bonafide_prob": self.suite.score(clip)})
            if route == "/v1/embed_audio":
                clip = read_wav(base64.b64decode(payload["wav_b64"]))
                return _canonical({"vector": list(self.suite.embed_audio(clip))})
            if route == "/v1/embed_text":
                return _canonical({"vector": list(self.suite.embed_text(payload["text"]))})
            if route == "/v1/mlm":
                cands = self.suite.mlm(
                    list(payload["tokens"]), int(payload["mask_index"]), int(payload["top_k"])
                )
                return _canonical(
                    {"candidates": [{"score": s, "word": w} for w, s in cands]}
                )
            if route == "/v1/annotate":
                ann = self.suite.annotate(payload["text"])
                return _canonical(
                    {
                        "aesthetics": {
                            "ce": ann.aesthetics.ce,
                            "cu": ann.aesthetics.cu,
                            "pc": ann.aesthetics.pc,
                            "pq": ann.aesthetics.pq,
                        },
                        "phoneme_ppl": ann.phoneme_ppl,
                        "pos_tags": list(ann.pos_tags),
                        "syntax_depth": ann.syntax_depth,
                        "token_ppl": ann.token_ppl,
                    }
                )
            if route == "/v1/health":
                return _canonical({"ok": True})
        except KeyError as exc:
            raise MalformedResponse(f"stub request for {route} missing field {exc}") from exc
        raise OracleError(f"unknown route {route!r}")
