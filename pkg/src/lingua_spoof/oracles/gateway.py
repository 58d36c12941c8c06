"""Uniform access to every oracle role, with caching and budget accounting.

One gateway bundles per-role configs (TTS, detector, text embedder, MLM,
annotator), a response cache, and transports. ``stub:<seed>`` endpoints run
in-process; HTTP endpoints speak the wire protocol. Cached answers are
served without touching the network or the query ledger.
"""

from __future__ import annotations

import base64
import json
import time
from typing import Callable, Sequence

import numpy as np

from .cache import ResponseCache, cache_key, canonical_payload
from .client import WireTransport
from .ledger import QueryLedger
from .stubs import StubTransport
from .types import (
    Annotations,
    Aesthetics,
    AudioClip,
    MalformedResponse,
    OracleConfig,
    PartialAnnotation,
)

_ROLES = ("tts", "detector", "embedder", "mlm", "annotator")


class OracleGateway:
    def __init__(
        self,
        default: OracleConfig,
        *,
        tts: OracleConfig | None = None,
        detector: OracleConfig | None = None,
        embedder: OracleConfig | None = None,
        mlm: OracleConfig | None = None,
        annotator: OracleConfig | None = None,
        cache: ResponseCache | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        overrides = {
            "tts": tts,
            "detector": detector,
            "embedder": embedder,
            "mlm": mlm,
            "annotator": annotator,
        }
        self.configs = {role: overrides[role] or default for role in _ROLES}
        self.cache = cache
        self._transports: dict[str, StubTransport | WireTransport] = {}
        self._sleep = sleep
        # First response per embedding route pins the dimension; later
        # responses of a different length are protocol violations.
        self._embed_dims: dict[str, int] = {}

    def _transport(self, role: str) -> StubTransport | WireTransport:
        cfg = self.configs[role]
        transport = self._transports.get(cfg.endpoint)
        if transport is None:
            if cfg.is_stub:
                transport = StubTransport(cfg.stub_seed)
            else:
                transport = WireTransport(cfg, sleep=self._sleep)
            self._transports[cfg.endpoint] = transport
        return transport

    def _identity(self, role: str, with_voice: bool = False) -> str:
        cfg = self.configs[role]
        return f"{cfg.endpoint}|{cfg.voice_id}" if with_voice else cfg.endpoint

    def _fetch(self, role: str, route: str, payload: dict, with_voice: bool = False) -> bytes:
        key = cache_key(route, self._identity(role, with_voice), canonical_payload(payload))
        if self.cache is not None:
            hit = self.cache.get(key)
            if hit is not None:
                return hit
        body = self._transport(role).request(route, payload)
        if self.cache is not None:
            self.cache.put(key, body)
        return body

    def health(self) -> dict[str, bool]:
        """Probe each distinct endpoint once; stub endpoints are always up."""
        results: dict[str, bool] = {}
        for role in _ROLES:
            cfg = self.configs[role]
            if cfg.endpoint in results:
                continue
            if cfg.is_stub:
                results[cfg.endpoint] = True
            else:
                transport = self._transport(role)
                results[cfg.endpoint] = transport.health()
        return results

    @staticmethod
    def _decode(body: bytes, route: str) -> dict:
        try:
            data = json.loads(body)
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise MalformedResponse(f"{route}: response is not JSON") from exc
        if not isinstance(data, dict):
            raise MalformedResponse(f"{route}: response is not an object")
        return data

    # -- roles ---------------------------------------------------------------

    def synthesize(self, text: str) -> AudioClip:
        from ..audio import read_wav

        if not text.strip():
            raise ValueError("cannot synthesize empty text")
        cfg = self.configs["tts"]
        payload = {"text": text, "voice_id": cfg.voice_id}
        data = self._decode(self._fetch("tts", "/v1/synthesize", payload, with_voice=True),
                            "/v1/synthesize")
        try:
            clip = read_wav(base64.b64decode(data["wav_b64"]))
            stated_rate = int(data["sample_rate"])
        except (KeyError, ValueError) as exc:
            raise MalformedResponse(f"/v1/synthesize: {exc}") from exc
        if clip.sample_rate != stated_rate:
            raise MalformedResponse(
                f"/v1/synthesize: stated rate {stated_rate} != WAV rate {clip.sample_rate}"
            )
        return clip

    def _score_payload(self, clip: AudioClip) -> dict:
        from ..audio import write_wav

        return {
            "sample_rate": clip.sample_rate,
            "wav_b64": base64.b64encode(write_wav(clip)).decode("ascii"),
        }

    def detector_score(self, clip: AudioClip, ledger: QueryLedger | None = None) -> float:
        """Bona-fide probability from the detector.

        A cache hit answers from local state and leaves the ledger untouched;
        a miss reserves one unit of budget before the physical access and
        refunds it if the transport fails.
        """
        payload = self._score_payload(clip)
        key = cache_key("/v1/score", self._identity("detector"), canonical_payload(payload))
        body = self.cache.get(key) if self.cache is not None else None
        if body is None:
            if ledger is not None:
                ledger.reserve()
            try:
                body = self._transport("detector").request("/v1/score", payload)
            except Exception:
                if ledger is not None:
                    ledger.release()
                raise
            if self.cache is not None:
                self.cache.put(key, body)
        data = self._decode(body, "/v1/score")
        try:
            prob = float(data["bonafide_prob"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponse(f"/v1/score: {exc}") from exc
        if not 0.0 <= prob <= 1.0 or not np.isfinite(prob):
            raise MalformedResponse(f"/v1/score: probability {prob} outside [0, 1]")
        return prob

    def cached_detector_score(self, clip: AudioClip) -> float | None:
        """Cache-only peek; never touches the network or the ledger."""
        if self.cache is None:
            return None
        payload = self._score_payload(clip)
        key = cache_key("/v1/score", self._identity("detector"), canonical_payload(payload))
        body = self.cache.get(key)
        if body is None:
            return None
        data = self._decode(body, "/v1/score")
        return float(data["bonafide_prob"])

    def _vector_from(self, data: dict, route: str) -> np.ndarray:
        try:
            vec = np.asarray([float(v) for v in data["vector"]], dtype=np.float64)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponse(f"{route}: {exc}") from exc
        if vec.size == 0 or not np.all(np.isfinite(vec)):
            raise MalformedResponse(f"{route}: empty or non-finite vector")
        pinned = self._embed_dims.setdefault(route, vec.size)
        if vec.size != pinned:
            raise MalformedResponse(
                f"{route}: vector has {vec.size} dims, expected {pinned}"
            )
        return vec

    def detector_embed(self, clip: AudioClip) -> np.ndarray:
        data = self._decode(
            self._fetch("detector", "/v1/embed_audio", self._score_payload(clip)),
            "/v1/embed_audio",
        )
        return self._vector_from(data, "/v1/embed_audio")

    def text_embed(self, text: str) -> np.ndarray:
        if not text.strip():
            raise ValueError("cannot embed empty text")
        data = self._decode(
            self._fetch("embedder", "/v1/embed_text", {"text": text}), "/v1/embed_text"
        )
        return self._vector_from(data, "/v1/embed_text")

    def mlm_candidates(
        self, tokens: Sequence[str], mask_index: int, top_k: int
    ) -> list[tuple[str, float]]:
        """Up to top_k distinct single-word candidates, best first."""
        if not 0 <= mask_index < len(tokens):
            raise ValueError(f"mask index {mask_index} out of range for {len(tokens)} tokens")
        if top_k < 1:
            raise ValueError("top_k must be >= 1")
        payload = {"tokens": list(tokens), "mask_index": mask_index, "top_k": top_k}
        data = self._decode(self._fetch("mlm", "/v1/mlm", payload), "/v1/mlm")
        try:
            raw = [(str(c["word"]), float(c["score"])) for c in data["candidates"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponse(f"/v1/mlm: {exc}") from exc
        masked = tokens[mask_index].lower()
        out: list[tuple[str, float]] = []
        seen: set[str] = set()
        for word, score in sorted(raw, key=lambda ws: -ws[1]):
            low = word.lower()
            # enforce the contract even against a sloppy host
            if not word or " " in word or "_" in word or low == masked or low in seen:
                continue
            seen.add(low)
            out.append((word, score))
            if len(out) == top_k:
                break
        return out

    def annotate(self, text: str) -> Annotations:
        if not text.strip():
            raise ValueError("cannot annotate empty text")
        data = self._decode(self._fetch("annotator", "/v1/annotate", {"text": text}),
                            "/v1/annotate")
        for field in ("pos_tags", "syntax_depth", "token_ppl", "phoneme_ppl", "aesthetics"):
            if field not in data:
                raise PartialAnnotation(field)
        if isinstance(data["aesthetics"], dict):
            for sub in ("ce", "cu", "pc", "pq"):
                if sub not in data["aesthetics"]:
                    raise PartialAnnotation(f"aesthetics.{sub}")
        try:
            aes = data["aesthetics"]
            return Annotations(
                pos_tags=tuple(str(t) for t in data["pos_tags"]),
                syntax_depth=int(data["syntax_depth"]),
                token_ppl=float(data["token_ppl"]),
                phoneme_ppl=float(data["phoneme_ppl"]),
                aesthetics=Aesthetics(
                    ce=float(aes["ce"]),
                    cu=float(aes["cu"]),
                    pc=float(aes["pc"]),
                    pq=float(aes["pq"]),
                ),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponse(f"/v1/annotate: {exc}") from exc


def stub_gateway(seed: int, voice_id: str = "default", cache: ResponseCache | None = None) -> OracleGateway:
    """Gateway with every role served by the seeded in-process stub."""
    return OracleGateway(
        OracleConfig(endpoint=f"stub:{seed}", voice_id=voice_id), cache=cache
    )
