"""Black-box protocol conformance probes.

``conformance_suite`` exercises a live endpoint over HTTP and grades
schema shape, value ranges, determinism, and error statuses. Every
problem, transport failures included, lands in the report as a failed
entry; the suite never raises. A host that passes is interchangeable
with any other passing host from a client's point of view.
"""

from __future__ import annotations

import base64
import json
import math
import urllib.error
import urllib.request
from dataclasses import dataclass, field

PROBE_TEXT = "hello world"
PROBE_VOICE = "conformance-probe"
MLM_TOKENS = ["the", "weather", "is", "nice", "today"]
MLM_MASK = 3
MLM_TOP_K = 5
ANNOTATE_KEYS = frozenset(
    {"aesthetics", "phoneme_ppl", "pos_tags", "syntax_depth", "token_ppl"}
)
AESTHETICS_KEYS = frozenset({"ce", "cu", "pc", "pq"})


class CheckFailure(Exception):
    """Why one conformance check did not hold."""


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ConformanceReport:
    endpoint: str
    entries: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(entry.passed for entry in self.entries)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(entry for entry in self.entries if not entry.passed)


class _Probe:
    def __init__(self, endpoint: str, token: str, timeout: float):
        self.endpoint = endpoint.rstrip("/")
        self.token = token
        self.timeout = timeout

    def _fetch(self, request: urllib.request.Request) -> tuple[int, bytes]:
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                return resp.status, resp.read()
        except urllib.error.HTTPError as exc:
            return exc.code, exc.read()
        except (urllib.error.URLError, OSError) as exc:
            raise CheckFailure(f"transport failure: {exc}") from exc

    def get(self, route: str) -> tuple[int, bytes]:
        return self._fetch(urllib.request.Request(self.endpoint + route, method="GET"))

    def post(self, route: str, payload, *, raw: bytes | None = None, auth: bool = True):
        body = raw if raw is not None else json.dumps(
            payload, sort_keys=True, separators=(",", ":")
        ).encode("utf-8")
        headers = {"content-type": "application/json"}
        if auth and self.token:
            headers["authorization"] = f"Bearer {self.token}"
        request = urllib.request.Request(
            self.endpoint + route, data=body, headers=headers, method="POST"
        )
        return self._fetch(request)

    def post_json(self, route: str, payload) -> dict:
        status, body = self.post(route, payload)
        if status != 200:
            raise CheckFailure(f"{route} returned {status}: {body[:120]!r}")
        parsed = json.loads(body)
        if not isinstance(parsed, dict):
            raise CheckFailure(f"{route} body is not a JSON object")
        return parsed


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailure(message)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _finite_number(value, label: str) -> float:
    _expect(_is_number(value), f"{label} must be a number, got {type(value).__name__}")
    _expect(math.isfinite(float(value)), f"{label} must be finite")
    return float(value)


def _exact_keys(obj: dict, keys: frozenset, label: str) -> None:
    got = frozenset(obj)
    _expect(got == keys, f"{label} keys {sorted(got)} != {sorted(keys)}")


def _check_wav(blob: bytes) -> None:
    _expect(len(blob) > 44, f"wav only {len(blob)} bytes")
    _expect(blob[:4] == b"RIFF" and blob[8:12] == b"WAVE", "not a RIFF/WAVE container")


def _vector_of(reply: dict, label: str) -> list[float]:
    _exact_keys(reply, frozenset({"vector"}), label)
    vec = reply["vector"]
    _expect(isinstance(vec, list) and vec, f"{label} vector must be a non-empty list")
    return [_finite_number(v, f"{label} component") for v in vec]


def conformance_suite(
    endpoint: str, token: str = "", timeout: float = 10.0
) -> ConformanceReport:
    """Probe every wire route of ``endpoint`` and grade the replies."""
    probe = _Probe(endpoint, token, timeout)
    shared: dict[str, object] = {}
    entries: list[CheckResult] = []

    def run(name: str, fn) -> None:
        try:
            fn()
        except CheckFailure as exc:
            entries.append(CheckResult(name, False, str(exc)))
        except Exception as exc:  # malformed replies must grade, not crash
            entries.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
        else:
            entries.append(CheckResult(name, True))

    def health_ok() -> None:
        status, body = probe.get("/v1/health")
        _expect(status == 200, f"health returned {status}")
        parsed = json.loads(body)
        _expect(isinstance(parsed, dict), "health body is not a JSON object")
        _expect(parsed.get("ok") is True, f"health ok flag is {parsed.get('ok')!r}")

    def synthesize_schema() -> None:
        reply = probe.post_json(
            "/v1/synthesize", {"text": PROBE_TEXT, "voice_id": PROBE_VOICE}
        )
        _exact_keys(reply, frozenset({"sample_rate", "wav_b64"}), "synthesize")
        rate = reply["sample_rate"]
        _expect(
            isinstance(rate, int) and not isinstance(rate, bool) and rate > 0,
            f"sample_rate {rate!r} must be a positive int",
        )
        _expect(isinstance(reply["wav_b64"], str), "wav_b64 must be a string")
        blob = base64.b64decode(reply["wav_b64"], validate=True)
        _check_wav(blob)
        shared["wav_b64"] = reply["wav_b64"]

    def synthesize_determinism() -> None:
        first = shared.get("wav_b64")
        _expect(first is not None, "no clip from the schema check")
        reply = probe.post_json(
            "/v1/synthesize", {"text": PROBE_TEXT, "voice_id": PROBE_VOICE}
        )
        _expect(reply.get("wav_b64") == first, "same request produced different audio")

    def score_roundtrip() -> None:
        encoded = shared.get("wav_b64")
        _expect(encoded is not None, "no clip from the schema check")
        reply = probe.post_json("/v1/score", {"wav_b64": encoded})
        _exact_keys(reply, frozenset({"bonafide_prob"}), "score")
        prob = _finite_number(reply["bonafide_prob"], "bonafide_prob")
        _expect(0.0 <= prob <= 1.0, f"bonafide_prob {prob} outside [0, 1]")
        shared["prob"] = prob

    def score_determinism() -> None:
        encoded = shared.get("wav_b64")
        _expect(encoded is not None and "prob" in shared, "no scored clip available")
        reply = probe.post_json("/v1/score", {"wav_b64": encoded})
        _expect(
            reply.get("bonafide_prob") == shared["prob"],
            "same clip produced a different score",
        )

    def embed_audio_schema() -> None:
        encoded = shared.get("wav_b64")
        _expect(encoded is not None, "no clip from the schema check")
        vec = _vector_of(probe.post_json("/v1/embed_audio", {"wav_b64": encoded}), "embed_audio")
        again = _vector_of(probe.post_json("/v1/embed_audio", {"wav_b64": encoded}), "embed_audio")
        _expect(vec == again, "same clip produced a different audio embedding")

    def embed_text_schema() -> None:
        vec = _vector_of(probe.post_json("/v1/embed_text", {"text": PROBE_TEXT}), "embed_text")
        again = _vector_of(probe.post_json("/v1/embed_text", {"text": PROBE_TEXT}), "embed_text")
        _expect(vec == again, "same text produced a different text embedding")
        other = _vector_of(
            probe.post_json("/v1/embed_text", {"text": "a completely different probe"}),
            "embed_text",
        )
        _expect(len(other) == len(vec), "text embedding dimension varies with input")

    def mlm_schema() -> None:
        payload = {"tokens": MLM_TOKENS, "mask_index": MLM_MASK, "top_k": MLM_TOP_K}
        reply = probe.post_json("/v1/mlm", payload)
        _exact_keys(reply, frozenset({"candidates"}), "mlm")
        cands = reply["candidates"]
        _expect(isinstance(cands, list), "candidates must be a list")
        _expect(1 <= len(cands) <= MLM_TOP_K, f"{len(cands)} candidates for top_k {MLM_TOP_K}")
        scores = []
        for cand in cands:
            _expect(isinstance(cand, dict), "candidate must be an object")
            _exact_keys(cand, frozenset({"score", "word"}), "candidate")
            _expect(
                isinstance(cand["word"], str) and cand["word"],
                "candidate word must be a non-empty string",
            )
            score = _finite_number(cand["score"], "candidate score")
            _expect(0.0 <= score <= 1.0, f"candidate score {score} outside [0, 1]")
            scores.append(score)
        _expect(
            all(a >= b for a, b in zip(scores, scores[1:])),
            "candidate scores are not in descending order",
        )
        again = probe.post_json("/v1/mlm", payload)
        _expect(again == reply, "same mlm request produced different candidates")

    def annotate_schema() -> None:
        reply = probe.post_json("/v1/annotate", {"text": PROBE_TEXT})
        _exact_keys(reply, ANNOTATE_KEYS, "annotate")
        aes = reply["aesthetics"]
        _expect(isinstance(aes, dict), "aesthetics must be an object")
        _exact_keys(aes, AESTHETICS_KEYS, "aesthetics")
        for key in sorted(AESTHETICS_KEYS):
            value = _finite_number(aes[key], f"aesthetics {key}")
            _expect(0.0 <= value <= 10.0, f"aesthetics {key} {value} outside [0, 10]")
        for key in ("token_ppl", "phoneme_ppl"):
            _expect(_finite_number(reply[key], key) >= 1.0, f"{key} below 1")
        tags = reply["pos_tags"]
        _expect(isinstance(tags, list), "pos_tags must be a list")
        _expect(
            all(isinstance(t, str) and t for t in tags),
            "pos_tags must contain non-empty strings",
        )
        _expect(
            len(tags) == len(PROBE_TEXT.split()),
            f"{len(tags)} tags for {len(PROBE_TEXT.split())} words",
        )
        depth = reply["syntax_depth"]
        _expect(
            isinstance(depth, int) and not isinstance(depth, bool) and depth >= 1,
            f"syntax_depth {depth!r} must be an int >= 1",
        )

    def unknown_post_404() -> None:
        status, _ = probe.post("/v1/definitely-not-a-route", {"x": 1})
        _expect(status == 404, f"unknown POST route returned {status}")

    def unknown_get_404() -> None:
        status, _ = probe.get("/v1/definitely-not-a-route")
        _expect(status == 404, f"unknown GET path returned {status}")

    def bad_json_400() -> None:
        status, _ = probe.post("/v1/score", None, raw=b"{nope")
        _expect(status == 400, f"malformed JSON returned {status}")

    def auth_required_401() -> None:
        status, _ = probe.post("/v1/embed_text", {"text": PROBE_TEXT}, auth=False)
        _expect(status == 401, f"unauthenticated POST returned {status}")

    run("health-ok", health_ok)
    run("synthesize-schema", synthesize_schema)
    run("synthesize-determinism", synthesize_determinism)
    run("score-roundtrip-range", score_roundtrip)
    run("score-determinism", score_determinism)
    run("embed-audio-schema", embed_audio_schema)
    run("embed-text-schema", embed_text_schema)
    run("mlm-schema", mlm_schema)
    run("annotate-schema", annotate_schema)
    run("unknown-post-404", unknown_post_404)
    run("unknown-get-404", unknown_get_404)
    run("bad-json-400", bad_json_400)
    if token:
        run("auth-required-401", auth_required_401)
    return ConformanceReport(endpoint=probe.endpoint, entries=tuple(entries))
