"""HTTP front end exposing the backends over the oracle wire protocol."""

from __future__ import annotations

import base64
import binascii
import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .backends import build_backends
from .calibration import CalibrationFailed, calibrate_detector
from .config import HostConfig

log = logging.getLogger("model_host")


def canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _require(payload: dict, field: str, kind: type):
    value = payload.get(field)
    # bool is an int subclass and would silently pass an int check
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ValueError(f"field {field!r} must be {kind.__name__}")
    return value


def _decode_blob(payload: dict) -> bytes:
    encoded = _require(payload, "wav_b64", str)
    try:
        return base64.b64decode(encoded, validate=True)
    except binascii.Error as exc:
        raise ValueError(f"wav_b64 is not valid base64: {exc}") from exc


class Dispatcher:
    """Maps wire routes onto whichever backends the config enabled."""

    def __init__(self, backends: dict[str, object]):
        self.backends = backends

    def _backend(self, role: str, route: str):
        backend = self.backends.get(role)
        if backend is None:
            raise LookupError(f"unknown route: {route} (no {role} backend)")
        return backend

    def handle(self, route: str, payload: dict) -> bytes:
        if route == "/v1/synthesize":
            tts = self._backend("tts", route)
            voice = payload.get("voice_id")
            if voice is not None and not isinstance(voice, str):
                raise ValueError("field 'voice_id' must be str or null")
            rate, blob = tts.synthesize(_require(payload, "text", str), voice)
            encoded = base64.b64encode(blob).decode("ascii")
            return canonical({"sample_rate": rate, "wav_b64": encoded})
        if route == "/v1/score":
            detector = self._backend("detector", route)
            prob = detector.score(_decode_blob(payload))
            return canonical({"bonafide_prob": prob})
        if route == "/v1/embed_audio":
            embedder = self._backend("embedder", route)
            return canonical({"vector": embedder.embed_audio(_decode_blob(payload))})
        if route == "/v1/embed_text":
            embedder = self._backend("embedder", route)
            return canonical({"vector": embedder.embed_text(_require(payload, "text", str))})
        if route == "/v1/mlm":
            mlm = self._backend("mlm", route)
            tokens = _require(payload, "tokens", list)
            if not all(isinstance(t, str) for t in tokens):
                raise ValueError("field 'tokens' must contain only str")
            pairs = mlm.propose(
                tokens,
                _require(payload, "mask_index", int),
                _require(payload, "top_k", int),
            )
            return canonical(
                {"candidates": [{"score": score, "word": word} for word, score in pairs]}
            )
        if route == "/v1/annotate":
            annotator = self._backend("annotator", route)
            return canonical(annotator.annotate(_require(payload, "text", str)))
        raise LookupError(f"unknown route: {route}")


def _make_handler(dispatcher: Dispatcher, token: str, health_body: bytes):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt: str, *args) -> None:  # noqa: A003
            pass

        def _send(self, code: int, body: bytes) -> None:
            self.send_response(code)
            self.send_header("content-type", "application/json")
            self.send_header("content-length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _authorized(self) -> bool:
            if not token:
                return True
            return self.headers.get("authorization", "") == f"Bearer {token}"

        def do_GET(self) -> None:  # noqa: N802
            if self.path == "/v1/health":
                self._send(200, health_body)
            else:
                self._send(404, b'{"error":"not found"}')

        def do_POST(self) -> None:  # noqa: N802
            if not self._authorized():
                self._send(401, b'{"error":"unauthorized"}')
                return
            length = int(self.headers.get("content-length", "0"))
            raw = self.rfile.read(length)
            try:
                payload = json.loads(raw)
                if not isinstance(payload, dict):
                    raise ValueError("payload must be an object")
            except (ValueError, json.JSONDecodeError):
                self._send(400, b'{"error":"bad json"}')
                return
            try:
                body = dispatcher.handle(self.path, payload)
            except LookupError as exc:
                self._send(404, canonical({"error": str(exc)}))
                return
            except ValueError as exc:
                self._send(400, canonical({"error": str(exc)}))
                return
            self._send(200, body)

    return Handler


def load_calibration_clips(root: Path) -> list[tuple[bytes, str]]:
    """Read (blob, label) pairs from ``<root>/{bonafide,spoof}/*.wav``."""
    clips = []
    for label in ("bonafide", "spoof"):
        folder = root / label
        if not folder.is_dir():
            continue
        for path in sorted(folder.glob("*.wav")):
            clips.append((path.read_bytes(), label))
    if not clips:
        raise FileNotFoundError(f"no calibration clips under {root}")
    return clips


def serve(cfg: HostConfig) -> ThreadingHTTPServer:
    """Build backends, optionally calibrate, and bind the server.

    The caller owns ``serve_forever``/``shutdown``. A backend name that
    cannot be built aborts startup with every missing role listed; a
    calibration that cannot reach its accuracy bar logs a warning and
    the host serves with the detector's last state.
    """
    backends = build_backends(cfg.backends, cfg.seed)
    if cfg.calibration_path is not None and "detector" in backends:
        clips = load_calibration_clips(cfg.calibration_path)
        try:
            calibrate_detector(
                backends["detector"],
                clips,
                threshold=cfg.calibration_threshold,
                max_passes=cfg.calibration_max_passes,
            )
        except CalibrationFailed as exc:
            log.warning("serving uncalibrated: %s", exc)
    dispatcher = Dispatcher(backends)
    health_body = canonical({"backends": dict(cfg.backends), "ok": True})
    handler = _make_handler(dispatcher, cfg.token, health_body)
    return ThreadingHTTPServer((cfg.host, cfg.port), handler)
