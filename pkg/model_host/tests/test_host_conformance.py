import contextlib
import threading
from http.server import ThreadingHTTPServer

from _host_http import running_host
from model_host.backends import build_backends
from model_host.config import HostConfig
from model_host.conformance import conformance_suite
from model_host.server import Dispatcher, _make_handler, canonical

ALL_CHECKS = (
    "health-ok",
    "synthesize-schema",
    "synthesize-determinism",
    "score-roundtrip-range",
    "score-determinism",
    "embed-audio-schema",
    "embed-text-schema",
    "mlm-schema",
    "annotate-schema",
    "unknown-post-404",
    "unknown-get-404",
    "bad-json-400",
)


@contextlib.contextmanager
def doctored_host(backends, token=""):
    """Serve an arbitrary backends dict, bypassing config validation."""
    health = canonical({"backends": {role: "doctored" for role in backends}, "ok": True})
    server = ThreadingHTTPServer(
        ("127.0.0.1", 0), _make_handler(Dispatcher(backends), token, health)
    )
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}"
    finally:
        server.shutdown()
        server.server_close()


def test_own_host_passes_every_check(tokened_host_url):
    report = conformance_suite(tokened_host_url, token="sesame")
    assert [e.name for e in report.entries] == list(ALL_CHECKS) + ["auth-required-401"]
    assert report.ok, report.failures
    assert report.failures == ()


def test_tokenless_host_skips_the_auth_check(host_url):
    report = conformance_suite(host_url)
    assert [e.name for e in report.entries] == list(ALL_CHECKS)
    assert report.ok, report.failures


def test_missing_annotator_fails_exactly_that_check():
    cfg = HostConfig(
        port=0,
        backends={role: "reference" for role in ("tts", "detector", "embedder", "mlm")},
    )
    with running_host(cfg) as url:
        report = conformance_suite(url)
    assert not report.ok
    assert [e.name for e in report.failures] == ["annotate-schema"]
    assert "404" in report.failures[0].detail


def test_out_of_range_probability_is_recorded_not_raised():
    backends = build_backends({role: "reference" for role in HostConfig().backends}, seed=11)
    backends["detector"].score = lambda blob: 1.7
    with doctored_host(backends) as url:
        report = conformance_suite(url)
    failed = {e.name: e.detail for e in report.failures}
    assert "score-roundtrip-range" in failed
    assert "outside [0, 1]" in failed["score-roundtrip-range"]
    # every other schema check still passes on its own merits
    assert "synthesize-schema" not in failed
    assert "mlm-schema" not in failed
    assert "annotate-schema" not in failed


def test_unreachable_endpoint_grades_instead_of_raising():
    report = conformance_suite("http://127.0.0.1:9", timeout=0.3)
    assert not report.ok
    assert len(report.failures) == len(report.entries)
    assert all(entry.detail for entry in report.failures)
