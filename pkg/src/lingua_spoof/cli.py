"""Command-line entry points.

Subcommands: attack (run a manifest), metrics (summarize a trace),
features (rebuild the feature CSV from a trace), analyze (VIF screening,
logistic regression, t-tests over a feature CSV), report (benchmark-style
tables), and stub-serve (host the deterministic stub oracles over HTTP).

Exit codes: 0 success, 1 oracle or runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np

from .attack import AttackOutcome
from .campaign import (
    EmptyRunError,
    ManifestError,
    build_gateway,
    load_manifest,
    metrics_from_trace,
    read_trace,
    run_attack_campaign,
)
from .features import (
    FEATURE_COLUMNS,
    VoiceGroup,
    extract_features,
    features_to_csv,
    read_features_csv,
)
from .oracles.cache import DiskCache, default_cache_dir
from .oracles.stubs import StubTransport
from .oracles.types import OracleError
from .reporting import FORMATS, emit_report, report_csv, report_jsonl, report_markdown, rows_from_trace
from .stats import (
    DesignMatrix,
    classification_report,
    drop_high_vif,
    logistic_fit,
    regression_csv,
    regression_markdown,
    standardize,
    ttest_csv,
    ttest_markdown,
    vif,
    welch_t_test,
)
from .transcript import tokenize


def _cmd_attack(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    result = run_attack_campaign(manifest)
    print(result.metrics.to_json())
    for name, path in sorted(result.paths.items()):
        print(f"{name}: {path}", file=sys.stderr)
    if result.skipped:
        print(f"skipped {len(result.skipped)} sample(s)", file=sys.stderr)
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    rows = read_trace(args.trace)
    summary = metrics_from_trace(rows)
    text = summary.to_json()
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def _outcome_from_row(row: dict) -> AttackOutcome:
    source = tokenize(row["source"], transcript_id=row["id"])
    adversarial = tokenize(row["adversarial"], transcript_id=row["id"])
    return AttackOutcome(
        source=source,
        adversarial=adversarial,
        records=(),
        flipped=row["flipped"],
        queries_used=row["queries_used"],
        semantic_sim=row["semantic_sim"],
        terminal_score=row["terminal_score"],
        initial_score=row["initial_score"],
        threshold=row["threshold"],
    )


def _cmd_features(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    rows = read_trace(args.trace)
    if not rows:
        raise EmptyRunError("trace is empty")
    gateway = build_gateway(
        manifest.oracle_configs, DiskCache(default_cache_dir())
    )
    outcomes = [_outcome_from_row(r) for r in rows]
    orig_clips = [gateway.synthesize(o.source.raw) for o in outcomes]
    pert_clips = [gateway.synthesize(o.adversarial.raw) for o in outcomes]
    group = VoiceGroup(
        voice_id=rows[0]["voice"],
        embeddings=tuple(gateway.detector_embed(c) for c in orig_clips),
    )
    report = classification_report(
        ["spoof"] * len(outcomes),
        [o.initial_label.value for o in outcomes],
    )
    vectors = [
        extract_features(o, (co, cp), group, report, gateway)
        for o, co, cp in zip(outcomes, orig_clips, pert_clips)
    ]
    text = features_to_csv(vectors)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    print(f"wrote {len(vectors)} rows to {out}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    matrix, header = read_features_csv(Path(args.features).read_text(encoding="utf-8"))
    if tuple(header) != FEATURE_COLUMNS:
        print(
            f"warning: feature columns differ from the standard set: {header}",
            file=sys.stderr,
        )
    rows = read_trace(args.trace)
    if len(rows) != matrix.shape[0]:
        raise ValueError(
            f"trace has {len(rows)} rows but feature CSV has {matrix.shape[0]}"
        )
    y = np.array([1.0 if r["flipped"] else 0.0 for r in rows])

    # Constant columns carry no information and break standardization.
    # max-min is exact for identical values; std accumulates rounding error.
    spans = matrix.max(axis=0) - matrix.min(axis=0)
    keep = [i for i, s in enumerate(spans) if s > 0.0]
    dropped_constant = [header[i] for i, s in enumerate(spans) if s == 0.0]
    if dropped_constant:
        print(
            "dropping constant column(s): " + ", ".join(dropped_constant),
            file=sys.stderr,
        )
    if len(keep) == 0:
        raise ValueError("all feature columns are constant; nothing to analyze")
    design = DesignMatrix(
        matrix[:, keep], tuple(header[i] for i in keep), y
    )
    scaled, _, _ = standardize(design)
    factors = vif(scaled)
    screened, dropped_vif = drop_high_vif(scaled)
    summary = logistic_fit(screened)
    summary = type(summary)(
        names=summary.names,
        coef=summary.coef,
        std_err=summary.std_err,
        z=summary.z,
        p_two_sided=summary.p_two_sided,
        converged=summary.converged,
        iterations=summary.iterations,
        quasi_separation=summary.quasi_separation,
        dropped_for_vif=tuple(dropped_vif),
    )

    flipped_mask = y == 1.0
    tests = {}
    for j, name in enumerate(scaled.column_names):
        a = scaled.rows[flipped_mask, j]
        b = scaled.rows[~flipped_mask, j]
        try:
            tests[name] = welch_t_test(a, b)
        except Exception as exc:  # noqa: BLE001 - degenerate split, note and move on
            print(f"t-test skipped for {name}: {exc}", file=sys.stderr)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    vif_lines = ["feature,vif"] + [
        f"{n},{f:.10g}" for n, f in zip(scaled.column_names, factors)
    ]
    (out_dir / "vif.csv").write_text("\n".join(vif_lines) + "\n", encoding="utf-8")
    (out_dir / "regression.csv").write_text(regression_csv(summary), encoding="utf-8")
    (out_dir / "regression.md").write_text(
        regression_markdown(summary), encoding="utf-8"
    )
    (out_dir / "ttests.csv").write_text(ttest_csv(tests), encoding="utf-8")
    (out_dir / "ttests.md").write_text(ttest_markdown(tests), encoding="utf-8")
    print(regression_markdown(summary))
    print(ttest_markdown(tests))
    if not summary.converged:
        print("warning: logistic fit did not converge", file=sys.stderr)
    if summary.quasi_separation:
        print("warning: quasi-separation detected", file=sys.stderr)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    rows = rows_from_trace(read_trace(args.trace))
    if args.out:
        emit_report(rows, args.format, args.out)
        print(f"wrote {args.out}")
    else:
        renderer = {
            "jsonl": report_jsonl,
            "csv": report_csv,
            "markdown": report_markdown,
        }[args.format]
        sys.stdout.write(renderer(rows))
    return 0


def _make_stub_handler(transport: StubTransport, token: str):
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
                self._send(200, b'{"ok":true}')
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
                body = transport.request(self.path, payload)
            except OracleError as exc:
                message = json.dumps({"error": str(exc)}).encode()
                code = 404 if "unknown route" in str(exc) else 400
                self._send(code, message)
                return
            self._send(200, body)

    return Handler


def serve_stub(seed: int, host: str, port: int, token: str = "") -> ThreadingHTTPServer:
    """Start the stub oracle server; caller owns shutdown."""
    handler = _make_stub_handler(StubTransport(seed), token)
    server = ThreadingHTTPServer((host, port), handler)
    return server


def _cmd_stub_serve(args: argparse.Namespace) -> int:
    server = serve_stub(args.seed, args.host, args.port, args.token)
    host, port = server.server_address[:2]
    print(f"stub oracles (seed {args.seed}) listening on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lingua-spoof",
        description="Transcript-level attacks on audio anti-spoofing detectors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_attack = sub.add_parser("attack", help="run an attack campaign from a manifest")
    p_attack.add_argument("--manifest", required=True, help="TOML run manifest")
    p_attack.set_defaults(fn=_cmd_attack)

    p_metrics = sub.add_parser("metrics", help="summarize a trace file")
    p_metrics.add_argument("--trace", required=True)
    p_metrics.add_argument("--out", default=None, help="also write JSON here")
    p_metrics.set_defaults(fn=_cmd_metrics)

    p_features = sub.add_parser("features", help="rebuild the feature CSV from a trace")
    p_features.add_argument("--trace", required=True)
    p_features.add_argument("--manifest", required=True, help="supplies oracle endpoints")
    p_features.add_argument("--out", required=True)
    p_features.set_defaults(fn=_cmd_features)

    p_analyze = sub.add_parser(
        "analyze", help="VIF screening, logistic regression, and t-tests"
    )
    p_analyze.add_argument("--features", required=True)
    p_analyze.add_argument(
        "--trace", required=True, help="supplies the flipped/not-flipped labels"
    )
    p_analyze.add_argument("--out-dir", required=True)
    p_analyze.set_defaults(fn=_cmd_analyze)

    p_report = sub.add_parser("report", help="render OC/AUA/ASR/COS tables")
    p_report.add_argument("--trace", required=True)
    p_report.add_argument("--format", choices=FORMATS, default="markdown")
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(fn=_cmd_report)

    p_serve = sub.add_parser("stub-serve", help="host the stub oracles over HTTP")
    p_serve.add_argument("--seed", type=int, required=True)
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--token", default="", help="require this bearer token")
    p_serve.set_defaults(fn=_cmd_stub_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    except (OracleError, EmptyRunError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
