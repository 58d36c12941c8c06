"""Command line entry points: serve, conformance, calibrate."""

from __future__ import annotations

import argparse
import logging
import sys

from .backends import build_backends
from .calibration import CalibrationFailed, calibrate_detector
from .config import ConfigError, load_config
from .conformance import conformance_suite
from .server import load_calibration_clips, serve


def _cmd_serve(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    server = serve(cfg)
    host, port = server.server_address[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _cmd_conformance(args: argparse.Namespace) -> int:
    report = conformance_suite(args.endpoint, token=args.token, timeout=args.timeout)
    for entry in report.entries:
        mark = "ok" if entry.passed else "FAIL"
        suffix = f": {entry.detail}" if entry.detail else ""
        print(f"[{mark:>4}] {entry.name}{suffix}")
    print(f"{len(report.entries) - len(report.failures)}/{len(report.entries)} checks passed")
    return 0 if report.ok else 1


def _cmd_calibrate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if cfg.calibration_path is None:
        print("config has no calibration path", file=sys.stderr)
        return 2
    backends = build_backends(cfg.backends, cfg.seed)
    detector = backends.get("detector")
    if detector is None:
        print("config enables no detector backend", file=sys.stderr)
        return 2
    clips = load_calibration_clips(cfg.calibration_path)
    try:
        state = calibrate_detector(
            detector,
            clips,
            threshold=cfg.calibration_threshold,
            max_passes=cfg.calibration_max_passes,
        )
    except CalibrationFailed as exc:
        print(f"calibration failed: {exc}", file=sys.stderr)
        return 1
    print(f"calibrated in {state.passes} pass(es) over {len(clips)} clips")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="model-host", description="Serve model backends over the oracle wire protocol."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP server")
    p_serve.add_argument("--config", required=True, help="host config TOML")
    p_serve.set_defaults(fn=_cmd_serve)

    p_conf = sub.add_parser("conformance", help="probe a live endpoint")
    p_conf.add_argument("--endpoint", required=True, help="base URL, e.g. http://127.0.0.1:8111")
    p_conf.add_argument("--token", default="", help="bearer token the endpoint expects")
    p_conf.add_argument("--timeout", type=float, default=10.0)
    p_conf.set_defaults(fn=_cmd_conformance)

    p_cal = sub.add_parser("calibrate", help="run detector calibration without serving")
    p_cal.add_argument("--config", required=True, help="host config TOML")
    p_cal.set_defaults(fn=_cmd_calibrate)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, FileNotFoundError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
