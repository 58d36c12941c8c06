"""Result tables: one row per (detector, voice) group of a trace.

Markdown output bolds each detector's highest-ASR row, the convention used
to flag the most effective voice against that detector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .campaign import MetricsSummary, metrics_from_trace

FORMATS = ("jsonl", "csv", "markdown")


class IoError(OSError):
    """Report file could not be written."""


@dataclass(frozen=True)
class ReportRow:
    detector: str
    voice: str
    metrics: MetricsSummary


def rows_from_trace(rows: list[dict]) -> list[ReportRow]:
    """Group trace rows by (detector, voice) and summarize each group."""
    groups: dict[tuple[str, str], list[dict]] = {}
    for row in rows:
        groups.setdefault((row["detector"], row["voice"]), []).append(row)
    return [
        ReportRow(detector=d, voice=v, metrics=metrics_from_trace(groups[(d, v)]))
        for d, v in sorted(groups)
    ]


def _bold_keys(rows: list[ReportRow]) -> set[tuple[str, str]]:
    best: dict[str, ReportRow] = {}
    for row in rows:
        kept = best.get(row.detector)
        if kept is None or row.metrics.asr > kept.metrics.asr:
            best[row.detector] = row
    return {(r.detector, r.voice) for r in best.values()}


def report_jsonl(rows: list[ReportRow]) -> str:
    lines = []
    for row in rows:
        m = row.metrics
        lines.append(
            json.dumps(
                {
                    "detector": row.detector,
                    "voice": row.voice,
                    "n_total": m.n_total,
                    "n_originally_correct": m.n_originally_correct,
                    "n_correct_under_attack": m.n_correct_under_attack,
                    "n_flipped": m.n_flipped,
                    "oc": m.oc,
                    "aua": m.aua,
                    "asr": m.asr,
                    "cos": m.cos,
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def report_csv(rows: list[ReportRow]) -> str:
    lines = ["detector,voice,n_total,oc,aua,asr,cos"]
    for row in rows:
        m = row.metrics
        lines.append(
            f"{row.detector},{row.voice},{m.n_total},"
            f"{m.oc:.1f},{m.aua:.1f},{m.asr:.1f},{m.cos:.1f}"
        )
    return "\n".join(lines) + "\n"


def report_markdown(rows: list[ReportRow]) -> str:
    bold = _bold_keys(rows)
    lines = [
        "| detector | voice | n | OC | AUA | ASR | COS |",
        "| --- | --- | ---: | ---: | ---: | ---: | ---: |",
    ]
    for row in rows:
        m = row.metrics
        cells = [
            row.detector,
            row.voice,
            str(m.n_total),
            f"{m.oc:.1f}",
            f"{m.aua:.1f}",
            f"{m.asr:.1f}",
            f"{m.cos:.1f}",
        ]
        if (row.detector, row.voice) in bold:
            cells = [f"**{c}**" for c in cells]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_report(rows: list[ReportRow], fmt: str, path: Path | str) -> Path:
    """Write the table in the requested format; returns the output path."""
    if not rows:
        raise ValueError("nothing to report")
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    renderers = {
        "jsonl": report_jsonl,
        "csv": report_csv,
        "markdown": report_markdown,
    }
    text = renderers[fmt](rows)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write report to {path}: {exc}") from exc
    return path
