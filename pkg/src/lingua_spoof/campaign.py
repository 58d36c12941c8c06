"""Batch attack driver: corpus in, traces/metrics/features out.

A run is described by a TOML manifest.  Transcripts are attacked in a
worker pool but results are reduced in input order, so the emitted trace,
metrics summary, and feature CSV are byte-identical for any worker count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from .attack import (
    AttackConfig,
    AttackOutcome,
    Label,
    Strategy,
    greedy_attack,
    random_substitution_baseline,
)
from .constraints import SimPolicy
from .features import (
    FeatureVector,
    VoiceGroup,
    extract_features,
    features_to_csv,
)
from .oracles.cache import DiskCache, ResponseCache, default_cache_dir
from .oracles.gateway import OracleGateway
from .oracles.types import OracleConfig, OracleError
from .stats import classification_report
from .transcript import EmptyTranscriptError, Transcript, tokenize
from .wordnet import Lexicon, bundled_lexicon, load_lexicon

TRACE_SCHEMA_VERSION = 1

_ROLES = ("tts", "detector", "embedder", "mlm", "annotator")
_METHODS = ("greedy", "random")


class ManifestError(ValueError):
    """The run manifest is missing, malformed, or self-inconsistent."""


class EmptyRunError(ValueError):
    """No outcomes to summarize."""


@dataclass(frozen=True)
class RunManifest:
    corpus: Path
    output_dir: Path
    oracle_configs: dict[str, OracleConfig]
    attack: AttackConfig
    method: str = "greedy"
    seed: int = 0
    workers: int = 1
    min_tokens: int = 10
    wordnet_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.min_tokens < 1:
            raise ManifestError("min_tokens must be >= 1")
        if self.workers < 1:
            raise ManifestError("workers must be >= 1")
        if self.method not in _METHODS:
            raise ManifestError(f"method must be one of {_METHODS}, got {self.method!r}")
        missing = [role for role in _ROLES if role not in self.oracle_configs]
        if missing:
            raise ManifestError(f"oracle configs missing roles: {missing}")
        if not self.corpus.is_file():
            raise ManifestError(f"corpus not found: {self.corpus}")
        if self.wordnet_dir is not None and not self.wordnet_dir.is_dir():
            raise ManifestError(f"wordnet_dir not found: {self.wordnet_dir}")


def _oracle_config(table: dict, base: dict) -> OracleConfig:
    merged = {**base, **table}
    endpoint = merged.get("endpoint")
    if not endpoint or not isinstance(endpoint, str):
        raise ManifestError("oracle table needs a string 'endpoint'")
    kwargs = {}
    for key in ("voice_id", "timeout", "retries", "bearer_token",
                "backoff_base", "backoff_factor", "max_inflight"):
        if key in merged:
            kwargs[key] = merged[key]
    try:
        return OracleConfig(endpoint=endpoint, **kwargs)
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"bad oracle config: {exc}") from exc


def load_manifest(path: Path | str) -> RunManifest:
    """Parse and validate a TOML run manifest; all errors are fail-fast."""
    path = Path(path)
    try:
        raw = tomli.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ManifestError(f"manifest not found: {path}") from exc
    except tomli.TOMLDecodeError as exc:
        raise ManifestError(f"manifest is not valid TOML: {exc}") from exc

    run = raw.get("run", {})
    if "corpus" not in run or "output_dir" not in run:
        raise ManifestError("[run] must set corpus and output_dir")
    base_dir = path.parent

    oracles_raw = dict(raw.get("oracles", {}))
    role_tables = {
        role: dict(oracles_raw.pop(role)) for role in _ROLES if role in oracles_raw
    }
    if "endpoint" not in oracles_raw and any(
        role not in role_tables for role in _ROLES
    ):
        raise ManifestError("[oracles] needs a default endpoint or all five roles")
    configs = {
        role: _oracle_config(role_tables.get(role, {}), oracles_raw)
        for role in _ROLES
    }

    atk = raw.get("attack", {})
    try:
        strategy = Strategy(atk.get("strategy", "wordnet"))
    except ValueError as exc:
        raise ManifestError(f"unknown strategy {atk.get('strategy')!r}") from exc
    try:
        policy = SimPolicy(
            delta=atk.get("delta", 0.84),
            require_pos_match=atk.get("require_pos_match", True),
            skip_stopwords=atk.get("skip_stopwords", True),
        )
        attack = AttackConfig(
            strategy=strategy,
            policy=policy,
            budget=atk.get("budget", 500),
            threshold=atk.get("threshold", 0.5),
            candidates_per_word=atk.get("candidates_per_word"),
            voice_id=configs["tts"].voice_id,
            max_positions=atk.get("max_positions"),
        )
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"bad attack config: {exc}") from exc

    wordnet_dir = run.get("wordnet_dir")
    return RunManifest(
        corpus=(base_dir / run["corpus"]).resolve(),
        output_dir=(base_dir / run["output_dir"]).resolve(),
        oracle_configs=configs,
        attack=attack,
        method=run.get("method", "greedy"),
        seed=run.get("seed", 0),
        workers=run.get("workers", os.cpu_count() or 1),
        min_tokens=run.get("min_tokens", 10),
        wordnet_dir=(base_dir / wordnet_dir).resolve() if wordnet_dir else None,
    )


@dataclass(frozen=True)
class SkipEntry:
    index: int
    transcript_id: str
    reason: str


def load_corpus(
    path: Path, min_tokens: int
) -> tuple[list[Transcript], list[SkipEntry]]:
    """One transcript per line, optionally ``id<TAB>text``.

    Blank lines and ``#`` comments are ignored; lines under the token floor
    land in the skip list instead of the corpus.
    """
    kept: list[Transcript] = []
    skipped: list[SkipEntry] = []
    index = 0
    for line_no, line in enumerate(
        path.read_text(encoding="utf-8").splitlines(), start=1
    ):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "\t" in line:
            tid, text = line.split("\t", 1)
            tid = tid.strip()
        else:
            tid, text = f"line-{line_no}", line
        try:
            t = tokenize(text, transcript_id=tid)
        except EmptyTranscriptError:
            skipped.append(SkipEntry(index, tid, "empty after tokenization"))
            index += 1
            continue
        if len(t.tokens) < min_tokens:
            skipped.append(
                SkipEntry(index, tid, f"{len(t.tokens)} tokens < min_tokens {min_tokens}")
            )
            index += 1
            continue
        kept.append(t)
        index += 1
    return kept, skipped


@dataclass(frozen=True)
class MetricsSummary:
    """Campaign-level accuracy accounting, percentages on a 0-100 scale."""

    n_total: int
    n_originally_correct: int
    n_correct_under_attack: int
    n_flipped: int
    oc: float
    aua: float
    asr: float
    cos: float

    def to_json(self) -> str:
        payload = {
            "v": TRACE_SCHEMA_VERSION,
            "n_total": self.n_total,
            "n_originally_correct": self.n_originally_correct,
            "n_correct_under_attack": self.n_correct_under_attack,
            "n_flipped": self.n_flipped,
            "oc": self.oc,
            "aua": self.aua,
            "asr": self.asr,
            "cos": self.cos,
        }
        return json.dumps(payload, sort_keys=True)


def metrics_from_counts(
    n_total: int,
    n_originally_correct: int,
    n_correct_under_attack: int,
    cos: float = 100.0,
) -> MetricsSummary:
    """Summary from raw counts; ASR denominator 0 yields ASR 0."""
    if n_total <= 0:
        raise EmptyRunError("no samples")
    if not 0 <= n_correct_under_attack <= n_originally_correct <= n_total:
        raise ValueError(
            "counts must satisfy 0 <= under_attack <= originally_correct <= total"
        )
    n_flipped = n_originally_correct - n_correct_under_attack
    asr = (
        100.0 * n_flipped / n_originally_correct if n_originally_correct else 0.0
    )
    return MetricsSummary(
        n_total=n_total,
        n_originally_correct=n_originally_correct,
        n_correct_under_attack=n_correct_under_attack,
        n_flipped=n_flipped,
        oc=100.0 * n_originally_correct / n_total,
        aua=100.0 * n_correct_under_attack / n_total,
        asr=asr,
        cos=cos,
    )


def compute_metrics(outcomes: list[AttackOutcome]) -> MetricsSummary:
    """OC/AUA/ASR/COS over a batch of outcomes.

    A sample counts as originally correct when the detector scored the
    un-attacked clip spoof; pre-attack bona-fide samples only grow the
    total.  COS averages the final-pair similarity of attacked samples.
    """
    if not outcomes:
        raise EmptyRunError("no outcomes")
    for o in outcomes:
        if o.initial_score is None:
            raise ValueError("every outcome needs a pre-attack detector score")
    originally_correct = [o for o in outcomes if o.initial_label is Label.SPOOF]
    still_correct = [o for o in originally_correct if not o.flipped]
    sims = [o.semantic_sim for o in originally_correct]
    cos = 100.0 * (sum(sims) / len(sims)) if sims else 100.0
    return metrics_from_counts(
        n_total=len(outcomes),
        n_originally_correct=len(originally_correct),
        n_correct_under_attack=len(still_correct),
        cos=cos,
    )


def outcome_to_trace_row(
    outcome: AttackOutcome, index: int, detector: str, voice: str
) -> dict:
    return {
        "v": TRACE_SCHEMA_VERSION,
        "index": index,
        "id": outcome.source.id or f"sample-{index}",
        "detector": detector,
        "voice": voice,
        "source": outcome.source.raw,
        "adversarial": outcome.adversarial.raw,
        "records": [
            {
                "position": r.position,
                "original": r.original,
                "replacement": r.replacement,
                "score_before": r.score_before,
                "score_after": r.score_after,
            }
            for r in outcome.records
        ],
        "flipped": outcome.flipped,
        "queries_used": outcome.queries_used,
        "semantic_sim": outcome.semantic_sim,
        "initial_score": outcome.initial_score,
        "terminal_score": outcome.terminal_score,
        "threshold": outcome.threshold,
    }


def trace_to_json_lines(rows: list[dict]) -> str:
    return "".join(json.dumps(row, sort_keys=True) + "\n" for row in rows)


@dataclass
class CampaignResult:
    outcomes: list[AttackOutcome]
    metrics: MetricsSummary
    features: list[FeatureVector]
    skipped: list[SkipEntry]
    trace_path: Path
    metrics_path: Path
    features_path: Path
    skip_log_path: Path
    paths: dict[str, Path] = field(default_factory=dict)


def build_gateway(
    configs: dict[str, OracleConfig], cache: ResponseCache | None
) -> OracleGateway:
    return OracleGateway(
        configs["tts"],
        tts=configs["tts"],
        detector=configs["detector"],
        embedder=configs["embedder"],
        mlm=configs["mlm"],
        annotator=configs["annotator"],
        cache=cache,
    )


def _attack_one(
    t: Transcript,
    manifest: RunManifest,
    gateway: OracleGateway,
    lexicon: Lexicon,
) -> AttackOutcome:
    if manifest.method == "greedy":
        return greedy_attack(t, manifest.attack, gateway, lexicon)
    return random_substitution_baseline(
        t, manifest.attack, gateway, lexicon, seed=manifest.seed
    )


def run_attack_campaign(
    manifest: RunManifest, cache: ResponseCache | None = None
) -> CampaignResult:
    """Execute the manifest end to end and write all artifacts.

    Raises OracleError when no oracle endpoint is healthy; per-sample
    oracle failures mark the sample skipped and the run continues.
    """
    cache = cache if cache is not None else DiskCache(default_cache_dir())
    gateway = build_gateway(manifest.oracle_configs, cache)
    health = gateway.health()
    down = sorted(endpoint for endpoint, ok in health.items() if not ok)
    if down:
        raise OracleError(f"oracle endpoints unhealthy: {', '.join(down)}")

    if manifest.wordnet_dir is not None:
        index_files = sorted(manifest.wordnet_dir.glob("index.*"))
        data_files = sorted(manifest.wordnet_dir.glob("data.*"))
        lexicon = load_lexicon(index_files, data_files)
    else:
        lexicon = bundled_lexicon()

    transcripts, skipped = load_corpus(manifest.corpus, manifest.min_tokens)
    skipped = list(skipped)

    results: list[AttackOutcome | None] = [None] * len(transcripts)
    failures: list[tuple[int, str]] = []

    def job(i: int) -> None:
        try:
            results[i] = _attack_one(transcripts[i], manifest, gateway, lexicon)
        except OracleError as exc:
            failures.append((i, str(exc)))

    if manifest.workers == 1:
        for i in range(len(transcripts)):
            job(i)
    else:
        with ThreadPoolExecutor(max_workers=manifest.workers) as pool:
            list(pool.map(job, range(len(transcripts))))

    for i, message in sorted(failures):
        skipped.append(
            SkipEntry(i, transcripts[i].id or f"sample-{i}", f"oracle failure: {message}")
        )
    ordered = [(i, o) for i, o in enumerate(results) if o is not None]
    outcomes = [o for _, o in ordered]
    if not outcomes:
        raise EmptyRunError("every sample failed or was filtered out")

    metrics = compute_metrics(outcomes)
    detector_label = manifest.oracle_configs["detector"].endpoint
    voice = manifest.oracle_configs["tts"].voice_id
    rows = [
        outcome_to_trace_row(o, i, detector_label, voice) for i, o in ordered
    ]

    # Model-level context shared by every feature row: the voice group over
    # original clips and the detector's baseline report on the same clips.
    orig_clips = [gateway.synthesize(o.source.raw) for o in outcomes]
    pert_clips = [gateway.synthesize(o.adversarial.raw) for o in outcomes]
    group = VoiceGroup(
        voice_id=voice,
        embeddings=tuple(gateway.detector_embed(c) for c in orig_clips),
    )
    y_true = ["spoof"] * len(outcomes)
    y_pred = [o.initial_label.value for o in outcomes]
    baseline_report = classification_report(y_true, y_pred)
    features = [
        extract_features(o, (co, cp), group, baseline_report, gateway)
        for o, co, cp in zip(outcomes, orig_clips, pert_clips)
    ]

    out = manifest.output_dir
    out.mkdir(parents=True, exist_ok=True)
    trace_path = out / "trace.jsonl"
    metrics_path = out / "metrics.json"
    features_path = out / "features.csv"
    skip_log_path = out / "skips.log"
    trace_path.write_text(trace_to_json_lines(rows), encoding="utf-8")
    metrics_path.write_text(metrics.to_json() + "\n", encoding="utf-8")
    features_path.write_text(features_to_csv(features), encoding="utf-8")
    skip_log_path.write_text(
        "".join(
            f"{s.index}\t{s.transcript_id}\t{s.reason}\n"
            for s in sorted(skipped, key=lambda s: s.index)
        ),
        encoding="utf-8",
    )
    return CampaignResult(
        outcomes=outcomes,
        metrics=metrics,
        features=features,
        skipped=sorted(skipped, key=lambda s: s.index),
        trace_path=trace_path,
        metrics_path=metrics_path,
        features_path=features_path,
        skip_log_path=skip_log_path,
        paths={
            "trace": trace_path,
            "metrics": metrics_path,
            "features": features_path,
            "skips": skip_log_path,
        },
    )


def read_trace(path: Path | str) -> list[dict]:
    """Load and version-check a JSON-lines trace."""
    rows: list[dict] = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        row = json.loads(line)
        if row.get("v") != TRACE_SCHEMA_VERSION:
            raise ValueError(
                f"trace line {line_no}: unsupported schema version {row.get('v')!r}"
            )
        rows.append(row)
    return rows


def metrics_from_trace(rows: list[dict]) -> MetricsSummary:
    """Recompute the summary straight from trace rows."""
    if not rows:
        raise EmptyRunError("trace is empty")
    n_total = len(rows)
    for r in rows:
        if r["initial_score"] is None:
            raise ValueError(f"trace row {r['index']} has no initial_score")
    attacked = [r for r in rows if r["initial_score"] < r["threshold"]]
    still = [r for r in attacked if not r["flipped"]]
    sims = [float(r["semantic_sim"]) for r in attacked]
    cos = 100.0 * (sum(sims) / len(sims)) if sims else 100.0
    if not math.isfinite(cos):
        raise ValueError("non-finite semantic similarity in trace")
    return metrics_from_counts(n_total, len(attacked), len(still), cos)
