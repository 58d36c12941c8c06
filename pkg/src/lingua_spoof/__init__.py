"""Transcript-level adversarial attacks on audio anti-spoofing detectors.

The package splits into: transcript/wordnet (text side), audio/_kernels
(signal side), oracles (TTS, detector, embedder, MLM, annotator access with
caching and budgets), constraints + attack (the search itself), features +
stats (analysis battery), and campaign/reporting/cli (batch orchestration).
"""

from .attack import (
    AttackConfig,
    AttackOutcome,
    Label,
    Strategy,
    greedy_attack,
    label_of,
    proxy_attack,
    random_substitution_baseline,
    rank_importance,
)
from .campaign import (
    MetricsSummary,
    RunManifest,
    compute_metrics,
    load_manifest,
    run_attack_campaign,
)
from .constraints import SimPolicy, check_sim, cosine_similarity
from .transcript import Transcript, detokenize, tokenize

__version__ = "0.1.0"

__all__ = [
    "AttackConfig",
    "AttackOutcome",
    "Label",
    "MetricsSummary",
    "RunManifest",
    "SimPolicy",
    "Strategy",
    "Transcript",
    "__version__",
    "check_sim",
    "compute_metrics",
    "cosine_similarity",
    "detokenize",
    "greedy_attack",
    "label_of",
    "load_manifest",
    "proxy_attack",
    "random_substitution_baseline",
    "rank_importance",
    "run_attack_campaign",
    "tokenize",
]
