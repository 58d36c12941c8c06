"""Transcript-level search for detector misclassification.

Three search procedures share one recipe: score the source clip, rank word
positions by how much the detector score rises when the word is removed,
then walk positions in that order substituting admissible candidates.

``greedy_attack`` queries the detector for every candidate.
``proxy_attack`` runs the same recipe against a stand-in reward model,
collects every admissible candidate it saw, and spends real detector
queries only to verify the most promising ones.
``random_substitution_baseline`` is the control: random order, one random
admissible candidate per position.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from .constraints import SimPolicy, check_sim, cosine_similarity
from .oracles.gateway import OracleGateway
from .oracles.ledger import QueryLedger
from .oracles.stubs import hash64
from .oracles.types import AudioClip, BudgetExhausted
from .transcript import Transcript, mask_word, replace_word
from .wordnet import Lexicon, bundled_lexicon, synonyms


class Strategy(enum.Enum):
    WORDNET = "wordnet"
    MLM = "mlm"


class Label(enum.Enum):
    SPOOF = "spoof"
    BONAFIDE = "bonafide"


_DEFAULT_CANDIDATES = {Strategy.WORDNET: 50, Strategy.MLM: 48}


def label_of(score: float, threshold: float = 0.5) -> Label:
    """Detector decision at a threshold; the boundary is bona fide."""
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"score {score} outside [0, 1]")
    return Label.BONAFIDE if score >= threshold else Label.SPOOF


@dataclass(frozen=True)
class AttackConfig:
    strategy: Strategy = Strategy.WORDNET
    policy: SimPolicy = field(default_factory=SimPolicy)
    budget: int = 500
    threshold: float = 0.5
    candidates_per_word: int | None = None  # None: 50 WordNet, 48 MLM
    voice_id: str | None = None
    max_positions: int | None = None

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must lie strictly inside (0, 1)")
        if self.candidates_per_word is not None and self.candidates_per_word < 1:
            raise ValueError("candidates_per_word must be >= 1")

    @property
    def cap(self) -> int:
        if self.candidates_per_word is not None:
            return self.candidates_per_word
        return _DEFAULT_CANDIDATES[self.strategy]


@dataclass(frozen=True)
class PerturbationRecord:
    """One accepted substitution."""

    position: int
    original: str
    replacement: str
    score_before: float
    score_after: float

    def __post_init__(self) -> None:
        if self.original == self.replacement:
            raise ValueError("record must change the surface")
        for score in (self.score_before, self.score_after):
            if not 0.0 <= score <= 1.0:
                raise ValueError(f"score {score} outside [0, 1]")


@dataclass(frozen=True)
class ImportanceRanking:
    """Positions sorted by masked-clip detector score, descending.

    ``complete`` is False when the budget ran out mid-ranking; the order
    then covers only the positions that were actually scored.
    """

    order: tuple[tuple[int, float], ...]
    complete: bool


@dataclass(frozen=True)
class AttackOutcome:
    """Result of one attack on one transcript.

    ``initial_score`` and ``terminal_score`` are real detector scores; the
    proxy attack leaves them None when it never touched the detector for
    the corresponding clip.
    """

    source: Transcript
    adversarial: Transcript
    records: tuple[PerturbationRecord, ...]
    flipped: bool
    queries_used: int
    semantic_sim: float
    terminal_score: float | None
    initial_score: float | None
    threshold: float

    @property
    def initial_label(self) -> Label:
        if self.initial_score is None:
            raise ValueError("outcome has no pre-attack detector score")
        return label_of(self.initial_score, self.threshold)

    @property
    def already_bonafide(self) -> bool:
        return self.initial_score is not None and self.initial_label is Label.BONAFIDE


class RewardModel(Protocol):
    """Stand-in detector: maps a candidate to a score-like reward."""

    def reward(self, transcript: Transcript, clip: AudioClip) -> float: ...


@dataclass(frozen=True)
class ProxyReward:
    """Linear reward over a feature map, squashed to a probability."""

    coef: np.ndarray
    intercept: float
    featurize: Callable[[Transcript, AudioClip], np.ndarray]

    def reward(self, transcript: Transcript, clip: AudioClip) -> float:
        x = np.asarray(self.featurize(transcript, clip), dtype=np.float64)
        z = float(np.dot(np.asarray(self.coef, dtype=np.float64), x) + self.intercept)
        return float(1.0 / (1.0 + np.exp(-np.clip(z, -60.0, 60.0))))


class _Scorer:
    """Detector access that enforces the logical query budget.

    The logical count advances on every score request, cached or not, so a
    rerun over a warm cache replays the identical control flow.  The ledger
    underneath still meters physical detector traffic.
    """

    def __init__(self, gateway: OracleGateway, budget: int) -> None:
        self.gateway = gateway
        self.ledger = QueryLedger(budget)
        self.budget = budget
        self.logical = 0

    def score(self, clip: AudioClip) -> float:
        if self.logical >= self.budget:
            raise BudgetExhausted(self.logical, self.budget)
        self.logical += 1
        return self.gateway.detector_score(clip, self.ledger)


def attackable_positions(t: Transcript, policy: SimPolicy) -> list[int]:
    """Indices eligible for substitution under the policy."""
    return [
        tok.index
        for tok in t.tokens
        if not (policy.skip_stopwords and tok.is_stopword)
    ]


def _rank(scored: list[tuple[int, float]], complete: bool) -> ImportanceRanking:
    order = sorted(scored, key=lambda item: (-item[1], item[0]))
    return ImportanceRanking(order=tuple(order), complete=complete)


def _rank_with(
    t: Transcript,
    positions: list[int],
    score_text: Callable[[str], float],
) -> ImportanceRanking:
    """Score each position's word-deleted clip; partial on budget exhaustion."""
    scored: list[tuple[int, float]] = []
    if len(t.tokens) < 2:
        # Deletion needs a non-empty remainder; fall back to source order.
        return _rank([(i, 0.0) for i in positions], complete=True)
    for i in positions:
        masked = mask_word(t, i)
        try:
            scored.append((i, score_text(masked.raw)))
        except BudgetExhausted:
            return _rank(scored, complete=False)
    return _rank(scored, complete=True)


def rank_importance(
    t: Transcript,
    gateway: OracleGateway,
    ledger: QueryLedger | None = None,
    policy: SimPolicy | None = None,
) -> ImportanceRanking:
    """Standalone importance ranking against the live detector."""
    policy = policy or SimPolicy()

    def score_text(text: str) -> float:
        return gateway.detector_score(gateway.synthesize(text), ledger)

    return _rank_with(t, attackable_positions(t, policy), score_text)


def _candidates(
    t: Transcript,
    position: int,
    config: AttackConfig,
    gateway: OracleGateway,
    lexicon: Lexicon,
) -> list[str]:
    current = t.tokens[position].surface
    if config.strategy is Strategy.WORDNET:
        pool = synonyms(lexicon, current)[: config.cap]
    else:
        pool = [
            word
            for word, _ in gateway.mlm_candidates(list(t.surfaces), position, config.cap)
        ]
    seen: set[str] = {current.lower()}
    out: list[str] = []
    for cand in pool:
        low = cand.lower()
        if low in seen:
            continue
        seen.add(low)
        out.append(cand)
    return out


def _final_sim(gateway: OracleGateway, source: Transcript, final: Transcript) -> float:
    if final.raw == source.raw:
        return 1.0
    return cosine_similarity(gateway.text_embed(source.raw), gateway.text_embed(final.raw))


def greedy_attack(
    t: Transcript,
    config: AttackConfig,
    gateway: OracleGateway,
    lexicon: Lexicon | None = None,
) -> AttackOutcome:
    """Importance-ordered substitution search against the live detector.

    Each position is perturbed at most once; a candidate is accepted only
    when admissible and strictly score-increasing.  Stops at the first
    flip or when the query budget runs dry.
    """
    if config.budget <= 0:
        raise BudgetExhausted(0, config.budget)
    lexicon = lexicon or bundled_lexicon()
    scorer = _Scorer(gateway, config.budget)

    initial = scorer.score(gateway.synthesize(t.raw))
    if label_of(initial, config.threshold) is Label.BONAFIDE:
        return AttackOutcome(
            source=t,
            adversarial=t,
            records=(),
            flipped=False,
            queries_used=scorer.logical,
            semantic_sim=1.0,
            terminal_score=initial,
            initial_score=initial,
            threshold=config.threshold,
        )

    def score_text(text: str) -> float:
        return scorer.score(gateway.synthesize(text))

    ranking = _rank_with(t, attackable_positions(t, config.policy), score_text)
    order = [i for i, _ in ranking.order]
    if config.max_positions is not None:
        order = order[: config.max_positions]

    current = t
    best_score = initial
    records: list[PerturbationRecord] = []
    flipped = False
    exhausted = not ranking.complete

    for position in order:
        if flipped or exhausted:
            break
        original_surface = current.tokens[position].surface
        round_best: tuple[float, Transcript, str] | None = None
        for cand in _candidates(current, position, config, gateway, lexicon):
            trial = replace_word(current, position, cand)
            if not check_sim(t, trial, config.policy, gateway, lexicon).passed:
                continue
            try:
                score = scorer.score(gateway.synthesize(trial.raw))
            except BudgetExhausted:
                exhausted = True
                break
            if score <= best_score:
                continue
            if score >= config.threshold:
                records.append(
                    PerturbationRecord(
                        position=position,
                        original=original_surface,
                        replacement=trial.tokens[position].surface,
                        score_before=best_score,
                        score_after=score,
                    )
                )
                current = trial
                best_score = score
                flipped = True
                break
            if round_best is None or score > round_best[0]:
                round_best = (score, trial, trial.tokens[position].surface)
        if flipped:
            break
        if round_best is not None:
            score, trial, surface = round_best
            records.append(
                PerturbationRecord(
                    position=position,
                    original=original_surface,
                    replacement=surface,
                    score_before=best_score,
                    score_after=score,
                )
            )
            current = trial
            best_score = score

    return AttackOutcome(
        source=t,
        adversarial=current,
        records=tuple(records),
        flipped=flipped,
        queries_used=scorer.logical,
        semantic_sim=_final_sim(gateway, t, current),
        terminal_score=best_score,
        initial_score=initial,
        threshold=config.threshold,
    )


@dataclass(frozen=True)
class _PoolEntry:
    reward: float
    sequence: int
    transcript: Transcript
    records: tuple[PerturbationRecord, ...]


def proxy_attack(
    t: Transcript,
    config: AttackConfig,
    reward_model: RewardModel,
    gateway: OracleGateway,
    lexicon: Lexicon | None = None,
    initial_score: float | None = None,
) -> AttackOutcome:
    """Proxy-guided search: explore against the reward model, then verify.

    The whole greedy recipe runs with ``reward_model`` in place of the
    detector, recording every admissible candidate it evaluates.  The pool
    is then sorted by reward (ties by discovery order) and at most
    ``config.budget`` entries are checked against the real detector,
    stopping at the first flip.  The original clip is never charged to the
    detector here: its score comes from ``initial_score`` or a response
    cache peek, and stays unknown otherwise.
    """
    if config.budget <= 0:
        raise BudgetExhausted(0, config.budget)
    lexicon = lexicon or bundled_lexicon()
    ledger = QueryLedger(config.budget)

    source_clip = gateway.synthesize(t.raw)
    initial = initial_score
    if initial is None:
        initial = gateway.cached_detector_score(source_clip)
    if initial is not None and label_of(initial, config.threshold) is Label.BONAFIDE:
        return AttackOutcome(
            source=t,
            adversarial=t,
            records=(),
            flipped=False,
            queries_used=ledger.used,
            semantic_sim=1.0,
            terminal_score=initial,
            initial_score=initial,
            threshold=config.threshold,
        )

    # Rank positions by reward of the word-deleted clip.
    positions = attackable_positions(t, config.policy)
    scored: list[tuple[int, float]] = []
    if len(t.tokens) >= 2:
        for i in positions:
            masked = mask_word(t, i)
            scored.append((i, reward_model.reward(masked, gateway.synthesize(masked.raw))))
        ranking = _rank(scored, complete=True)
    else:
        ranking = _rank([(i, 0.0) for i in positions], complete=True)
    order = [i for i, _ in ranking.order]
    if config.max_positions is not None:
        order = order[: config.max_positions]

    pool: list[_PoolEntry] = []
    sequence = 0
    current = t
    best_reward = reward_model.reward(t, source_clip)
    chain: list[PerturbationRecord] = []
    done = False

    for position in order:
        if done:
            break
        original_surface = current.tokens[position].surface
        round_best: tuple[float, Transcript, str] | None = None
        for cand in _candidates(current, position, config, gateway, lexicon):
            trial = replace_word(current, position, cand)
            if not check_sim(t, trial, config.policy, gateway, lexicon).passed:
                continue
            reward = reward_model.reward(trial, gateway.synthesize(trial.raw))
            trial_records = (*chain, PerturbationRecord(
                position=position,
                original=original_surface,
                replacement=trial.tokens[position].surface,
                score_before=best_reward,
                score_after=reward,
            ))
            pool.append(_PoolEntry(reward, sequence, trial, trial_records))
            sequence += 1
            if reward > best_reward and reward >= config.threshold:
                chain = list(trial_records)
                current = trial
                best_reward = reward
                done = True
                break
            if round_best is None or reward > round_best[0]:
                round_best = (reward, trial, trial.tokens[position].surface)
        if done:
            break
        if round_best is not None and round_best[0] > best_reward:
            reward, trial, surface = round_best
            chain.append(
                PerturbationRecord(
                    position=position,
                    original=original_surface,
                    replacement=surface,
                    score_before=best_reward,
                    score_after=reward,
                )
            )
            current = trial
            best_reward = reward

    # Highest reward wins; earlier discovery breaks ties.  One entry per text.
    by_text: dict[str, _PoolEntry] = {}
    for entry in pool:
        kept = by_text.get(entry.transcript.raw)
        if kept is None or (entry.reward, -entry.sequence) > (kept.reward, -kept.sequence):
            by_text[entry.transcript.raw] = entry
    candidates = sorted(by_text.values(), key=lambda e: (-e.reward, e.sequence))

    last_verified: tuple[_PoolEntry, float] | None = None
    for entry in candidates:
        if ledger.remaining <= 0:
            break
        score = gateway.detector_score(gateway.synthesize(entry.transcript.raw), ledger)
        last_verified = (entry, score)
        if label_of(score, config.threshold) is Label.BONAFIDE:
            return AttackOutcome(
                source=t,
                adversarial=entry.transcript,
                records=entry.records,
                flipped=True,
                queries_used=ledger.used,
                semantic_sim=_final_sim(gateway, t, entry.transcript),
                terminal_score=score,
                initial_score=initial,
                threshold=config.threshold,
            )

    if last_verified is not None:
        # Unflipped: report the top-reward candidate, whose real score is
        # warm in the cache from the verification pass above.
        best_entry = candidates[0]
        return AttackOutcome(
            source=t,
            adversarial=best_entry.transcript,
            records=best_entry.records,
            flipped=False,
            queries_used=ledger.used,
            semantic_sim=_final_sim(gateway, t, best_entry.transcript),
            terminal_score=_verified_score(gateway, best_entry.transcript),
            initial_score=initial,
            threshold=config.threshold,
        )
    return AttackOutcome(
        source=t,
        adversarial=t,
        records=(),
        flipped=False,
        queries_used=ledger.used,
        semantic_sim=1.0,
        terminal_score=initial,
        initial_score=initial,
        threshold=config.threshold,
    )


def _verified_score(gateway: OracleGateway, t: Transcript) -> float:
    """Cache peek for a transcript scored moments ago on this gateway."""
    cached = gateway.cached_detector_score(gateway.synthesize(t.raw))
    if cached is None:
        raise RuntimeError("expected a cached verification score")
    return cached


def random_substitution_baseline(
    t: Transcript,
    config: AttackConfig,
    gateway: OracleGateway,
    lexicon: Lexicon | None = None,
    seed: int = 0,
) -> AttackOutcome:
    """Control condition: one pass, random order, random admissible picks.

    Visits attackable positions in a seeded random order, applies one
    randomly chosen admissible candidate at each (no score gating), and
    queries the detector after every application, stopping at a flip.
    """
    if config.budget <= 0:
        raise BudgetExhausted(0, config.budget)
    lexicon = lexicon or bundled_lexicon()
    scorer = _Scorer(gateway, config.budget)
    rng = np.random.default_rng([seed & 0xFFFFFFFF, hash64(t.id or t.raw)])

    initial = scorer.score(gateway.synthesize(t.raw))
    if label_of(initial, config.threshold) is Label.BONAFIDE:
        return AttackOutcome(
            source=t,
            adversarial=t,
            records=(),
            flipped=False,
            queries_used=scorer.logical,
            semantic_sim=1.0,
            terminal_score=initial,
            initial_score=initial,
            threshold=config.threshold,
        )

    order = attackable_positions(t, config.policy)
    rng.shuffle(order)
    if config.max_positions is not None:
        order = order[: config.max_positions]

    current = t
    last_score = initial
    records: list[PerturbationRecord] = []
    flipped = False

    for position in order:
        original_surface = current.tokens[position].surface
        admissible: list[Transcript] = []
        for cand in _candidates(current, position, config, gateway, lexicon):
            trial = replace_word(current, position, cand)
            if check_sim(t, trial, config.policy, gateway, lexicon).passed:
                admissible.append(trial)
        if not admissible:
            continue
        trial = admissible[int(rng.integers(len(admissible)))]
        try:
            score = scorer.score(gateway.synthesize(trial.raw))
        except BudgetExhausted:
            break
        records.append(
            PerturbationRecord(
                position=position,
                original=original_surface,
                replacement=trial.tokens[position].surface,
                score_before=last_score,
                score_after=score,
            )
        )
        current = trial
        last_score = score
        if label_of(score, config.threshold) is Label.BONAFIDE:
            flipped = True
            break

    return AttackOutcome(
        source=t,
        adversarial=current,
        records=tuple(records),
        flipped=flipped,
        queries_used=scorer.logical,
        semantic_sim=_final_sim(gateway, t, current),
        terminal_score=last_score,
        initial_score=initial,
        threshold=config.threshold,
    )
