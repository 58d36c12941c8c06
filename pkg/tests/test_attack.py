from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import gen_corpus
from _stub_models import PlantedProxy, bin_of, plant_detector_weights
from lingua_spoof.attack import (
    AttackConfig,
    AttackOutcome,
    Label,
    PerturbationRecord,
    Strategy,
    greedy_attack,
    label_of,
    proxy_attack,
    random_substitution_baseline,
    rank_importance,
)
from lingua_spoof.constraints import SimPolicy, check_sim
from lingua_spoof.oracles.cache import MemoryCache
from lingua_spoof.oracles.gateway import stub_gateway
from lingua_spoof.oracles.ledger import QueryLedger
from lingua_spoof.transcript import tokenize
from lingua_spoof.wordnet import bundled_lexicon

RELAXED = SimPolicy(delta=0.40)


# -- decision rule -------------------------------------------------------------


def test_label_boundary_is_bonafide():
    assert label_of(0.5, 0.5) is Label.BONAFIDE
    assert label_of(0.0, 0.5) is Label.SPOOF
    assert label_of(1.0, 0.5) is Label.BONAFIDE


def test_label_rejects_out_of_range():
    with pytest.raises(ValueError):
        label_of(-0.01, 0.5)
    with pytest.raises(ValueError):
        label_of(1.01, 0.5)


# -- config and record types -----------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        AttackConfig(budget=0)
    with pytest.raises(ValueError):
        AttackConfig(threshold=0.0)
    with pytest.raises(ValueError):
        AttackConfig(threshold=1.0)
    with pytest.raises(ValueError):
        AttackConfig(candidates_per_word=0)


def test_candidate_caps_by_strategy():
    assert AttackConfig(strategy=Strategy.WORDNET).cap == 50
    assert AttackConfig(strategy=Strategy.MLM).cap == 48
    assert AttackConfig(candidates_per_word=7).cap == 7


def test_record_validation():
    PerturbationRecord(0, "man", "guy", 0.1, 0.2)
    with pytest.raises(ValueError):
        PerturbationRecord(0, "man", "man", 0.1, 0.2)
    with pytest.raises(ValueError):
        PerturbationRecord(0, "man", "guy", 0.1, 1.5)


# -- importance ranking ------------------------------------------------------------


def test_rank_two_words_without_stopword_skip(gateway):
    ranking = rank_importance(
        tokenize("the man"), gateway, policy=SimPolicy(skip_stopwords=False)
    )
    assert len(ranking.order) == 2
    assert ranking.complete


def test_rank_golden_order(gateway):
    ranking = rank_importance(tokenize("a successful actor needs money"), gateway)
    assert ranking.complete
    assert [i for i, _ in ranking.order] == [1, 3, 4, 2]
    assert ranking.order[0][1] == 0.00027006334500927556
    assert all(0.0 <= p <= 1.0 for _, p in ranking.order)


def test_rank_ties_prefer_lower_index(gateway):
    ranking = rank_importance(
        tokenize("man man man"), gateway, policy=SimPolicy(skip_stopwords=False)
    )
    scores = [p for _, p in ranking.order]
    assert scores[0] == scores[1] == scores[2]
    assert [i for i, _ in ranking.order] == [0, 1, 2]


def test_rank_partial_on_budget(gateway):
    ledger = QueryLedger(2)
    ranking = rank_importance(
        tokenize("a successful actor needs money"), gateway, ledger=ledger
    )
    assert not ranking.complete
    assert len(ranking.order) == 2
    assert ledger.used == 2
    scores = [p for _, p in ranking.order]
    assert scores == sorted(scores, reverse=True)


def test_rank_single_token_fallback(gateway):
    ranking = rank_importance(
        tokenize("man"), gateway, policy=SimPolicy(skip_stopwords=False)
    )
    assert ranking.complete
    assert ranking.order == ((0, 0.0),)


def test_rank_positions_distinct(gateway):
    ranking = rank_importance(tokenize("a successful actor needs money"), gateway)
    positions = [i for i, _ in ranking.order]
    assert len(set(positions)) == len(positions)


# -- greedy attack --------------------------------------------------------------------


def planted_gateway():
    """Stub gateway where only successful->good crosses the boundary."""
    g = stub_gateway(7, cache=MemoryCache())
    plant_detector_weights(
        g,
        {bin_of("successful"): -10.0, bin_of("actor"): 2.0, bin_of("good"): 30.0},
    )
    return g


def test_planted_flip_single_record(lexicon):
    g = planted_gateway()
    t = tokenize("a successful actor", transcript_id="planted")
    out = greedy_attack(t, AttackConfig(policy=SimPolicy(delta=0.2), budget=50), g, lexicon)
    assert out.flipped
    assert len(out.records) == 1
    assert out.adversarial.raw == "a good actor"
    record = out.records[0]
    assert (record.position, record.original, record.replacement) == (1, "successful", "good")
    assert out.queries_used == 4  # initial + 2 masks + the flipping candidate
    assert out.terminal_score >= 0.5
    assert out.initial_score < 0.5


def test_budget_one_spent_on_initial_check(gateway, lexicon):
    t = tokenize("a successful actor")
    out = greedy_attack(t, AttackConfig(policy=RELAXED, budget=1), gateway, lexicon)
    assert not out.flipped
    assert out.adversarial.raw == t.raw
    assert out.queries_used == 1
    assert out.records == ()


def test_no_admissible_candidate_returns_source(gateway, lexicon):
    t = tokenize("a successful actor")
    out = greedy_attack(
        t, AttackConfig(policy=SimPolicy(delta=1.0), budget=100), gateway, lexicon
    )
    assert not out.flipped
    assert out.adversarial.raw == t.raw
    assert out.records == ()


def test_already_bonafide_is_not_attacked(lexicon):
    g = stub_gateway(7, cache=MemoryCache())
    plant_detector_weights(
        g, {bin_of(w): 20.0 for w in ("a", "successful", "actor")}
    )
    t = tokenize("a successful actor")
    out = greedy_attack(t, AttackConfig(policy=RELAXED, budget=50), g, lexicon)
    assert out.already_bonafide
    assert not out.flipped
    assert out.adversarial.raw == t.raw
    assert out.records == ()
    assert out.queries_used == 1
    assert out.semantic_sim == 1.0
    assert out.terminal_score == out.initial_score


def test_stopwords_never_perturbed(gateway, lexicon):
    corpus = gen_corpus(lexicon, 101, 4)
    for t in corpus:
        out = greedy_attack(t, AttackConfig(policy=RELAXED, budget=500), gateway, lexicon)
        for record in out.records:
            assert not t.tokens[record.position].is_stopword


def test_greedy_invariants_on_corpus(gateway, lexicon):
    corpus = gen_corpus(lexicon, 101, 6)
    config = AttackConfig(policy=RELAXED, budget=500)
    for t in corpus:
        out = greedy_attack(t, config, gateway, lexicon)
        assert out.queries_used <= config.budget
        # one substitution per position
        positions = [r.position for r in out.records]
        assert len(set(positions)) == len(positions)
        # accepted detector scores strictly increase
        path = [out.initial_score] + [r.score_after for r in out.records]
        assert all(a < b for a, b in zip(path, path[1:]))
        # flip consistency for initially-spoof inputs
        if not out.already_bonafide:
            assert out.flipped == (out.terminal_score >= config.threshold)
        # the final pair stays admissible
        if out.records:
            assert check_sim(out.source, out.adversarial, config.policy, gateway, lexicon).passed
            assert out.semantic_sim >= config.policy.delta


def test_greedy_deterministic_across_gateways(lexicon):
    t = gen_corpus(lexicon, 101, 1)[0]
    config = AttackConfig(policy=RELAXED, budget=500)
    a = greedy_attack(t, config, stub_gateway(7, cache=MemoryCache()), lexicon)
    b = greedy_attack(t, config, stub_gateway(7, cache=MemoryCache()), lexicon)
    assert a == b


def test_greedy_max_positions_cap(gateway, lexicon):
    t = gen_corpus(lexicon, 101, 1)[0]
    out = greedy_attack(
        t, AttackConfig(policy=RELAXED, budget=500, max_positions=1), gateway, lexicon
    )
    assert len({r.position for r in out.records}) <= 1


def test_greedy_mlm_strategy_runs(lexicon):
    g = stub_gateway(7, cache=MemoryCache())
    t = tokenize("street light money trust doctor letter")
    out = greedy_attack(
        t,
        AttackConfig(strategy=Strategy.MLM, policy=SimPolicy(delta=0.3), budget=200),
        g,
        lexicon,
    )
    for record in out.records:
        assert record.replacement.lower() != record.original.lower()
    assert out.queries_used <= 200


# -- proxy attack ----------------------------------------------------------------------


def test_proxy_budget_one_uses_exactly_one_query(lexicon):
    t = gen_corpus(lexicon, 101, 2)[1]
    g = stub_gateway(7, cache=MemoryCache())
    out = proxy_attack(
        t, AttackConfig(policy=RELAXED, budget=1), PlantedProxy(7), g, lexicon
    )
    assert out.queries_used == 1
    assert out.flipped


def test_proxy_planted_model_flips_within_three(lexicon):
    t = gen_corpus(lexicon, 101, 1)[0]
    g = stub_gateway(7, cache=MemoryCache())
    out = proxy_attack(
        t, AttackConfig(policy=RELAXED, budget=3), PlantedProxy(7), g, lexicon
    )
    assert out.flipped
    assert out.queries_used <= 3


def test_proxy_empty_pool_means_zero_queries(gateway, lexicon):
    t = tokenize("a successful actor")
    out = proxy_attack(
        t,
        AttackConfig(policy=SimPolicy(delta=1.0), budget=10),
        PlantedProxy(7),
        gateway,
        lexicon,
    )
    assert not out.flipped
    assert out.queries_used == 0
    assert out.adversarial.raw == t.raw


def test_proxy_exploration_never_touches_detector(lexicon, monkeypatch):
    t = gen_corpus(lexicon, 101, 1)[0]
    g = stub_gateway(7, cache=MemoryCache())
    transport = g._transport("detector")
    original = transport.request
    score_calls = []

    def counting(route, payload):
        if route == "/v1/score":
            score_calls.append(route)
        return original(route, payload)

    monkeypatch.setattr(transport, "request", counting)
    out = proxy_attack(
        t, AttackConfig(policy=RELAXED, budget=5), PlantedProxy(7), g, lexicon
    )
    assert len(score_calls) == out.queries_used
    assert out.queries_used <= 5


def test_proxy_initial_score_short_circuits(gateway, lexicon):
    t = tokenize("a successful actor")
    out = proxy_attack(
        t,
        AttackConfig(policy=RELAXED, budget=10),
        PlantedProxy(7),
        gateway,
        lexicon,
        initial_score=0.9,
    )
    assert out.already_bonafide
    assert out.queries_used == 0
    assert out.adversarial.raw == t.raw


def test_proxy_reads_initial_from_warm_cache(gateway, lexicon):
    g = stub_gateway(7, cache=MemoryCache())
    plant_detector_weights(g, {bin_of(w): 20.0 for w in ("a", "successful", "actor")})
    t = tokenize("a successful actor")
    g.detector_score(g.synthesize(t.raw))  # warm the cache with a bona fide score
    out = proxy_attack(
        t, AttackConfig(policy=RELAXED, budget=10), PlantedProxy(7), g, lexicon
    )
    assert out.already_bonafide
    assert out.queries_used == 0


def test_proxy_unflipped_reports_top_candidate(lexicon):
    g = stub_gateway(7, cache=MemoryCache())
    plant_detector_weights(g, {})  # nothing can cross the boundary
    t = tokenize("a successful actor needs money")
    out = proxy_attack(
        t, AttackConfig(policy=RELAXED, budget=2), PlantedProxy(7), g, lexicon
    )
    assert not out.flipped
    assert out.queries_used == 2
    assert out.adversarial.raw != t.raw
    assert out.terminal_score is not None
    assert out.terminal_score < 0.5
    # the reported terminal score is the top candidate's real detector score
    assert out.terminal_score == g.detector_score(g.synthesize(out.adversarial.raw))


def test_proxy_deterministic(lexicon):
    t = gen_corpus(lexicon, 101, 1)[0]
    config = AttackConfig(policy=RELAXED, budget=5)
    a = proxy_attack(t, config, PlantedProxy(7), stub_gateway(7, cache=MemoryCache()), lexicon)
    b = proxy_attack(t, config, PlantedProxy(7), stub_gateway(7, cache=MemoryCache()), lexicon)
    assert a == b


# -- random baseline ----------------------------------------------------------------------


def test_random_baseline_deterministic_per_seed(lexicon):
    t = gen_corpus(lexicon, 101, 1)[0]
    config = AttackConfig(policy=RELAXED, budget=500)
    a = random_substitution_baseline(
        t, config, stub_gateway(7, cache=MemoryCache()), lexicon, seed=33
    )
    b = random_substitution_baseline(
        t, config, stub_gateway(7, cache=MemoryCache()), lexicon, seed=33
    )
    assert a == b


def test_random_baseline_respects_constraints(gateway, lexicon):
    corpus = gen_corpus(lexicon, 101, 4)
    config = AttackConfig(policy=RELAXED, budget=500)
    for t in corpus:
        out = random_substitution_baseline(t, config, gateway, lexicon, seed=33)
        assert out.queries_used <= config.budget
        positions = [r.position for r in out.records]
        assert len(set(positions)) == len(positions)
        for record in out.records:
            assert not t.tokens[record.position].is_stopword
        if out.records:
            assert check_sim(
                out.source, out.adversarial, config.policy, gateway, lexicon
            ).passed
        if not out.already_bonafide:
            assert out.flipped == (out.terminal_score >= config.threshold)


# -- outcome bookkeeping -------------------------------------------------------------------


def test_outcome_label_helpers(gateway, lexicon):
    t = tokenize("a successful actor")
    out = greedy_attack(t, AttackConfig(policy=RELAXED, budget=5), gateway, lexicon)
    assert out.initial_label in (Label.SPOOF, Label.BONAFIDE)
    blank = AttackOutcome(
        source=t, adversarial=t, records=(), flipped=False, queries_used=0,
        semantic_sim=1.0, terminal_score=None, initial_score=None, threshold=0.5,
    )
    assert not blank.already_bonafide
    with pytest.raises(ValueError):
        blank.initial_label


@given(st.floats(0.0, 1.0), st.floats(0.001, 0.999))
@settings(max_examples=60)
def test_label_total_function(score, threshold):
    label = label_of(score, threshold)
    assert (label is Label.BONAFIDE) == (score >= threshold)
