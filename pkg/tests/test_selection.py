import math
import random

import pytest
from hypothesis import given, strategies as st

from oracles import oracle_pick, oracle_scores
from taglinegen.errors import EmptyCorpus, NoCandidates, UnknownTerm
from taglinegen.model import Candidate, Method
from taglinegen.selection import (
    build_term_stats,
    count_syllables,
    flesch_score,
    score_candidate,
    select_final,
    terms,
)

OCC, KB, UC = Method.OCCUPATION_PATTERN, Method.LINK_TRIANGULATION, Method.USER_CLASSIFICATION


def cands(*texts, method=OCC, user="u"):
    return [Candidate(user, t, method) for t in texts]


@pytest.mark.parametrize("word,expected", [("cat", 1), ("writer", 2), ("make", 1), ("the", 1), ("rhythm", 1), ("xyz", 1)])
def test_syllables(word, expected):
    assert count_syllables(word) == expected


def test_flesch():
    assert flesch_score("") == 0
    assert flesch_score("Writer.") == pytest.approx(206.835 - 1.015 - 84.6 * 2, abs=1e-9)
    assert flesch_score("Writer.") == pytest.approx(36.62, abs=0.01)
    assert flesch_score("The cat sat.") == 100.0
    assert flesch_score("12 34 --") == 0


@given(st.text(max_size=80))
def test_flesch_clamped(text):
    assert 0.0 <= flesch_score(text) <= 100.0


def test_terms():
    assert terms("Editor of @TheNextWeb, [link] (#AI)!") == ["editor", "of", "@thenextweb", "#ai"]


CORPUS = cands("tech journalist", "food blogger", "tech blogger")


def test_term_stats():
    stats = build_term_stats(CORPUS)
    assert stats.M == 3
    assert stats.df == {"tech": 2, "journalist": 1, "food": 1, "blogger": 2}
    single = build_term_stats(cands("a a a"))
    assert (single.M, single.df) == (1, {"a": 1})
    with pytest.raises(EmptyCorpus):
        build_term_stats([])


def test_score_examples():
    stats = build_term_stats(CORPUS)
    a = score_candidate(CORPUS[0], stats, 70)
    assert a.raw_score == pytest.approx((math.log(1.5) + math.log(3)) / 2, abs=1e-12)
    assert a.final_score == pytest.approx(0.16115, abs=1e-4)
    assert a.word_count == 2
    b = score_candidate(CORPUS[2], stats, 70)
    assert b.raw_score == pytest.approx(0.40546, abs=1e-4)
    assert b.final_score == pytest.approx(0.06951, abs=1e-4)


def test_score_degenerate_idf():
    stats = build_term_stats(cands("food blogger"))
    assert score_candidate(cands("food blogger")[0], stats, 70).final_score == 0.0


def test_score_full_length_is_raw():
    text = "x" * 69 + "y"
    corpus = cands(text, "other")
    sc = score_candidate(corpus[0], build_term_stats(corpus), 70)
    assert sc.final_score == sc.raw_score


def test_unknown_term():
    with pytest.raises(UnknownTerm):
        score_candidate(cands("chef")[0], build_term_stats(CORPUS), 70)


def test_select_highest():
    stats = build_term_stats(CORPUS)
    assert select_final([CORPUS[2], CORPUS[0]], stats, 70).text == "tech journalist"
    assert select_final([CORPUS[1]], stats, 70).text == "food blogger"
    with pytest.raises(NoCandidates):
        select_final([], stats, 70)


def test_select_tie_prefers_longer():
    # every term occurs in both documents, so both scores are exactly 0
    pool = cands(" ".join(["z"] * 29 + ["qq"]), " ".join(["z"] * 17) + ", qq")
    assert [c.char_length for c in pool] == [60, 37]
    stats = build_term_stats(pool)
    assert [score_candidate(c, stats, 70).final_score for c in pool] == [0.0, 0.0]
    assert select_final(pool[::-1], stats, 70).text == pool[0].text


def test_select_tie_method_priority():
    pool = [Candidate("u", "same text", KB), Candidate("u", "same text", OCC)]
    stats = build_term_stats(pool)
    assert select_final(pool, stats, 70).method is OCC


def test_min_readability_filter_and_waiver():
    pool = cands("The cat sat.", "Extraordinarily multidimensional internationalization")
    stats = build_term_stats(pool)
    unfiltered = select_final(pool, stats, 70)
    assert unfiltered.text.startswith("Extraordinarily")
    assert select_final(pool, stats, 70, min_readability=50).text == "The cat sat."
    hard = cands("Extraordinarily multidimensional internationalization", "Incomprehensible characteristics")
    hard_stats = build_term_stats(hard)
    assert max(flesch_score(c.text) for c in hard) < 50
    # nobody passes -> filter waived
    assert select_final(hard, hard_stats, 70, min_readability=50) == select_final(hard, hard_stats, 70)


VOCAB = ["tech", "journalist", "food", "blogger", "writer", "@thenextweb", "#ai", "editor", "of", "the", "chef", "[link]", "nyc."]


def random_corpus(rng):
    users = []
    for _ in range(rng.randint(1, 6)):
        texts = []
        for _ in range(rng.randint(1, 4)):
            words = [rng.choice(VOCAB) for _ in range(rng.randint(1, 6))]
            texts.append(rng.choice([" ", ", "]).join(words))
        users.append((texts, [rng.choice(["occupation_pattern", "link_triangulation"]) for _ in texts]))
    while sum(len(t) for t, _ in users) > 20:
        users.pop()
    return users


@pytest.mark.parametrize("seed", range(25))
def test_select_matches_bruteforce(seed):
    rng = random.Random(seed)
    for _ in range(8):
        users = random_corpus(rng)
        pools = [[Candidate(f"u{k}", t, m) for t, m in zip(texts, methods)] for k, (texts, methods) in enumerate(users)]
        stats = build_term_stats([c for pool in pools for c in pool])
        expected = oracle_scores([texts for texts, _ in users], 70)
        for pool, (texts, methods), scores in zip(pools, users, expected):
            chosen = select_final(pool, stats, 70)
            k = oracle_pick(texts, methods, scores)
            assert (chosen.text, chosen.method.value) == (texts[k], methods[k])
            assert chosen.score == pytest.approx(scores[k], abs=1e-12)


@given(st.floats(0.1, 10.0))
def test_argmax_scale_covariant(factor):
    pool = cands("tech journalist", "tech blogger", "food blogger")
    stats = build_term_stats(pool)
    base = [score_candidate(c, stats, 70).final_score for c in pool]
    scaled = [s * factor for s in base]
    assert base.index(max(base)) == scaled.index(max(scaled))


@given(st.lists(st.sampled_from(VOCAB), min_size=1, max_size=6), st.integers(2, 8))
def test_idf_nonnegative(words, copies):
    docs = cands(*[" ".join(words[: k + 1]) for k in range(len(words))] * copies)
    stats = build_term_stats(docs)
    for t, d in stats.df.items():
        assert 1 <= d <= stats.M
        assert stats.idf(t) >= 0
        assert (stats.idf(t) == 0) == (d == stats.M)
