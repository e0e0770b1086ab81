"""Readability and length-normalized tf-idf scoring of candidates, and final selection."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .errors import EmptyCorpus, NoCandidates, UnknownTerm
from .model import Candidate, Tagline
from .occupation import URL_PROXY

# relative tolerance under which two final scores count as tied
SCORE_TIE_RTOL = 1e-12

_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
_SENTENCE_RE = re.compile(r"[.!?]+")
_ALPHA_RE = re.compile(r"[^\W\d_]+")


def count_syllables(word: str) -> int:
    """Vowel-group count, minus a terminal silent 'e'; never below 1."""
    groups = _VOWEL_GROUP_RE.findall(word.lower())
    count = len(groups)
    if count > 1 and word.lower().endswith("e") and groups[-1] == "e":
        count -= 1
    return max(1, count)


def flesch_score(text: str) -> float:
    """Flesch reading ease clamped to [0, 100]; text without words scores 0."""
    words = []
    for token in text.split():
        letters = "".join(_ALPHA_RE.findall(token))
        if letters:
            words.append(letters)
    if not words:
        return 0.0
    sentences = max(1, len(_SENTENCE_RE.findall(text)))
    syllables = sum(count_syllables(w) for w in words)
    raw = 206.835 - 1.015 * (len(words) / sentences) - 84.6 * (syllables / len(words))
    return min(100.0, max(0.0, raw))


def _strip_term(token: str) -> str:
    """Trim non-alphanumeric edges; an '@' or '#' right before the word is kept."""
    start, end = 0, len(token)
    while start < end and not token[start].isalnum():
        start += 1
    while end > start and not token[end - 1].isalnum():
        end -= 1
    if start == end:
        return ""
    prefix = token[start - 1] if start and token[start - 1] in "@#" else ""
    return prefix + token[start:end]


def terms(text: str) -> list[str]:
    """Lowercased terms of a candidate, edge punctuation stripped, URL proxy removed."""
    out = []
    for token in text.lower().split():
        if token == URL_PROXY:
            continue
        term = _strip_term(token)
        if term:
            out.append(term)
    return out


@dataclass(frozen=True)
class TermStats:
    M: int
    df: dict

    def __post_init__(self):
        if self.M < 1:
            raise EmptyCorpus("term statistics need at least one document")

    def idf(self, term: str) -> float:
        try:
            return math.log(self.M / self.df[term])
        except KeyError:
            raise UnknownTerm(term) from None


def build_term_stats(candidates: Iterable[Candidate]) -> TermStats:
    df: Counter = Counter()
    m = 0
    for c in candidates:
        m += 1
        df.update(set(terms(c.text)))
    if m == 0:
        raise EmptyCorpus("no candidates to build term statistics from")
    return TermStats(M=m, df=dict(df))


@dataclass(frozen=True)
class ScoredCandidate:
    candidate: Candidate
    raw_score: float
    final_score: float
    word_count: int


def score_candidate(c: Candidate, stats: TermStats, T: int) -> ScoredCandidate:
    words = terms(c.text)
    if not words:
        return ScoredCandidate(replace(c, score=0.0), 0.0, 0.0, 0)
    total = sum(freq * stats.idf(t) for t, freq in Counter(words).items())
    raw = total / len(words)
    final = raw * c.char_length / T
    return ScoredCandidate(replace(c, score=final), raw, final, len(words))


def _tie_key(sc: ScoredCandidate):
    c = sc.candidate
    return (-c.char_length, c.method.priority, c.text)


def pick_best(scored: Sequence[ScoredCandidate]) -> ScoredCandidate:
    """Highest final score; near-equal scores fall back to length, method, text."""
    best = max(sc.final_score for sc in scored)
    cutoff = best - SCORE_TIE_RTOL * max(1.0, abs(best))
    tied = [sc for sc in scored if sc.final_score >= cutoff]
    return min(tied, key=_tie_key)


def select_final(
    user_candidates: Sequence[Candidate],
    stats: TermStats,
    T: int,
    min_readability: Optional[float] = None,
    screen_name: str = "",
) -> Tagline:
    if not user_candidates:
        raise NoCandidates("no candidates to select from")
    rated = [
        c if c.readability is not None else replace(c, readability=flesch_score(c.text)) for c in user_candidates
    ]
    pool = rated
    if min_readability is not None:
        kept = [c for c in rated if c.readability >= min_readability]
        pool = kept or rated
    best = pick_best([score_candidate(c, stats, T) for c in pool]).candidate
    return Tagline(user_id=best.user_id, text=best.text, method=best.method, score=best.score, screen_name=screen_name)
