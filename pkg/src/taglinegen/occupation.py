"""Occupation-pattern candidate generation from profile bios.

The bio is filtered by lexicon spotting, cleaned, cut into fragments at
pause punctuation and conjunctions, reduced to the fragments that mention an
occupation, and finally re-joined into every maximal run of consecutive
fragments that fits the character budget.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .ingest import OccupationLexicon
from .model import Candidate, Method, UserProfile

URL_PROXY = "[link]"
JOIN_SEP = ", "

_WORD_RE = re.compile(r"\w+")
_URL_RE = re.compile(r"(?:\b[a-z][a-z0-9+.\-]*://|\bwww\.)\S+", re.IGNORECASE)
_EMAIL_RE = re.compile(r"[\w.+\-]+@[\w\-]+(?:\.[\w\-]+)+")
_DOTS_RE = re.compile(r"\.{2,}")
_SPLIT_RE = re.compile(r"[,;./]|\band\b|(?<!\S)&(?!\S)", re.IGNORECASE)

CONTACT_INDICATORS = frozenset(
    {"contact us", "email us", "booking info", "pr rep", "bookings", "booking", "contact", "email"}
)


@dataclass(frozen=True)
class NGram:
    text: str
    position: int


class _Matcher:
    """Longest-match spotter over word tokens.

    A title matches when its word tokens match consecutive bio tokens and the
    separators between them agree (hyphen vs. whitespace), so
    "editor-in-chief" never matches "editor in chief" and "author" never
    matches inside "authorization".
    """

    def __init__(self, titles):
        self._by_first = {}
        for title in titles:
            words, gaps = _split_words(title)
            if not words:
                continue
            self._by_first.setdefault(words[0], []).append((tuple(words), tuple(gaps), title))
        for entries in self._by_first.values():
            entries.sort(key=lambda e: (-len(e[0]), e[2]))

    def find(self, text: str) -> list[str]:
        spans = [(m.group().lower(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]
        out = []
        i = 0
        while i < len(spans):
            entries = self._by_first.get(spans[i][0])
            hit = None
            if entries:
                for words, gaps, title in entries:
                    n = len(words)
                    if i + n > len(spans):
                        continue
                    if all(spans[i + k][0] == words[k] for k in range(1, n)) and all(
                        _norm_gap(text[spans[i + k][2] : spans[i + k + 1][1]]) == gaps[k]
                        for k in range(n - 1)
                    ):
                        hit = (title, n)
                        break
            if hit:
                out.append(hit[0])
                i += hit[1]
            else:
                i += 1
        return out


def _norm_gap(gap: str) -> str:
    return " " if gap.isspace() else gap.strip()


def _split_words(title: str):
    spans = list(_WORD_RE.finditer(title))
    words = [m.group().lower() for m in spans]
    gaps = [_norm_gap(title[a.end() : b.start()]) for a, b in zip(spans, spans[1:])]
    return words, gaps


_MATCHER_CACHE: dict = {}


def _matcher_for(lex: OccupationLexicon) -> _Matcher:
    matcher = _MATCHER_CACHE.get(lex.titles)
    if matcher is None:
        if len(_MATCHER_CACHE) > 8:
            _MATCHER_CACHE.clear()
        matcher = _MATCHER_CACHE[lex.titles] = _Matcher(lex.titles)
    return matcher


def spot_occupations(bio: str, lex: OccupationLexicon) -> list[str]:
    """Return lexicon titles found in ``bio``, in bio order, longest match first."""
    if not bio:
        return []
    return _matcher_for(lex).find(bio)


def preprocess_bio(bio: str) -> str:
    text = bio.replace("\r", " ").replace("\n", " ")
    text = _URL_RE.sub(URL_PROXY, text)
    text = _EMAIL_RE.sub("", text)
    text = _DOTS_RE.sub(".", text)
    return " ".join(text.split())


def is_contact_fragment(fragment: str) -> bool:
    core = " ".join(re.sub(r"[^\w\s]", " ", fragment).split()).lower()
    return core in CONTACT_INDICATORS


def tokenize_bio(text: str) -> list[NGram]:
    """Split a preprocessed bio at pause punctuation and standalone and/&."""
    out = []
    for piece in _SPLIT_RE.split(text):
        piece = piece.strip()
        if piece:
            out.append(NGram(piece, len(out)))
    return out


def drop_contact_fragments(ngrams: Sequence[NGram]) -> list[NGram]:
    return [g for g in ngrams if not is_contact_fragment(g.text)]


def filter_ngrams(ngrams: Sequence[NGram], lex: OccupationLexicon) -> list[NGram]:
    matcher = _matcher_for(lex)
    return [g for g in ngrams if matcher.find(g.text)]


def maximal_windows(lengths: Sequence[int], budget: int, sep_len: int = len(JOIN_SEP)) -> list[tuple[int, int]]:
    """Inclusive (start, end) index pairs of every maximal contiguous window
    whose joined length fits ``budget``, ordered by start."""
    n = len(lengths)
    prefix = [0]
    for length in lengths:
        prefix.append(prefix[-1] + length)

    def joined(i, j):
        return prefix[j + 1] - prefix[i] + sep_len * (j - i)

    windows = []
    end = -1
    for i in range(n):
        if lengths[i] > budget:
            end = i
            continue
        end = max(end, i)
        while end + 1 < n and joined(i, end + 1) <= budget:
            end += 1
        if i > 0 and lengths[i - 1] <= budget and joined(i - 1, end) <= budget:
            continue
        windows.append((i, end))
    return windows


def compose_candidates(
    ngrams: Sequence[NGram], T: int, user_id: str = "", method: Method = Method.OCCUPATION_PATTERN
) -> list[Candidate]:
    texts = [g.text for g in ngrams]
    seen = set()
    out = []
    for i, j in maximal_windows([len(t) for t in texts], T):
        text = JOIN_SEP.join(texts[i : j + 1])
        if text not in seen:
            seen.add(text)
            out.append(Candidate(user_id=user_id, text=text, method=method))
    return out


def generate_occupation_candidates(p: UserProfile, lex: OccupationLexicon, T: int) -> list[Candidate]:
    if not p.bio or not spot_occupations(p.bio, lex):
        return []
    ngrams = drop_contact_fragments(tokenize_bio(preprocess_bio(p.bio)))
    return compose_candidates(filter_ngrams(ngrams, lex), T, user_id=p.user_id)
