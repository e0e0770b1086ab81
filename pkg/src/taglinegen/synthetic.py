"""Deterministic synthetic batches for scale tests and benchmarks."""

from __future__ import annotations

import random

from .ingest import KbPage, OccupationLexicon
from .model import UserProfile

TITLES = [
    "journalist", "writer", "columnist", "editor", "editor-in-chief", "author", "blogger", "chef",
    "actor", "comedian", "director", "screenwriter", "producer", "photographer", "designer",
    "software engineer", "data scientist", "professor", "teacher", "economist", "analyst",
    "reporter", "senior media reporter", "footballer", "coach", "musician", "songwriter", "artist",
    "founder", "ceo", "entrepreneur", "investor", "lawyer", "doctor", "nurse", "scientist",
    "podcaster", "host", "publisher", "critic", "researcher", "consultant", "architect", "poet",
]
FILLER = [
    "tech", "food", "news", "sports", "politics", "music", "science", "at", "for", "of", "the",
    "New York", "@TheNextWeb", "#startups", "coffee", "lover", "dad", "mom", "runner", "fan",
    "Former", "Senior", "BusinessWeek", "Huffington Post", "grad", "based in", "London", "views mine",
]
PAUSES = [", ", ". ", "; ", " / ", " and ", " & ", "... ", "\n"]


def synthetic_lexicon() -> OccupationLexicon:
    return OccupationLexicon(frozenset(TITLES))


def random_bio(rng: random.Random) -> str:
    roll = rng.random()
    if roll < 0.15:
        return ""
    if roll < 0.25:
        return "Thanks for following me, guys!"
    parts = []
    for _ in range(rng.randint(1, 7)):
        words = rng.sample(FILLER, rng.randint(0, 4))
        if rng.random() < 0.6:
            words.insert(rng.randint(0, len(words)), rng.choice(TITLES))
        if rng.random() < 0.05:
            words.append(rng.choice(["http://t.co/abc123", "www.example.org", "me@example.com"]))
        if words:
            parts.append(" ".join(words))
    text = ""
    for i, part in enumerate(parts):
        text += part if i == 0 else rng.choice(PAUSES) + part
    return text


def random_tags(rng: random.Random) -> list[str]:
    return [rng.choice(TITLES).capitalize() for _ in range(rng.randint(0, 8))]


def synthetic_batch(n_profiles: int = 10_000, n_pages: int = 1_000, seed: int = 0):
    """Return (profiles, kb_pages, lexicon). Some personal sites resolve, a few collide."""
    rng = random.Random(seed)
    pages = []
    for i in range(n_pages):
        links = [f"http://www.site{i}.example.com/"]
        if i % 50 == 1:
            links.append(f"https://site{i - 1}.example.com")  # collides with page i-1
        if i % 97 == 0:
            links.append("not a url")
        roll = rng.random()
        infobox = first = None
        if roll < 0.6:
            infobox = ", ".join(f"[[{t}]]" if rng.random() < 0.3 else t for t in random_tags(rng))
        elif roll < 0.85:
            first = f"Person {i} is a {rng.choice(TITLES)} and {rng.choice(TITLES)}."
        pages.append(KbPage(f"Person {i}", tuple(links), infobox, first))

    profiles = []
    for i in range(n_profiles):
        url = None
        roll = rng.random()
        if roll < 0.3:
            url = f"https://site{rng.randrange(n_pages)}.example.com"
        elif roll < 0.7:
            url = f"http://personal{i}.example.net/"
        profiles.append(
            UserProfile(
                user_id=f"u{i:06d}",
                screen_name=f"user{i}",
                bio=random_bio(rng),
                personal_url=url,
                tweets_count=rng.randint(0, 5000),
                mentions_count=int(rng.paretovariate(1.2)) - 1,
                retweeted_count=rng.randint(0, 300),
                expert_score=round(rng.uniform(0, 100), 2),
            )
        )
    return profiles, pages, synthetic_lexicon()
