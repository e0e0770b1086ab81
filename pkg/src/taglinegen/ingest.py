"""File loaders for profiles, the occupation lexicon and the KB snapshot, plus expert sampling."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .errors import DuplicateUser, EmptyInput, EmptyLexicon, InvalidProfile, ParseError
from .model import UserProfile, validate_profile

PROFILE_REQUIRED = {
    "user_id": str,
    "screen_name": str,
    "tweets_count": int,
    "mentions_count": int,
    "retweeted_count": int,
    "expert_score": (int, float),
}
PROFILE_OPTIONAL = {"bio": str, "url": str}

KB_REQUIRED = {"title": str, "external_links": list}
KB_OPTIONAL = {"infobox_occupation": str, "first_sentence": str}


@dataclass(frozen=True)
class OccupationLexicon:
    titles: frozenset

    def __post_init__(self):
        if not self.titles:
            raise EmptyLexicon("occupation lexicon has no titles")
        normalized = frozenset(normalize_title(t) for t in self.titles)
        if "" in normalized:
            raise ValueError("occupation titles must be non-empty")
        object.__setattr__(self, "titles", normalized)

    def __contains__(self, title):
        return normalize_title(title) in self.titles

    def __len__(self):
        return len(self.titles)

    def __iter__(self):
        return iter(sorted(self.titles))


@dataclass(frozen=True)
class KbPage:
    title: str
    external_links: tuple = ()
    infobox_occupation: Optional[str] = None
    first_sentence: Optional[str] = None

    def __post_init__(self):
        if not self.title:
            raise ValueError("KB page title must be non-empty")
        object.__setattr__(self, "external_links", tuple(self.external_links))


def normalize_title(title: str) -> str:
    return " ".join(title.split()).lower()


def _iter_records(path) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(record, dict):
                raise ParseError(lineno, "record is not an object")
            yield lineno, record


def _check_fields(lineno, record, required, optional):
    unknown = set(record) - set(required) - set(optional)
    if unknown:
        raise ParseError(lineno, f"unknown field(s) {sorted(unknown)}")
    for name, kind in required.items():
        if name not in record:
            raise ParseError(lineno, f"missing field {name!r}")
        value = record[name]
        if isinstance(value, bool) or not isinstance(value, kind):
            raise ParseError(lineno, f"field {name!r} has wrong type")
    for name, kind in optional.items():
        value = record.get(name)
        if value is not None and not isinstance(value, kind):
            raise ParseError(lineno, f"field {name!r} has wrong type")


def parse_profile(record: dict, lineno: int = 0) -> UserProfile:
    _check_fields(lineno, record, PROFILE_REQUIRED, PROFILE_OPTIONAL)
    profile = UserProfile(
        user_id=record["user_id"],
        screen_name=record["screen_name"],
        bio=record.get("bio") or "",
        personal_url=record.get("url") or None,
        tweets_count=record["tweets_count"],
        mentions_count=record["mentions_count"],
        retweeted_count=record["retweeted_count"],
        expert_score=float(record["expert_score"]),
    )
    try:
        return validate_profile(profile)
    except InvalidProfile as exc:
        raise InvalidProfile(exc.field, f"line {lineno}: invalid profile field: {exc.field}") from None


def load_profiles(path) -> list[UserProfile]:
    """Read a newline-delimited JSON profiles file, keeping file order.

    Raises ParseError (with the 1-based line number) on malformed records,
    InvalidProfile on invariant violations and DuplicateUser on a repeated user_id.
    """
    profiles = []
    seen = set()
    for lineno, record in _iter_records(path):
        profile = parse_profile(record, lineno)
        if profile.user_id in seen:
            raise DuplicateUser(profile.user_id, lineno)
        seen.add(profile.user_id)
        profiles.append(profile)
    return profiles


def profile_to_record(p: UserProfile) -> dict:
    record = {
        "user_id": p.user_id,
        "screen_name": p.screen_name,
        "bio": p.bio,
        "url": p.personal_url,
        "tweets_count": p.tweets_count,
        "mentions_count": p.mentions_count,
        "retweeted_count": p.retweeted_count,
        "expert_score": p.expert_score,
    }
    if record["url"] is None:
        del record["url"]
    return record


def save_profiles(profiles: Iterable[UserProfile], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for p in profiles:
            fh.write(json.dumps(profile_to_record(p), ensure_ascii=False) + "\n")


def select_experts(profiles: list[UserProfile], fraction: float) -> list[UserProfile]:
    """Rank by expert_score (desc, ties by user_id) and keep the top ceil(fraction * N)."""
    if not profiles:
        raise EmptyInput("no profiles to select experts from")
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction!r}")
    ranked = sorted(profiles, key=lambda p: (-p.expert_score, p.user_id))
    # guard against 0.3 * 10 = 3.0000000000000004
    k = math.ceil(round(fraction * len(profiles), 9))
    return ranked[: max(1, k)]


def parse_lexicon_lines(lines: Iterable[str]) -> OccupationLexicon:
    titles = set()
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        titles.add(normalize_title(stripped))
    if not titles:
        raise EmptyLexicon("lexicon file contains no titles")
    return OccupationLexicon(frozenset(titles))


def load_lexicon(path) -> OccupationLexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon_lines(fh)


def save_lexicon(lexicon: OccupationLexicon, path) -> None:
    Path(path).write_text("".join(t + "\n" for t in sorted(lexicon.titles)), encoding="utf-8")


def load_kb(path) -> list[KbPage]:
    pages = []
    for lineno, record in _iter_records(path):
        _check_fields(lineno, record, KB_REQUIRED, KB_OPTIONAL)
        links = record["external_links"]
        if not all(isinstance(u, str) for u in links):
            raise ParseError(lineno, "external_links must be strings")
        if not record["title"]:
            raise ParseError(lineno, "empty title")
        pages.append(
            KbPage(
                title=record["title"],
                external_links=tuple(links),
                infobox_occupation=record.get("infobox_occupation"),
                first_sentence=record.get("first_sentence"),
            )
        )
    return pages


def kb_page_to_record(page: KbPage) -> dict:
    record = {"title": page.title, "external_links": list(page.external_links)}
    if page.infobox_occupation is not None:
        record["infobox_occupation"] = page.infobox_occupation
    if page.first_sentence is not None:
        record["first_sentence"] = page.first_sentence
    return record


def save_kb(pages: Iterable[KbPage], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for page in pages:
            fh.write(json.dumps(kb_page_to_record(page), ensure_ascii=False) + "\n")
