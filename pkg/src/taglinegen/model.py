"""Shared record types and pipeline configuration."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidProfile

DEFAULT_MAX_CHARS = 70
DEFAULT_EXPERT_FRACTION = 0.30
DEFAULT_PERCENTILE = 50.0


class Method(str, enum.Enum):
    """Provenance of a candidate tagline, in selection priority order."""

    OCCUPATION_PATTERN = "occupation_pattern"
    LINK_TRIANGULATION = "link_triangulation"
    USER_CLASSIFICATION = "user_classification"

    @property
    def priority(self) -> int:
        return _PRIORITY[self]

    def __str__(self) -> str:
        return self.value


_PRIORITY = {
    Method.OCCUPATION_PATTERN: 0,
    Method.LINK_TRIANGULATION: 1,
    Method.USER_CLASSIFICATION: 2,
}

COUNTER_FIELDS = ("tweets_count", "mentions_count", "retweeted_count")


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    screen_name: str = ""
    bio: str = ""
    personal_url: Optional[str] = None
    tweets_count: int = 0
    mentions_count: int = 0
    retweeted_count: int = 0
    expert_score: float = 0.0


def validate_profile(p: UserProfile) -> UserProfile:
    """Return ``p`` unchanged, or raise InvalidProfile naming the bad field."""
    if not isinstance(p.user_id, str) or not p.user_id:
        raise InvalidProfile("user_id")
    for name in COUNTER_FIELDS:
        value = getattr(p, name)
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise InvalidProfile(name)
    score = p.expert_score
    if isinstance(score, bool) or not isinstance(score, (int, float)) or not score >= 0:
        raise InvalidProfile("expert_score")
    return p


@dataclass(frozen=True)
class PipelineConfig:
    max_chars: int = DEFAULT_MAX_CHARS
    expert_fraction: float = DEFAULT_EXPERT_FRACTION
    percentile: float = DEFAULT_PERCENTILE
    min_readability: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.max_chars, bool) or not isinstance(self.max_chars, int) or self.max_chars < 1:
            raise ValueError(f"max_chars must be a positive integer, got {self.max_chars!r}")
        if not 0 < self.expert_fraction <= 1:
            raise ValueError(f"expert_fraction must be in (0, 1], got {self.expert_fraction!r}")
        if not 0 < self.percentile < 100:
            raise ValueError(f"percentile must be in (0, 100), got {self.percentile!r}")
        if self.min_readability is not None and not 0 <= self.min_readability <= 100:
            raise ValueError(f"min_readability must be in [0, 100], got {self.min_readability!r}")


@dataclass(frozen=True)
class Candidate:
    """A generated tagline candidate. ``char_length`` counts code points."""

    user_id: str
    text: str
    method: Method
    readability: Optional[float] = None
    score: Optional[float] = None

    def __post_init__(self):
        if "\n" in self.text or "\r" in self.text:
            raise ValueError("candidate text must not contain newlines")
        object.__setattr__(self, "method", Method(self.method))

    @property
    def char_length(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class Tagline:
    user_id: str
    text: str
    method: Method
    score: Optional[float] = None
    screen_name: str = ""

    @property
    def char_length(self) -> int:
        return len(self.text)
