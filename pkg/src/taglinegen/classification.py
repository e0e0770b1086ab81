"""Default taglines from popularity / activity / diffusion classes."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Optional, Sequence

from .errors import DomainError, EmptyInput, ParseError
from .model import Candidate, Method, UserProfile


class Level(str, enum.Enum):
    LOW = "low"
    HIGH = "high"

    @property
    def code(self) -> str:
        return "H" if self is Level.HIGH else "L"


METRICS = ("popularity", "activity", "diffusion")
# raw counter feeding each metric
METRIC_SOURCES = {
    "popularity": "mentions_count",
    "activity": "tweets_count",
    "diffusion": "retweeted_count",
}
CLASS_CODES = tuple(a + b + c for a in "HL" for b in "HL" for c in "HL")


@dataclass(frozen=True)
class MetricVector:
    popularity: float
    activity: float
    diffusion: float

    def __post_init__(self):
        for name in METRICS:
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name}={value!r} outside [0, 1]")

    def as_tuple(self):
        return (self.popularity, self.activity, self.diffusion)


@dataclass(frozen=True)
class UserClass:
    popularity: Level
    activity: Level
    diffusion: Level

    @property
    def levels(self):
        return (self.popularity, self.activity, self.diffusion)

    @property
    def template_id(self) -> str:
        return "".join(level.code for level in self.levels)

    @classmethod
    def from_code(cls, code: str) -> "UserClass":
        if code not in CLASS_CODES:
            raise ValueError(f"unknown class code {code!r}")
        return cls(*(Level.HIGH if ch == "H" else Level.LOW for ch in code))


def normalize_metric(V: int, MaxV: int, base: Optional[float] = None) -> float:
    """log(V + 1) / log(MaxV + 1); 0 for an all-zero population."""
    if V < 0 or V > MaxV:
        raise DomainError(f"metric value {V} outside [0, {MaxV}]")
    if MaxV == 0:
        return 0.0
    if base is None:
        return math.log1p(V) / math.log1p(MaxV)
    return math.log(V + 1, base) / math.log(MaxV + 1, base)


def population_maxima(profiles: Sequence[UserProfile]) -> tuple[int, int, int]:
    if not profiles:
        return (0, 0, 0)
    return tuple(max(getattr(p, METRIC_SOURCES[m]) for p in profiles) for m in METRICS)


def compute_metrics(p: UserProfile, maxima: Sequence[int]) -> MetricVector:
    values = [normalize_metric(getattr(p, METRIC_SOURCES[m]), mx) for m, mx in zip(METRICS, maxima)]
    return MetricVector(*values)


def lower_percentile(values: Sequence[float], percentile: float) -> float:
    ordered = sorted(values)
    return ordered[math.floor(percentile / 100.0 * (len(ordered) - 1))]


def compute_thresholds(vectors: Sequence[MetricVector], percentile: float = 50.0) -> tuple[float, float, float]:
    if not vectors:
        raise EmptyInput("cannot compute thresholds over an empty population")
    if not 0 < percentile < 100:
        raise ValueError(f"percentile must be in (0, 100), got {percentile!r}")
    columns = zip(*(v.as_tuple() for v in vectors))
    return tuple(lower_percentile(col, percentile) for col in columns)


def classify(v: MetricVector, thresholds: Sequence[float]) -> UserClass:
    # ties go to LOW
    return UserClass(*(Level.HIGH if x > t else Level.LOW for x, t in zip(v.as_tuple(), thresholds)))


def parse_templates(lines) -> dict[str, str]:
    table = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        code, sep, text = line.partition("\t")
        code = code.strip().upper()
        if not sep or code not in CLASS_CODES or not text.strip():
            raise ParseError(lineno, "expected '<HHH..LLL><TAB>text'")
        if code in table:
            raise ParseError(lineno, f"duplicate template {code}")
        if "\n" in text:
            raise ParseError(lineno, "template text must be a single line")
        table[code] = " ".join(text.split())
    missing = [c for c in CLASS_CODES if c not in table]
    if missing:
        raise ParseError(0, f"template table missing classes {missing}")
    return table


def load_templates(path=None) -> dict[str, str]:
    """Load a template table file; ``None`` loads the bundled default table."""
    if path is None:
        text = resources.files(__package__).joinpath("templates.tsv").read_text(encoding="utf-8")
        return parse_templates(text.splitlines())
    with open(path, encoding="utf-8") as fh:
        return parse_templates(fh)


def truncate_words(text: str, limit: int) -> str:
    """Longest word-prefix of ``text`` fitting ``limit``; hard cut if even one word does not."""
    if len(text) <= limit:
        return text
    out = ""
    for word in text.split():
        trial = f"{out} {word}" if out else word
        if len(trial) > limit:
            break
        out = trial
    return out or text[:limit]


_DEFAULT_TEMPLATES: Optional[dict] = None


def default_tagline(
    c: UserClass, T: int, templates: Optional[Mapping[str, str]] = None, user_id: str = ""
) -> Candidate:
    global _DEFAULT_TEMPLATES
    if templates is None:
        if _DEFAULT_TEMPLATES is None:
            _DEFAULT_TEMPLATES = load_templates()
        templates = _DEFAULT_TEMPLATES
    text = truncate_words(templates[c.template_id], T)
    return Candidate(user_id=user_id, text=text, method=Method.USER_CLASSIFICATION)


def classify_population(profiles: Sequence[UserProfile], percentile: float = 50.0) -> dict[str, UserClass]:
    """Class of every profile, with maxima and thresholds taken over ``profiles``."""
    if not profiles:
        return {}
    maxima = population_maxima(profiles)
    vectors = [compute_metrics(p, maxima) for p in profiles]
    thresholds = compute_thresholds(vectors, percentile)
    return {p.user_id: classify(v, thresholds) for p, v in zip(profiles, vectors)}
