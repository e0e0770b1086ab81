"""User-study statistics: majority agreement, good-summary rate, Fleiss' kappa."""

from __future__ import annotations

import csv
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyInput, ParseError, UnequalRaterCounts

GOOD_RATINGS = frozenset({1, 2})
GENERATION_HEADER = ["item_id", "judge_id", "question", "rating"]
SELECTION_HEADER = ["item_id", "algorithmic_choice", "judge_id", "choice"]
QUESTIONS = ("Q1", "Q2", "Q3")
_QUESTION_RANGE = {"Q1": {0, 1, 2}, "Q2": {0, 1, 2}, "Q3": {-1, 0, 1}}


@dataclass(frozen=True)
class GenerationJudgment:
    item_id: str
    ratings: tuple

    def __post_init__(self):
        object.__setattr__(self, "ratings", tuple(self.ratings))
        if len(self.ratings) < 2:
            raise ValueError(f"item {self.item_id}: need at least 2 ratings")
        if any(r not in (0, 1, 2) for r in self.ratings):
            raise ValueError(f"item {self.item_id}: ratings must be 0, 1 or 2")


@dataclass(frozen=True)
class SelectionJudgment:
    item_id: str
    algorithmic_choice: int
    judge_choices: tuple

    def __post_init__(self):
        object.__setattr__(self, "judge_choices", tuple(self.judge_choices))
        if self.algorithmic_choice not in (1, 2):
            raise ValueError(f"item {self.item_id}: algorithmic_choice must be 1 or 2")
        if any(c not in (0, 1, 2) for c in self.judge_choices):
            raise ValueError(f"item {self.item_id}: judge choices must be 0, 1 or 2")


def _strict_majority(votes: int, judges: int) -> bool:
    return 2 * votes > judges


def majority_good_pct(items: Sequence[GenerationJudgment]) -> float:
    """Percent of items where a strict majority of judges rated good or very good."""
    if not items:
        raise EmptyInput("no generation judgments")
    agreed = sum(_strict_majority(sum(r in GOOD_RATINGS for r in it.ratings), len(it.ratings)) for it in items)
    return 100.0 * agreed / len(items)


def good_pct(items: Sequence[GenerationJudgment]) -> float:
    if not items:
        raise EmptyInput("no generation judgments")
    total = sum(len(it.ratings) for it in items)
    good = sum(r in GOOD_RATINGS for it in items for r in it.ratings)
    return 100.0 * good / total


def category_counts(items: Sequence[Sequence[int]], categories: int) -> list[list[int]]:
    """Per-item count matrix (items x categories) from per-rater labels."""
    rows = []
    for i, ratings in enumerate(items):
        row = [0] * categories
        for r in ratings:
            if not 0 <= r < categories:
                raise ValueError(f"item {i}: rating {r} outside 0..{categories - 1}")
            row[r] += 1
        rows.append(row)
    return rows


def fleiss_kappa(items: Sequence[Sequence[int]], categories: int) -> float:
    """Fleiss' kappa over items rated by the same number of raters.

    ``items[i]`` lists the category index (0..categories-1) each rater gave item i.
    """
    if not items:
        raise EmptyInput("no rated items")
    n = len(items[0])
    if n < 2:
        raise UnequalRaterCounts("fleiss kappa needs at least 2 raters per item")
    if any(len(r) != n for r in items):
        raise UnequalRaterCounts("every item must have the same number of raters")
    counts = category_counts(items, categories)
    N = len(counts)
    p_bar = sum((sum(c * c for c in row) - n) / (n * (n - 1)) for row in counts) / N
    totals = [sum(row[j] for row in counts) for j in range(categories)]
    p_e = sum((t / (N * n)) ** 2 for t in totals)
    if all(max(row) == n for row in counts):
        return 1.0
    if p_e >= 1.0:
        raise ZeroDivisionError("expected agreement is 1 without perfect observed agreement")
    return (p_bar - p_e) / (1.0 - p_e)


def _informative(items: Sequence[SelectionJudgment]) -> list[SelectionJudgment]:
    # drop items where every judge said "both are about the same"
    return [it for it in items if any(c != 0 for c in it.judge_choices)]


def selection_majority_agreement(items: Sequence[SelectionJudgment]) -> float:
    kept = _informative(items)
    if not kept:
        raise EmptyInput("no selection judgments left after discarding all-zero items")
    agreed = sum(
        _strict_majority(sum(c == it.algorithmic_choice for c in it.judge_choices), len(it.judge_choices))
        for it in kept
    )
    return 100.0 * agreed / len(kept)


def selection_any_agreement(items: Sequence[SelectionJudgment]) -> float:
    """Percent of informative items where at least one judge matched the algorithm."""
    kept = _informative(items)
    if not kept:
        raise EmptyInput("no selection judgments left after discarding all-zero items")
    return 100.0 * sum(any(c == it.algorithmic_choice for c in it.judge_choices) for it in kept) / len(kept)


def _read_csv(path, header):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first is None or [h.strip() for h in first] != header:
            raise ParseError(1, f"expected header {','.join(header)}")
        for lineno, row in enumerate(reader, start=2):
            if not row or not any(cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise ParseError(lineno, f"expected {len(header)} columns, got {len(row)}")
            yield lineno, [cell.strip() for cell in row]


def _int(lineno, value, name):
    try:
        return int(value)
    except ValueError:
        raise ParseError(lineno, f"{name} is not an integer: {value!r}") from None


def load_generation_ratings(path) -> dict[str, dict[str, list[tuple[str, int]]]]:
    """question -> item_id -> [(judge_id, rating)] in file order."""
    out: dict = {q: defaultdict(list) for q in QUESTIONS}
    for lineno, (item_id, judge_id, question, rating) in _read_csv(path, GENERATION_HEADER):
        q = question.upper()
        if q not in _QUESTION_RANGE:
            raise ParseError(lineno, f"unknown question {question!r}")
        value = _int(lineno, rating, "rating")
        if value not in _QUESTION_RANGE[q]:
            raise ParseError(lineno, f"rating {value} out of range for {q}")
        if any(j == judge_id for j, _ in out[q][item_id]):
            raise ParseError(lineno, f"judge {judge_id} rated item {item_id} twice for {q}")
        out[q][item_id].append((judge_id, value))
    return {q: dict(items) for q, items in out.items()}


def load_generation_judgments(path, question: str = "Q1") -> list[GenerationJudgment]:
    by_item = load_generation_ratings(path).get(question.upper(), {})
    return [
        GenerationJudgment(item_id, tuple(r for _, r in sorted(rows)))
        for item_id, rows in sorted(by_item.items())
    ]


def q3_distribution(path) -> dict[int, int]:
    """Counts of Q3 answers (1 accurate, 0 misleading, -1 don't know)."""
    counts = Counter(r for rows in load_generation_ratings(path)["Q3"].values() for _, r in rows)
    return {k: counts.get(k, 0) for k in (1, 0, -1)}


def load_selection_judgments(path) -> list[SelectionJudgment]:
    items: dict = {}
    for lineno, (item_id, algo, judge_id, choice) in _read_csv(path, SELECTION_HEADER):
        algo_v = _int(lineno, algo, "algorithmic_choice")
        choice_v = _int(lineno, choice, "choice")
        if algo_v not in (1, 2):
            raise ParseError(lineno, "algorithmic_choice must be 1 or 2")
        if choice_v not in (0, 1, 2):
            raise ParseError(lineno, "choice must be 0, 1 or 2")
        entry = items.setdefault(item_id, [algo_v, []])
        if entry[0] != algo_v:
            raise ParseError(lineno, f"item {item_id} has conflicting algorithmic_choice")
        entry[1].append((judge_id, choice_v))
    return [
        SelectionJudgment(item_id, algo, tuple(c for _, c in sorted(rows)))
        for item_id, (algo, rows) in sorted(items.items())
    ]


def generation_report(items: Sequence[GenerationJudgment]) -> dict[str, float]:
    raters = {len(it.ratings) for it in items}
    kappa = fleiss_kappa([it.ratings for it in items], 3) if len(raters) == 1 else float("nan")
    return {
        "items": len(items),
        "majority_good_pct": majority_good_pct(items),
        "good_pct": good_pct(items),
        "fleiss_kappa": kappa,
    }


def selection_report(items: Sequence[SelectionJudgment]) -> dict[str, float]:
    kept = _informative(items)
    raters = {len(it.judge_choices) for it in kept}
    kappa = fleiss_kappa([it.judge_choices for it in kept], 3) if len(raters) == 1 else float("nan")
    return {
        "items": len(items),
        "informative_items": len(kept),
        "majority_agreement_pct": selection_majority_agreement(items),
        "agreed_pct": selection_any_agreement(items),
        "fleiss_kappa": kappa,
    }
