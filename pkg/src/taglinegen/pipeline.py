"""End-to-end tagline generation over a batch of experts."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .classification import classify_population, default_tagline, load_templates
from .ingest import OccupationLexicon, load_kb, load_lexicon, load_profiles, select_experts
from .linking import LinkIndex, build_link_index, generate_kb_candidates
from .model import Candidate, Method, PipelineConfig, Tagline, UserProfile
from .occupation import generate_occupation_candidates
from .selection import build_term_stats, flesch_score, select_final

logger = logging.getLogger(__name__)

GENERATED_METHODS = (Method.OCCUPATION_PATTERN, Method.LINK_TRIANGULATION)


@dataclass
class PipelineReport:
    experts: int = 0
    profiles_loaded: int = 0
    candidates_generated: dict = field(default_factory=lambda: {m.value: 0 for m in Method})
    users_with_candidates: dict = field(default_factory=lambda: {m.value: 0 for m in GENERATED_METHODS})
    users_covered: dict = field(default_factory=lambda: {m.value: 0 for m in Method})
    fallback_users: int = 0
    ambiguous_identities: int = 0
    skipped_kb_links: int = 0
    class_counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def to_record(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        lines = [
            f"profiles_loaded: {self.profiles_loaded}",
            f"experts: {self.experts}",
        ]
        lines += [f"candidates_generated.{k}: {v}" for k, v in self.candidates_generated.items()]
        lines += [f"users_with_candidates.{k}: {v}" for k, v in self.users_with_candidates.items()]
        lines += [f"users_covered.{k}: {v}" for k, v in self.users_covered.items()]
        lines += [
            f"fallback_users: {self.fallback_users}",
            f"ambiguous_identities: {self.ambiguous_identities}",
            f"skipped_kb_links: {self.skipped_kb_links}",
        ]
        lines += [f"class_counts.{k}: {v}" for k, v in sorted(self.class_counts.items())]
        lines += [f"time.{k}: {v:.3f}s" for k, v in self.timings.items()]
        lines += [f"diagnostic: {d}" for d in self.diagnostics]
        lines.append("record: " + json.dumps(self.to_record(), sort_keys=True, ensure_ascii=False))
        return "\n".join(lines) + "\n"


@contextmanager
def _timed(report: PipelineReport, stage: str):
    start = time.perf_counter()
    yield
    report.timings[stage] = report.timings.get(stage, 0.0) + time.perf_counter() - start


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def generate_candidates(
    experts: Sequence[UserProfile],
    lexicon: Optional[OccupationLexicon],
    index: Optional[LinkIndex],
    T: int,
    workers: int = 1,
    diagnostics: Optional[list] = None,
) -> list[list[Candidate]]:
    """Occupation and KB candidates per expert, aligned with ``experts``."""
    found = [] if diagnostics is None else diagnostics

    def one(p):
        out = []
        if lexicon is not None:
            out += generate_occupation_candidates(p, lexicon, T)
        if index is not None:
            out += generate_kb_candidates(p, index, T, found)
        return out

    result = _map(one, experts, workers)
    found.sort(key=str)
    return result


def select_taglines(
    pools: Sequence[Sequence[Candidate]],
    T: int,
    min_readability: Optional[float] = None,
    workers: int = 1,
    screen_names: Optional[Sequence[str]] = None,
) -> list[Optional[Tagline]]:
    """Pick one tagline per non-empty pool; term statistics span every generated candidate."""
    generated = [c for pool in pools for c in pool if c.method in GENERATED_METHODS]
    stats = build_term_stats(generated) if generated else None
    names = screen_names or [""] * len(pools)

    def one(args):
        pool, name = args
        if not pool:
            return None
        gen = [c for c in pool if c.method in GENERATED_METHODS]
        if gen:
            return select_final(gen, stats, T, min_readability, screen_name=name)
        c = pool[0]
        return Tagline(c.user_id, c.text, c.method, None, name)

    return _map(one, list(zip(pools, names)), workers)


def tagline_record(t: Tagline) -> dict:
    return {"user_id": t.user_id, "screen_name": t.screen_name, "tagline": t.text, "method": t.method.value, "score": t.score}


def candidate_record(c: Candidate, screen_name: str = "") -> dict:
    return {
        "user_id": c.user_id,
        "screen_name": screen_name,
        "text": c.text,
        "method": c.method.value,
        "char_length": c.char_length,
        "readability": c.readability if c.readability is not None else flesch_score(c.text),
    }


def write_records(records: Iterable[dict], fh) -> None:
    for record in records:
        fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def run_batch(
    profiles: Sequence[UserProfile],
    config: PipelineConfig,
    lexicon: Optional[OccupationLexicon],
    kb_pages: Optional[Sequence] = None,
    templates: Optional[Mapping[str, str]] = None,
    workers: int = 1,
) -> tuple[list[Tagline], PipelineReport]:
    """In-memory pipeline: expert sampling, generation, selection, and fallback."""
    report = PipelineReport(profiles_loaded=len(profiles))
    T = config.max_chars
    with _timed(report, "select_experts"):
        experts = select_experts(profiles, config.expert_fraction)
    report.experts = len(experts)

    with _timed(report, "index"):
        index = build_link_index(kb_pages) if kb_pages is not None else None
        if index is not None:
            report.skipped_kb_links = index.skipped_links
        templates = templates if templates is not None else load_templates()

    with _timed(report, "generate"):
        diagnostics: list = []
        pools = generate_candidates(experts, lexicon, index, T, workers, diagnostics)
    report.ambiguous_identities = len(diagnostics)
    report.diagnostics = [str(d) for d in diagnostics]
    for pool in pools:
        for m in {c.method for c in pool}:
            report.users_with_candidates[m.value] += 1
        for c in pool:
            report.candidates_generated[c.method.value] += 1

    with _timed(report, "classify"):
        classes = classify_population(experts, config.percentile)
        for cls in classes.values():
            report.class_counts[cls.template_id] = report.class_counts.get(cls.template_id, 0) + 1
        for p, pool in zip(experts, pools):
            if not pool:
                pool.append(default_tagline(classes[p.user_id], T, templates, user_id=p.user_id))
                report.candidates_generated[Method.USER_CLASSIFICATION.value] += 1
                report.fallback_users += 1

    with _timed(report, "select"):
        taglines = select_taglines(pools, T, config.min_readability, workers, [p.screen_name for p in experts])
    for t in taglines:
        report.users_covered[t.method.value] += 1
    return taglines, report


def run_pipeline(
    config: PipelineConfig,
    profiles_path,
    lexicon_path,
    kb_path,
    out_path,
    templates_path=None,
    report_path=None,
    workers: int = 1,
) -> PipelineReport:
    start = time.perf_counter()
    report_timings = {}
    t0 = time.perf_counter()
    profiles = load_profiles(profiles_path)
    lexicon = load_lexicon(lexicon_path) if lexicon_path else None
    kb_pages = load_kb(kb_path) if kb_path else None
    templates = load_templates(templates_path)
    report_timings["load"] = time.perf_counter() - t0

    taglines, report = run_batch(profiles, config, lexicon, kb_pages, templates, workers)
    report.timings = {**report_timings, **report.timings}

    t0 = time.perf_counter()
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        write_records((tagline_record(t) for t in taglines), fh)
    report.timings["write"] = time.perf_counter() - t0
    report.timings["total"] = time.perf_counter() - start
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_text())
    logger.info("wrote %d taglines to %s", len(taglines), out_path)
    return report
