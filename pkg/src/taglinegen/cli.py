"""Command-line interface: ``taglinegen <generate|select|classify|evaluate|pipeline>``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from contextlib import contextmanager

from . import evaluation
from .classification import classify_population, default_tagline, load_templates
from .errors import ParseError, TaglineError
from .ingest import load_kb, load_lexicon, load_profiles, select_experts
from .linking import build_link_index
from .model import Candidate, PipelineConfig
from .pipeline import (
    candidate_record,
    generate_candidates,
    run_pipeline,
    select_taglines,
    tagline_record,
    write_records,
)

ENV_PREFIX = "TAGLINEGEN_"

GLOBAL_OPTIONS = [
    ("--max-chars", dict(type=int, default=70, help="tagline character budget T (default: 70)")),
    ("--expert-fraction", dict(type=float, default=0.30, help="top fraction of profiles by expert score (default: 0.30)")),
    ("--percentile", dict(type=float, default=50.0, help="class threshold percentile (default: 50)")),
    ("--min-readability", dict(type=float, default=None, help="drop candidates below this Flesch score")),
    ("--lexicon", dict(help="occupation lexicon file")),
    ("--kb", dict(help="knowledge-base snapshot (JSON lines)")),
    ("--profiles", dict(help="profiles file (JSON lines)")),
    ("--templates", dict(help="class template table (TSV); bundled table if omitted")),
    ("--out", dict(default="-", help="output file, '-' for stdout (default)")),
    ("--report", dict(help="write a run report to this file")),
    ("--workers", dict(type=int, default=1, help="worker threads (default: 1)")),
]


def _env_name(flag: str) -> str:
    return ENV_PREFIX + flag.lstrip("-").replace("-", "_").upper()


def _add_global_options(parser, env, suppress: bool):
    for flag, kwargs in GLOBAL_OPTIONS:
        kwargs = dict(kwargs)
        name = _env_name(flag)
        if suppress:
            kwargs["default"] = argparse.SUPPRESS
        elif name in env:
            kind = kwargs.get("type", str)
            try:
                kwargs["default"] = kind(env[name])
            except ValueError:
                raise SystemExit(f"taglinegen: error: bad value for {name}: {env[name]!r}") from None
        parser.add_argument(flag, **kwargs)


def build_parser(env=None) -> argparse.ArgumentParser:
    env = os.environ if env is None else env
    parser = argparse.ArgumentParser(
        prog="taglinegen",
        description="Generate short expertise taglines for expert users and evaluate them.",
        epilog=f"Every global flag can also be set through an environment variable, e.g. {ENV_PREFIX}MAX_CHARS.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    _add_global_options(parser, env, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_global_options(p, env, suppress=True)
        return p

    gen = command("generate", "write occupation / KB candidates for the selected experts")
    gen.add_argument(
        "--method",
        choices=["all", "occupation_pattern", "link_triangulation"],
        default="all",
        help="restrict to one generation method",
    )
    sel = command("select", "pick one tagline per user from a candidates file")
    sel.add_argument("--candidates", required=True, help="candidates file written by 'generate'")
    command("classify", "write the class-based default tagline for every selected expert")
    ev = command("evaluate", "compute user-study statistics from judgment CSV files")
    ev.add_argument("--generation", help="generation judgments CSV (item_id,judge_id,question,rating)")
    ev.add_argument("--selection", help="selection judgments CSV (item_id,algorithmic_choice,judge_id,choice)")
    ev.add_argument("--question", default="Q1", choices=["Q1", "Q2"], help="generation question to score (default: Q1)")
    command("pipeline", "run the full pipeline: generate, select, fall back to classes")
    return parser


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _require(args, parser, *names):
    missing = [n for n in names if not getattr(args, n, None)]
    if missing:
        parser.error(f"{args.command}: missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _config(args, parser) -> PipelineConfig:
    try:
        return PipelineConfig(
            max_chars=args.max_chars,
            expert_fraction=args.expert_fraction,
            percentile=args.percentile,
            min_readability=args.min_readability,
        )
    except ValueError as exc:
        parser.error(str(exc))


def _load_candidates(path):
    pools: dict = {}
    names: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                c = Candidate(user_id=record["user_id"], text=record["text"], method=record["method"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ParseError(lineno, f"bad candidate record ({exc})") from None
            pools.setdefault(c.user_id, []).append(c)
            names.setdefault(c.user_id, record.get("screen_name") or "")
    return pools, names


def _cmd_generate(args, parser, config):
    _require(args, parser, "profiles")
    if args.method in ("all", "occupation_pattern"):
        _require(args, parser, "lexicon")
    if args.method in ("all", "link_triangulation"):
        _require(args, parser, "kb")
    experts = select_experts(load_profiles(args.profiles), config.expert_fraction)
    lexicon = load_lexicon(args.lexicon) if args.method in ("all", "occupation_pattern") else None
    index = build_link_index(load_kb(args.kb)) if args.method in ("all", "link_triangulation") else None
    diagnostics: list = []
    pools = generate_candidates(experts, lexicon, index, config.max_chars, args.workers, diagnostics)
    for d in diagnostics:
        logging.getLogger("taglinegen").warning("%s", d)
    with _output(args.out) as fh:
        write_records((candidate_record(c, p.screen_name) for p, pool in zip(experts, pools) for c in pool), fh)


def _cmd_select(args, parser, config):
    pools, names = _load_candidates(args.candidates)
    users = list(pools)
    taglines = select_taglines(
        [pools[u] for u in users], config.max_chars, config.min_readability, args.workers, [names[u] for u in users]
    )
    with _output(args.out) as fh:
        write_records((tagline_record(t) for t in taglines if t is not None), fh)


def _cmd_classify(args, parser, config):
    _require(args, parser, "profiles")
    experts = select_experts(load_profiles(args.profiles), config.expert_fraction)
    templates = load_templates(args.templates)
    classes = classify_population(experts, config.percentile)
    with _output(args.out) as fh:
        for p in experts:
            c = default_tagline(classes[p.user_id], config.max_chars, templates, user_id=p.user_id)
            record = candidate_record(c, p.screen_name)
            record["class"] = classes[p.user_id].template_id
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def _fmt(value):
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.4f}"
    return str(value)


def _cmd_evaluate(args, parser, config):
    if not args.generation and not args.selection:
        parser.error("evaluate: give --generation and/or --selection")
    lines = []
    if args.generation:
        items = evaluation.load_generation_judgments(args.generation, args.question)
        stats = evaluation.generation_report(items)
        lines += [f"generation.{k}: {_fmt(v)}" for k, v in stats.items()]
        q3 = evaluation.q3_distribution(args.generation)
        if any(q3.values()):
            lines += [f"generation.q3[{k}]: {v}" for k, v in q3.items()]
    if args.selection:
        stats = evaluation.selection_report(evaluation.load_selection_judgments(args.selection))
        lines += [f"selection.{k}: {_fmt(v)}" for k, v in stats.items()]
    with _output(args.out) as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_pipeline(args, parser, config):
    _require(args, parser, "profiles", "lexicon", "kb")
    if args.out in (None, "-"):
        parser.error("pipeline: --out is required")
    report = run_pipeline(
        config, args.profiles, args.lexicon, args.kb, args.out, args.templates, args.report, args.workers
    )
    if not args.report:
        sys.stderr.write(report.to_text())


COMMANDS = {
    "generate": _cmd_generate,
    "select": _cmd_select,
    "classify": _cmd_classify,
    "evaluate": _cmd_evaluate,
    "pipeline": _cmd_pipeline,
}


def main(argv=None, env=None) -> int:
    try:
        parser = build_parser(env)
    except SystemExit as exc:
        print(exc, file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.workers < 1:
        parser.print_usage(sys.stderr)
        print("taglinegen: error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        config = _config(args, parser)
        COMMANDS[args.command](args, parser, config)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (TaglineError, OSError, ValueError) as exc:
        print(f"taglinegen: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
