import sys
import json

import pytest

from taglinegen.ingest import OccupationLexicon

WORKED_BIO = (
    "Tech journalist for All Things D. Oregonian transplanted to New York. "
    "Former BusinessWeek writer and columnist. Columbia grad."
)


@pytest.fixture
def lexicon():
    return OccupationLexicon(frozenset({"journalist", "writer", "columnist"}))


@pytest.fixture
def write_jsonl(tmp_path):
    def write(name, records):
        path = tmp_path / name
        path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
        return path

    return write


def profile_record(user_id, bio="", url=None, tweets=0, mentions=0, retweets=0, score=1.0, screen_name=None):
    record = {
        "user_id": user_id,
        "screen_name": screen_name or f"sn_{user_id}",
        "bio": bio,
        "tweets_count": tweets,
        "mentions_count": mentions,
        "retweeted_count": retweets,
        "expert_score": score,
    }
    if url is not None:
        record["url"] = url
    return record


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
