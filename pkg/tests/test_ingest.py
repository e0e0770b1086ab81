import pytest
from hypothesis import given, strategies as st

from conftest import profile_record
from taglinegen.errors import DuplicateUser, EmptyInput, EmptyLexicon, InvalidProfile, ParseError
from taglinegen.ingest import (
    OccupationLexicon,
    load_kb,
    load_lexicon,
    load_profiles,
    save_lexicon,
    select_experts,
)
from taglinegen.model import UserProfile


def test_load_profiles_in_order(write_jsonl):
    path = write_jsonl("p.jsonl", [profile_record("b", bio="Chef"), profile_record("a", url="http://x.com")])
    profiles = load_profiles(path)
    assert [p.user_id for p in profiles] == ["b", "a"]
    assert profiles[0].bio == "Chef" and profiles[0].personal_url is None
    assert profiles[1].personal_url == "http://x.com"


def test_malformed_line_reports_line_number(tmp_path):
    path = tmp_path / "p.jsonl"
    import json

    good = json.dumps(profile_record("a"))
    path.write_text(f"{good}\n{json.dumps(profile_record('b'))}\n{{not json\n")
    with pytest.raises(ParseError) as info:
        load_profiles(path)
    assert info.value.line == 3


def test_duplicate_user(write_jsonl):
    path = write_jsonl("p.jsonl", [profile_record("u1"), profile_record("u1")])
    with pytest.raises(DuplicateUser) as info:
        load_profiles(path)
    assert info.value.user_id == "u1"


def test_negative_counter_in_file(write_jsonl):
    path = write_jsonl("p.jsonl", [profile_record("u1", tweets=-1)])
    with pytest.raises(InvalidProfile):
        load_profiles(path)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda r: r.pop("expert_score"),
        lambda r: r.update(tweets_count="3"),
        lambda r: r.update(extra=1),
        lambda r: r.update(bio=5),
    ],
)
def test_schema_violations_are_parse_errors(write_jsonl, mutate):
    record = profile_record("u1")
    mutate(record)
    with pytest.raises(ParseError):
        load_profiles(write_jsonl("p.jsonl", [record]))


def _profiles(scores):
    return [UserProfile(f"u{i}", expert_score=s) for i, s in enumerate(scores)]


def test_select_top_30_percent():
    profiles = _profiles([5, 9, 1, 7, 3, 8, 2, 6, 4, 10])
    top = select_experts(profiles, 0.30)
    assert [p.expert_score for p in top] == [10, 9, 8]


def test_select_all_sorted():
    profiles = _profiles([1, 3, 2])
    assert [p.expert_score for p in select_experts(profiles, 1.0)] == [3, 2, 1]


def test_tie_break_by_user_id():
    profiles = [UserProfile(uid, expert_score=5.0) for uid in ["d", "b", "c", "a"]]
    assert [p.user_id for p in select_experts(profiles, 0.5)] == ["a", "b"]


def test_select_empty():
    with pytest.raises(EmptyInput):
        select_experts([], 0.3)


@given(
    st.lists(st.integers(0, 20), min_size=1, max_size=40),
    st.floats(0.01, 1.0),
    st.randoms(use_true_random=False),
)
def test_select_size_and_permutation_invariance(scores, fraction, rnd):
    import math

    profiles = _profiles(scores)
    shuffled = list(profiles)
    rnd.shuffle(shuffled)
    a, b = select_experts(profiles, fraction), select_experts(shuffled, fraction)
    assert a == b
    assert len(a) == math.ceil(round(fraction * len(profiles), 9))


def test_load_lexicon(tmp_path):
    path = tmp_path / "lex.txt"
    path.write_text("Author\neditor-in-chief\n\n# note\n  Tech   Journalist \n")
    assert load_lexicon(path).titles == {"author", "editor-in-chief", "tech journalist"}


def test_lexicon_dedup(tmp_path):
    path = tmp_path / "lex.txt"
    path.write_text("Writer\nwriter\n")
    assert load_lexicon(path).titles == {"writer"}


def test_lexicon_only_comments(tmp_path):
    path = tmp_path / "lex.txt"
    path.write_text("# a\n#b\n\n")
    with pytest.raises(EmptyLexicon):
        load_lexicon(path)


@given(st.sets(st.from_regex(r"[a-z]{1,8}( [a-z]{1,8}){0,2}|[a-z]{1,5}-[a-z]{1,5}", fullmatch=True), min_size=1))
def test_lexicon_round_trip(tmp_path_factory, titles):
    path = tmp_path_factory.mktemp("lex") / "lex.txt"
    lex = OccupationLexicon(frozenset(titles))
    save_lexicon(lex, path)
    once = load_lexicon(path)
    save_lexicon(once, path)
    assert once == lex == load_lexicon(path)


def test_load_kb(write_jsonl):
    path = write_jsonl(
        "kb.jsonl",
        [
            {"title": "Rachael Ray", "external_links": ["http://www.rachaelray.com"],
             "infobox_occupation": "[[Television personality]]"},
            {"title": "Bare", "external_links": []},
        ],
    )
    pages = load_kb(path)
    assert pages[0].title == "Rachael Ray" and len(pages[0].external_links) == 1
    assert pages[0].infobox_occupation == "[[Television personality]]"
    assert pages[1].infobox_occupation is None and pages[1].first_sentence is None


@pytest.mark.parametrize(
    "record",
    [{"external_links": []}, {"title": "x", "external_links": "http://a.com"}, {"title": "x", "external_links": [1]}],
)
def test_load_kb_malformed(write_jsonl, record):
    with pytest.raises(ParseError) as info:
        load_kb(write_jsonl("kb.jsonl", [{"title": "ok", "external_links": []}, record]))
    assert info.value.line == 2
