import dataclasses

import pytest

from taglinegen.errors import InvalidProfile
from taglinegen.model import Candidate, Method, PipelineConfig, UserProfile, validate_profile


def test_all_zero_counters_valid():
    p = UserProfile("u1")
    assert validate_profile(p) is p


@pytest.mark.parametrize("field", ["tweets_count", "mentions_count", "retweeted_count"])
def test_negative_counter_rejected(field):
    p = dataclasses.replace(UserProfile("u1"), **{field: -1})
    with pytest.raises(InvalidProfile) as info:
        validate_profile(p)
    assert info.value.field == field


def test_empty_user_id_rejected():
    with pytest.raises(InvalidProfile) as info:
        validate_profile(UserProfile(""))
    assert info.value.field == "user_id"


def test_candidate_counts_code_points():
    c = Candidate("u", "café ☕", Method.OCCUPATION_PATTERN)
    assert c.char_length == 6


def test_candidate_rejects_newline():
    with pytest.raises(ValueError):
        Candidate("u", "a\nb", Method.OCCUPATION_PATTERN)


def test_candidate_method_coerced_from_string():
    assert Candidate("u", "x", "link_triangulation").method is Method.LINK_TRIANGULATION
    with pytest.raises(ValueError):
        Candidate("u", "x", "made_up")


def test_config_defaults_and_bounds():
    cfg = PipelineConfig()
    assert (cfg.max_chars, cfg.expert_fraction, cfg.percentile, cfg.min_readability) == (70, 0.30, 50.0, None)
    for bad in [dict(max_chars=0), dict(expert_fraction=0), dict(expert_fraction=1.5), dict(percentile=100)]:
        with pytest.raises(ValueError):
            PipelineConfig(**bad)
