import logging

import pytest

from econmine.exceptions import ValidationError
from econmine.sentiment import (
    NEGATIVE,
    NEUTRAL,
    POSITIVE,
    SentimentLexicon,
    classify,
    count_matches,
    default_lexicon,
    load_lexicon,
)
from helpers_sentiment import run_property_suites


class TestLoadLexicon:
    def test_basic_parse(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("[positive]\ngood\nhappi*\n[negative]\nbad\n")
        lexicon = load_lexicon(path)
        assert len(lexicon.positive) == 2
        assert len(lexicon.negative) == 1

    def test_entry_in_both_sections_fatal(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("[positive]\ngood\n[negative]\ngood\n")
        with pytest.raises(ValidationError, match="good"):
            load_lexicon(path)

    def test_empty_file_warns(self, tmp_path, caplog):
        path = tmp_path / "lex.txt"
        path.write_text("")
        with caplog.at_level(logging.WARNING):
            lexicon = load_lexicon(path)
        assert len(lexicon.positive) == 0
        assert len(lexicon.negative) == 0
        assert sum("no [" in rec.message for rec in caplog.records) == 2

    def test_comments_and_blanks_ignored(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("# header\n[positive]\n\n# comment\ngood\n[negative]\nbad\n")
        lexicon = load_lexicon(path)
        assert len(lexicon.positive) == 1

    def test_short_wildcard_stem_rejected(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("[positive]\na*\n[negative]\nbad\n")
        with pytest.raises(ValidationError, match="stem"):
            load_lexicon(path)

    def test_interior_star_rejected(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("[positive]\ngo*od\n[negative]\nbad\n")
        with pytest.raises(ValidationError):
            load_lexicon(path)

    def test_unknown_section_rejected(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("[maybe]\nhmm\n")
        with pytest.raises(ValidationError, match="maybe"):
            load_lexicon(path)

    def test_default_lexicon_ships_forty_per_polarity(self):
        lexicon = default_lexicon()
        assert len(lexicon.positive) == 40
        assert len(lexicon.negative) == 40


class TestCountMatches:
    def test_occurrences_not_types(self):
        lexicon = SentimentLexicon(["good"], ["bad"])
        assert count_matches(["good", "good", "bad"], lexicon) == (2, 1)

    def test_prefix_wildcard(self):
        lexicon = SentimentLexicon(["happi*"], [])
        assert count_matches(["happiness"], lexicon) == (1, 0)

    def test_disjoint_lexicon(self):
        lexicon = SentimentLexicon(["good"], ["bad"])
        assert count_matches(["tax", "plan"], lexicon) == (0, 0)

    def test_literal_and_wildcard_count_once(self):
        lexicon = SentimentLexicon(["good", "goo*"], [])
        assert count_matches(["good"], lexicon) == (1, 0)

    def test_token_can_hit_both_polarities(self):
        lexicon = SentimentLexicon(["good"], ["goo*"])
        assert count_matches(["good"], lexicon) == (1, 1)


class TestClassify:
    def test_majority_positive(self):
        lexicon = SentimentLexicon(["good"], ["bad"])
        result = classify(["good", "good", "bad"], lexicon)
        assert (result.pos_count, result.neg_count, result.label) == (2, 1, POSITIVE)

    def test_zero_zero_is_neutral(self):
        lexicon = SentimentLexicon(["good"], ["bad"])
        assert classify(["tax"], lexicon).label == NEUTRAL

    def test_majority_negative(self):
        lexicon = SentimentLexicon(["good"], ["bad"])
        result = classify(["good", "bad", "bad", "bad"], lexicon)
        assert (result.pos_count, result.neg_count, result.label) == (1, 3, NEGATIVE)

    def test_exact_tie_is_neutral(self):
        lexicon = SentimentLexicon(["good"], ["bad"])
        assert classify(["good", "bad"], lexicon).label == NEUTRAL


def test_monotonicity_appending_positive_token():
    # appending a positive-only match never moves the label toward negative
    import random

    from helpers_sentiment import brute_matches, random_lexicon, random_tokens

    order = {NEGATIVE: 0, NEUTRAL: 1, POSITIVE: 2}
    rng = random.Random(424242)
    done = 0
    while done < 1000:
        lexicon, pos_e, neg_e = random_lexicon(rng)
        pos_only = [
            e for e in pos_e
            if not e.endswith("*") and not brute_matches(e, neg_e)
        ]
        if not pos_only:
            continue
        tokens = random_tokens(rng, pos_e, neg_e)
        before = classify(tokens, lexicon)
        after = classify(tokens + [rng.choice(pos_only)], lexicon)
        assert after.pos_count == before.pos_count + 1
        assert after.neg_count == before.neg_count
        assert order[after.label] >= order[before.label]
        done += 1


def test_randomized_property_suites():
    results = run_property_suites(cases=1000)
    assert set(results) == {
        "majority_rule_vs_reference",
        "tie_is_neutral",
        "polarity_swap_symmetry",
        "permutation_invariance",
        "occurrence_counting",
        "wildcard_prefix_matching",
    }
    for name, (cases, failures) in results.items():
        assert cases >= 1000, name
        assert failures == 0, name
