import logging
import random

import pytest

from econmine.exceptions import ValidationError
from econmine.issues import (
    ISSUES,
    UNASSIGNED,
    assign_issue,
    filter_economic_topics,
    issue_counts,
    load_issue_lexicon,
)
from econmine.lda import TopicSummary


def summary(words, topic=0, start=0.05, step=0.002):
    """TopicSummary with synthetic, strictly decreasing probabilities."""
    return TopicSummary(topic, tuple(
        (word, start - i * step) for i, word in enumerate(words)
    ))


# the published five-word sample lists and the issues they belong to
SAMPLE_TOPICS = [
    (["good", "economy", "markets", "grows", "succeed"], "EconomyInGeneral"),
    (["jobs", "created", "millions", "private", "sector"], "Job"),
    (["debt", "trillion", "deficit", "national", "added"], "BudgetDeficit"),
    (["care", "health", "obamacare", "insurance", "affordable"], "Healthcare"),
    (["tax", "plan", "raise", "rich", "wealthy"], "Tax"),
    (["romney", "bad", "economy", "idea", "policies"], "EconomyInGeneral"),
    (["romney", "hurt", "thousands", "families", "business"], "Job"),
    (["deficit", "gov", "debt", "left", "budget"], "BudgetDeficit"),
    (["health", "insurance", "american", "people", "americans"], "Healthcare"),
    (["tax", "plan", "companies", "worse", "make"], "Tax"),
]


@pytest.fixture(scope="module")
def lexicons():
    return load_issue_lexicon()


class TestLoadIssueLexicon:
    def test_builtin_default_has_five_nonempty_issues(self):
        lexicons = load_issue_lexicon()
        assert set(lexicons) == set(ISSUES)
        assert all(len(lex.keywords) > 0 for lex in lexicons.values())

    def test_missing_section_fatal(self, tmp_path):
        path = tmp_path / "issues.txt"
        path.write_text(
            "[EconomyInGeneral]\necon*\n[Job]\njob*\n[BudgetDeficit]\ndebt\n"
            "[Healthcare]\nhealth*\n"
        )
        with pytest.raises(ValidationError, match="Tax"):
            load_issue_lexicon(path)

    def test_empty_section_fatal(self, tmp_path):
        path = tmp_path / "issues.txt"
        path.write_text(
            "[EconomyInGeneral]\necon*\n[Job]\njob*\n[BudgetDeficit]\ndebt\n"
            "[Healthcare]\nhealth*\n[Tax]\n"
        )
        with pytest.raises(ValidationError, match="Tax"):
            load_issue_lexicon(path)

    def test_added_keyword_reflected(self, tmp_path):
        path = tmp_path / "issues.txt"
        path.write_text(
            "[EconomyInGeneral]\necon*\n[Job]\njob*\n[BudgetDeficit]\ndebt\n"
            "[Healthcare]\nhealth*\nmedicare\n[Tax]\ntax*\n"
        )
        lexicons = load_issue_lexicon(path)
        assert lexicons["Healthcare"].keywords.matches("medicare")

    def test_unknown_section_fatal(self, tmp_path):
        path = tmp_path / "issues.txt"
        path.write_text("[ForeignPolicy]\nwar\n")
        with pytest.raises(ValidationError):
            load_issue_lexicon(path)


class TestAssignIssue:
    @pytest.mark.parametrize("words,expected", SAMPLE_TOPICS)
    def test_sample_topics_map_to_their_issues(self, lexicons, words, expected):
        assert assign_issue(summary(words), lexicons).issue == expected

    def test_zero_matches_unassigned(self, lexicons):
        result = assign_issue(summary(["weather", "sunny", "rain"]), lexicons)
        assert result.issue == UNASSIGNED
        assert result.matched_words == ()
        assert result.score == 0.0

    def test_matched_words_and_score(self, lexicons):
        result = assign_issue(summary(["tax", "taxes", "plan"]), lexicons)
        assert result.issue == "Tax"
        assert result.matched_words == ("tax", "taxes")
        assert result.score == pytest.approx(0.05 + 0.048)

    def test_count_tie_broken_by_probability_mass(self, lexicons):
        # one Tax word and one Job word; Tax word carries more probability
        result = assign_issue(summary(["tax", "jobs", "plan"]), lexicons)
        assert result.issue == "Tax"

    def test_exact_tie_unassigned_and_logged(self, lexicons, caplog):
        words = (("tax", 0.05), ("jobs", 0.05))
        with caplog.at_level(logging.INFO):
            result = assign_issue(TopicSummary(3, words), lexicons)
        assert result.issue == UNASSIGNED
        assert any("tie" in rec.message for rec in caplog.records)

    def test_only_top_n_words_considered(self, lexicons):
        # a Tax word in position 11 must not influence the assignment
        filler = [f"zz{i}" for i in range(10)]
        words = summary(filler + ["tax"])
        assert assign_issue(words, lexicons, top_n=10).issue == UNASSIGNED
        assert assign_issue(words, lexicons, top_n=11).issue == "Tax"

    def test_monotone_in_keywords(self, tmp_path):
        # adding a keyword to an issue never decreases its matched count
        rng = random.Random(71)
        base = (
            "[EconomyInGeneral]\necon*\n[Job]\njob*\n[BudgetDeficit]\ndebt\n"
            "[Healthcare]\nhealth*\n[Tax]\ntax*\n"
        )
        path_a = tmp_path / "a.txt"
        path_a.write_text(base)
        lex_a = load_issue_lexicon(path_a)
        path_b = tmp_path / "b.txt"
        path_b.write_text(base.replace("[Job]\njob*", "[Job]\njob*\nwork*"))
        lex_b = load_issue_lexicon(path_b)
        pool = ["jobs", "work", "worker", "tax", "debt", "health", "econ", "blah", "zz"]
        for _ in range(200):
            words = [rng.choice(pool) + str(rng.randint(0, 3)) for _ in range(5)]
            words = list(dict.fromkeys(words))
            count_a = sum(lex_a["Job"].keywords.matches(w) for w in words)
            count_b = sum(lex_b["Job"].keywords.matches(w) for w in words)
            assert count_b >= count_a


class TestFilterEconomicTopics:
    def test_grouping_excludes_unassigned(self, lexicons):
        topics = [
            summary(["tax", "plan"], topic=0),
            summary(["taxes", "cuts"], topic=1),
            summary(["weather", "rain"], topic=2),
        ]
        assignments = [assign_issue(t, lexicons) for t in topics]
        grouped = filter_economic_topics(assignments)
        assert [a.topic for a in grouped["Tax"]] == [0, 1]
        assert all(not grouped[issue] for issue in ISSUES if issue != "Tax")

    def test_all_unassigned_gives_empty_lists(self, lexicons):
        assignments = [assign_issue(summary(["xyz", "abc"]), lexicons)]
        grouped = filter_economic_topics(assignments)
        assert all(grouped[issue] == [] for issue in ISSUES)

    def test_planted_job_topics_pass_through(self, lexicons):
        # mimic a positive partition with 34 job-flavored topics plus noise:
        # counts must survive grouping unchanged
        job_words = ["jobs", "created", "millions", "private", "sector"]
        topics = [summary(job_words, topic=i) for i in range(34)]
        topics += [summary(["weather", "rain"], topic=100 + i) for i in range(6)]
        assignments = [assign_issue(t, lexicons) for t in topics]
        counts = issue_counts(assignments)
        assert counts["Job"] == 34
        assert sum(counts.values()) == 34

    def test_determinism(self, lexicons):
        topics = [summary(["tax", "jobs", "debt"], topic=i) for i in range(5)]
        first = [assign_issue(t, lexicons) for t in topics]
        second = [assign_issue(t, lexicons) for t in topics]
        assert first == second
