"""Sanity checks on the data files shipped inside the package."""

from econmine.corpus import load_query_sets, load_stoplist
from econmine.dpnt import load_survey
from econmine.issues import ISSUES, load_issue_lexicon
from econmine.resources import data_path
from econmine.sentiment import default_lexicon


def test_stoplist_basics():
    stop = load_stoplist(data_path("stoplist.txt"))
    assert "the" in stop
    assert 250 <= len(stop) <= 400
    assert all(word == word.lower() for word in stop)


def test_stoplist_disjoint_from_lexicons():
    # a stoplisted signal word would silently bias default runs
    stop = load_stoplist(data_path("stoplist.txt"))
    lexicon = default_lexicon()
    issue_lexicons = load_issue_lexicon()
    for word in stop:
        assert not lexicon.positive.matches(word), word
        assert not lexicon.negative.matches(word), word
        for issue in ISSUES:
            assert not issue_lexicons[issue].keywords.matches(word), (issue, word)


def test_bundled_queries():
    query_sets = load_query_sets(data_path("queries_2012.tsv"))
    assert [qs.candidate for qs in query_sets] == ["obama", "romney"]
    assert all(len(qs.queries) == 4 for qs in query_sets)


def test_bundled_survey():
    survey = load_survey(data_path("survey_pew_2012.csv"))
    assert set(survey) == set(ISSUES)


def test_issue_lexicon_contains_seed_keywords():
    lexicons = load_issue_lexicon()
    seeds = {
        "Tax": ["tax", "taxes"],
        "Job": ["jobs", "unemployment"],
        "Healthcare": ["healthcare", "insurance", "obamacare", "care"],
        "BudgetDeficit": ["deficit", "debt", "budget", "trillion"],
        "EconomyInGeneral": ["economy", "markets", "recession"],
    }
    for issue, words in seeds.items():
        for word in words:
            assert lexicons[issue].keywords.matches(word), (issue, word)
