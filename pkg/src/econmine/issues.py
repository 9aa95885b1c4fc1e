"""Mapping trained topics onto the five economic issues.

Replaces manual topic labeling with a deterministic keyword rule: an issue
lexicon is matched against each topic's top words (prefix wildcards allowed),
the issue with the most matched words wins, count ties fall to the higher
matched probability mass, and exact ties or zero matches leave the topic
unassigned. The lexicon is user-overridable so a human pass can be emulated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .exceptions import ValidationError
from .lda import TopicSummary
from .resources import data_path
from .wordmatch import WildcardSet, parse_sectioned_file

logger = logging.getLogger(__name__)

ISSUES = ("EconomyInGeneral", "Job", "BudgetDeficit", "Healthcare", "Tax")
UNASSIGNED = "Unassigned"

DEFAULT_TOP_WORDS = 10


@dataclass(frozen=True)
class IssueLexicon:
    issue: str
    keywords: WildcardSet


@dataclass(frozen=True)
class IssueAssignment:
    topic: int
    issue: str  # one of ISSUES, or UNASSIGNED
    matched_words: tuple[str, ...]  # top words that hit the issue's lexicon
    score: float  # summed probability of the matched words


def load_issue_lexicon(path=None) -> dict[str, IssueLexicon]:
    """Load issue lexicons; with no path, the bundled default set.

    The file needs one ``[Issue]`` section per taxonomy issue, one keyword
    per line, trailing ``*`` wildcards, '#' comments. A missing or empty
    issue section is fatal.
    """
    if path is None:
        path = data_path("issue_lexicon.txt")
    sections = parse_sectioned_file(path, allowed_sections=ISSUES)
    lexicons = {}
    for issue in ISSUES:
        keywords = sections.get(issue)
        if not keywords:
            raise ValidationError(f"{path}: missing or empty [{issue}] section")
        lexicons[issue] = IssueLexicon(issue, WildcardSet(keywords, what="issue keyword"))
    return lexicons


def assign_issue(summary: TopicSummary, lexicons, top_n=DEFAULT_TOP_WORDS) -> IssueAssignment:
    """Assign one topic to the issue its top words point at.

    Only the first ``top_n`` words are consulted. The winning issue has the
    highest matched-word count; ties break by higher summed word probability;
    a residual exact tie (or no match anywhere) yields UNASSIGNED.
    """
    words = summary.words[:top_n]
    probs = {word: prob for word, prob in words}
    best = None  # (count, score, issue, matched words)
    tied = False
    for issue in ISSUES:
        keywords = lexicons[issue].keywords
        matched = tuple(word for word, _ in words if keywords.matches(word))
        if not matched:
            continue
        score = sum(probs[word] for word in matched)
        key = (len(matched), score)
        if best is None or key > (best[0], best[1]):
            best = (len(matched), score, issue, matched)
            tied = False
        elif key == (best[0], best[1]):
            tied = True
    if best is None:
        return IssueAssignment(summary.topic, UNASSIGNED, (), 0.0)
    if tied:
        logger.info(
            "topic %d: issue tie at count=%d score=%.6f, leaving unassigned",
            summary.topic, best[0], best[1],
        )
        return IssueAssignment(summary.topic, UNASSIGNED, (), 0.0)
    return IssueAssignment(summary.topic, best[2], best[3], best[1])


def filter_economic_topics(assignments) -> dict[str, list[IssueAssignment]]:
    """Group assigned topics by issue, discarding unassigned ones."""
    grouped: dict[str, list[IssueAssignment]] = {issue: [] for issue in ISSUES}
    for assignment in assignments:
        if assignment.issue != UNASSIGNED:
            grouped[assignment.issue].append(assignment)
    return grouped


def issue_counts(assignments) -> dict[str, int]:
    """Assigned-topic count per issue."""
    grouped = filter_economic_topics(assignments)
    return {issue: len(topics) for issue, topics in grouped.items()}
