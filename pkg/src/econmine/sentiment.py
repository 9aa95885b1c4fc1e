"""Lexicon-based polarity classification.

A document is scored by counting token occurrences that match a predefined
positive or negative dictionary; the majority polarity wins and ties
(including zero matches on both sides) are neutral. There is no negation
handling and no valence weighting: the method is pure frequency counting.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .exceptions import ValidationError
from .resources import data_path
from .wordmatch import WildcardSet, parse_sectioned_file

logger = logging.getLogger(__name__)

POSITIVE = "positive"
NEGATIVE = "negative"
NEUTRAL = "neutral"

LABELS = (POSITIVE, NEGATIVE, NEUTRAL)


@dataclass(frozen=True)
class SentimentResult:
    pos_count: int
    neg_count: int
    label: str

    @classmethod
    def from_counts(cls, pos_count: int, neg_count: int) -> "SentimentResult":
        if pos_count > neg_count:
            label = POSITIVE
        elif neg_count > pos_count:
            label = NEGATIVE
        else:
            label = NEUTRAL
        return cls(pos_count, neg_count, label)


class SentimentLexicon:
    """Positive and negative entry sets with LIWC-style prefix wildcards."""

    __slots__ = ("positive", "negative")

    def __init__(self, positive, negative):
        self.positive = WildcardSet(positive, what="positive entry")
        self.negative = WildcardSet(negative, what="negative entry")
        overlap = self.positive.entries & self.negative.entries
        if overlap:
            raise ValidationError(
                "lexicon entries appear in both polarities: "
                + ", ".join(sorted(overlap))
            )

    def swapped(self) -> "SentimentLexicon":
        """Lexicon with the positive and negative sets exchanged."""
        return SentimentLexicon(self.negative.entries, self.positive.entries)


def load_lexicon(path) -> SentimentLexicon:
    """Load a sentiment lexicon file.

    Format: section headers ``[positive]`` and ``[negative]``, one entry per
    line, trailing ``*`` for prefix wildcards, '#' comment lines ignored.
    An entry listed under both sections is a fatal validation error; an empty
    section only warns.
    """
    sections = parse_sectioned_file(path, allowed_sections=(POSITIVE, NEGATIVE))
    positive = sections.get(POSITIVE, [])
    negative = sections.get(NEGATIVE, [])
    lexicon = SentimentLexicon(positive, negative)
    for name, wset in ((POSITIVE, lexicon.positive), (NEGATIVE, lexicon.negative)):
        if not len(wset):
            logger.warning("sentiment lexicon %s has no [%s] entries", path, name)
    logger.info(
        "loaded sentiment lexicon %s: %d positive, %d negative entries",
        path,
        len(lexicon.positive),
        len(lexicon.negative),
    )
    return lexicon


def default_lexicon() -> SentimentLexicon:
    """The small demonstration lexicon bundled with the package."""
    return load_lexicon(data_path("sentiment_lexicon.txt"))


def count_matches(tokens, lexicon: SentimentLexicon) -> tuple[int, int]:
    """Count token occurrences matching each polarity.

    Occurrences, not types: a token appearing three times counts three times.
    A token that matches both a literal and a wildcard of the same polarity
    still counts once per occurrence.
    """
    pos_literals = lexicon.positive.literals
    pos_prefixes = lexicon.positive.prefixes
    neg_literals = lexicon.negative.literals
    neg_prefixes = lexicon.negative.prefixes
    pos = 0
    neg = 0
    for token in tokens:
        if token in pos_literals or (pos_prefixes and token.startswith(pos_prefixes)):
            pos += 1
        if token in neg_literals or (neg_prefixes and token.startswith(neg_prefixes)):
            neg += 1
    return pos, neg


def classify(tokens, lexicon: SentimentLexicon) -> SentimentResult:
    """Label a tokenized document by strict match-count majority."""
    pos, neg = count_matches(tokens, lexicon)
    return SentimentResult.from_counts(pos, neg)
