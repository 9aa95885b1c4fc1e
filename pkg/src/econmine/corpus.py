"""Document ingestion, candidate matching, cleaning, and partitioning.

Candidate matching runs on the raw lowercased text, before tokenization,
because query phrases include '@' and '#' surface forms the tokenizer strips.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field

from .exceptions import ConfigError, InputError, ValidationError
from .sentiment import NEGATIVE, POSITIVE

logger = logging.getLogger(__name__)

MAX_TEXT_CHARS = 10_000

POLARITIES = (POSITIVE, NEGATIVE)

_URL_PREFIXES = ("http://", "https://", "www.")


@dataclass
class RawDocument:
    """One ingested tweet-like record."""

    id: str
    text: str
    timestamp: str | None = None
    candidates: set[str] = field(default_factory=set)


@dataclass(frozen=True)
class CandidateQuerySet:
    """Lowercase query phrases that identify one candidate."""

    candidate: str
    queries: tuple[str, ...]


@dataclass
class CleanDocument:
    id: str
    tokens: list[str]


@dataclass
class CorpusPartition:
    """All cleaned documents for one (candidate, polarity) bucket."""

    candidate: str
    polarity: str
    documents: list[CleanDocument]

    def __len__(self):
        return len(self.documents)


@dataclass
class LoadReport:
    """Per-run ingestion counters filled while the document stream is consumed."""

    read: int = 0
    loaded: int = 0
    skipped_malformed: int = 0
    skipped_duplicate_id: int = 0
    collapsed_duplicate_text: int = 0

    def as_dict(self):
        return {
            "read": self.read,
            "loaded": self.loaded,
            "skipped_malformed": self.skipped_malformed,
            "skipped_duplicate_id": self.skipped_duplicate_id,
            "collapsed_duplicate_text": self.collapsed_duplicate_text,
        }


def _coerce_record(record, report):
    """Validate one parsed record; returns RawDocument or None (counted)."""
    doc_id = record.get("id")
    text = record.get("text")
    if isinstance(doc_id, int):
        doc_id = str(doc_id)
    if not isinstance(doc_id, str) or not doc_id:
        report.skipped_malformed += 1
        return None
    if not isinstance(text, str) or not text or len(text) > MAX_TEXT_CHARS:
        report.skipped_malformed += 1
        return None
    timestamp = record.get("timestamp")
    if timestamp is not None and not isinstance(timestamp, str):
        timestamp = str(timestamp)
    return RawDocument(id=doc_id, text=text, timestamp=timestamp)


def _iter_jsonl(handle, report):
    for line in handle:
        line = line.strip()
        if not line:
            continue
        report.read += 1
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            report.skipped_malformed += 1
            continue
        if not isinstance(record, dict):
            report.skipped_malformed += 1
            continue
        yield record


def _iter_csv(handle, report, path):
    reader = csv.DictReader(handle)
    if reader.fieldnames is None:
        return
    missing = {"id", "text"} - set(reader.fieldnames)
    if missing:
        raise InputError(
            f"{path}: CSV header missing required column(s): {', '.join(sorted(missing))}"
        )
    for row in reader:
        report.read += 1
        yield {key: row.get(key) for key in ("id", "text", "timestamp")}


def load_documents(path, fmt="jsonl", on_duplicate_id="skip", dedup_texts=False,
                   report: LoadReport | None = None):
    """Stream RawDocuments from a JSONL or CSV file.

    Malformed records (missing or empty id/text, text over the 10,000-char
    cap, unparseable line) are skipped and counted in the report. Duplicate ids are skipped or fatal per ``on_duplicate_id``
    ('skip' | 'fatal'). With ``dedup_texts``, records whose text exactly
    equals an earlier record's text are collapsed onto the first occurrence.

    Returns an iterator; counters in ``report`` are final once it is consumed.
    """
    if fmt not in ("jsonl", "csv"):
        raise ConfigError(f"unsupported document format {fmt!r} (expected jsonl or csv)")
    if on_duplicate_id not in ("skip", "fatal"):
        raise ConfigError(f"on_duplicate_id must be 'skip' or 'fatal', got {on_duplicate_id!r}")
    if report is None:
        report = LoadReport()
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read documents file {path}: {exc}") from exc

    def generate():
        seen_ids = set()
        seen_texts = set()
        with handle:
            records = (_iter_jsonl(handle, report) if fmt == "jsonl"
                       else _iter_csv(handle, report, path))
            for record in records:
                doc = _coerce_record(record, report)
                if doc is None:
                    continue
                if doc.id in seen_ids:
                    if on_duplicate_id == "fatal":
                        raise ValidationError(f"{path}: duplicate document id {doc.id!r}")
                    report.skipped_duplicate_id += 1
                    continue
                seen_ids.add(doc.id)
                if dedup_texts:
                    if doc.text in seen_texts:
                        report.collapsed_duplicate_text += 1
                        continue
                    seen_texts.add(doc.text)
                report.loaded += 1
                yield doc

    return generate()


def load_query_sets(path) -> list[CandidateQuerySet]:
    """Load the candidate query file: ``candidate_id<TAB>query1|query2|...``.

    Queries are lowercased on load; '#' comment lines are ignored.
    """
    query_sets = []
    seen = set()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                if "\t" not in line:
                    raise ValidationError(
                        f"{path}:{lineno}: expected 'candidate<TAB>query1|query2|...'"
                    )
                candidate, _, query_part = line.partition("\t")
                candidate = candidate.strip()
                if not candidate:
                    raise ValidationError(f"{path}:{lineno}: empty candidate id")
                if candidate in seen:
                    raise ValidationError(f"{path}:{lineno}: duplicate candidate {candidate!r}")
                seen.add(candidate)
                queries = tuple(
                    q.strip().lower() for q in query_part.split("|") if q.strip()
                )
                if not queries:
                    raise ValidationError(
                        f"{path}:{lineno}: candidate {candidate!r} has no queries"
                    )
                query_sets.append(CandidateQuerySet(candidate, queries))
    except OSError as exc:
        raise InputError(f"cannot read query file {path}: {exc}") from exc
    if not query_sets:
        raise ValidationError(f"{path}: no candidates defined")
    return query_sets


def _phrase_occurs(text: str, phrase: str) -> bool:
    """Substring match with word-boundary semantics.

    A match is rejected when either end of the matched span falls inside an
    alphanumeric run (so query 'obama' does not hit 'obamacare'). '@'/'#'
    prefixes are matched literally because they are not alphanumeric.
    """
    start = text.find(phrase)
    end_of_text = len(text)
    while start != -1:
        end = start + len(phrase)
        left_ok = start == 0 or not (text[start - 1].isalnum() and text[start].isalnum())
        right_ok = end == end_of_text or not (text[end - 1].isalnum() and text[end].isalnum())
        if left_ok and right_ok:
            return True
        start = text.find(phrase, start + 1)
    return False


def match_candidates(doc: RawDocument, query_sets) -> set[str]:
    """Candidates whose query phrases occur in the document text.

    Case-insensitive; a document may match several candidates, and an empty
    result means the document leaves the pipeline.
    """
    text = doc.text.lower()
    matched = set()
    for query_set in query_sets:
        for phrase in query_set.queries:
            if _phrase_occurs(text, phrase):
                matched.add(query_set.candidate)
                break
    return matched


def tokenize(text: str) -> list[str]:
    """Normalize raw text into lowercase tokens.

    Lowercases, splits on whitespace, drops URL tokens (http://, https://,
    www.) and @-mentions, keeps hashtag bodies, strips leading/trailing
    non-alphanumeric characters, and drops tokens shorter than 2 characters
    or purely numeric.
    """
    tokens = []
    for raw in text.lower().split():
        if raw.startswith(_URL_PREFIXES):
            continue
        if raw.startswith("@"):
            continue
        if raw.startswith("#"):
            raw = raw[1:]
        i, j = 0, len(raw)
        while i < j and not raw[i].isalnum():
            i += 1
        while j > i and not raw[j - 1].isalnum():
            j -= 1
        word = raw[i:j]
        if len(word) < 2 or word.isdigit():
            continue
        tokens.append(word)
    return tokens


def remove_stopwords(tokens, stoplist) -> list[str]:
    """Order-preserving filter dropping tokens present in the stoplist."""
    return [token for token in tokens if token not in stoplist]


def load_stoplist(path) -> frozenset[str]:
    """Load a stoplist file: one lowercase word per line, '#' comments."""
    words = set()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for raw in handle:
                line = raw.strip().lower()
                if line and not line.startswith("#"):
                    words.add(line)
    except OSError as exc:
        raise InputError(f"cannot read stoplist file {path}: {exc}") from exc
    return frozenset(words)


def query_token_sets(query_sets) -> dict[str, frozenset[str]]:
    """Per-candidate token sets derived from their query phrases.

    Used by --drop-query-terms to keep a candidate's own name words out of
    that candidate's topic models.
    """
    result = {}
    for query_set in query_sets:
        tokens = set()
        for phrase in query_set.queries:
            tokens.update(tokenize(phrase))
        result[query_set.candidate] = frozenset(tokens)
    return result


def partition_corpus(labeled_docs, candidates, drop_tokens=None):
    """Bucket labeled documents into (candidate, polarity) partitions.

    ``labeled_docs`` yields (CleanDocument, candidate tags, sentiment label)
    triples. Produces exactly one partition per (candidate, polarity) pair in
    candidate order with positive before negative; neutral documents never
    appear, and a document tagged with several candidates lands in each of
    their partitions. Returns (partitions, empty_dropped) where the count is
    the number of (document, partition) placements dropped for having zero
    tokens.
    """
    buckets = {
        (candidate, polarity): []
        for candidate in candidates
        for polarity in POLARITIES
    }
    empty_dropped = 0
    for doc, tags, label in labeled_docs:
        if label not in POLARITIES:
            continue
        for candidate in candidates:
            if candidate not in tags:
                continue
            tokens = doc.tokens
            if drop_tokens is not None:
                excluded = drop_tokens.get(candidate)
                if excluded:
                    tokens = [t for t in tokens if t not in excluded]
            if not tokens:
                empty_dropped += 1
                continue
            if tokens is doc.tokens:
                buckets[(candidate, label)].append(doc)
            else:
                buckets[(candidate, label)].append(CleanDocument(doc.id, tokens))
    partitions = [
        CorpusPartition(candidate, polarity, buckets[(candidate, polarity)])
        for candidate in candidates
        for polarity in POLARITIES
    ]
    return partitions, empty_dropped
