"""End-to-end orchestration: ingest -> sentiment -> topics -> issues -> report.

Each stage reads the previous stage's artifact from the output directory and
writes its own before the next begins, so stages are independently runnable
and a failed run keeps its partial outputs (marked incomplete in the
manifest). Rerunning with the same config and inputs reproduces every
artifact byte for byte; the manifest is the one exception because it records
wall-clock timings.
"""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import corpus, dpnt, issues, lda, sentiment
from .exceptions import ConfigError, StageError
from .resources import data_path
from .rng import MASK64

logger = logging.getLogger(__name__)

STAGES = ("ingest", "sentiment", "topics", "issues", "report")

REPORT_FORMATS = ("md", "json", "csv")

_ARTIFACTS = {
    "ingest": "ingest.jsonl",
    "sentiment": "sentiment.jsonl",
    "issues": "issue_counts.json",
}

_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def _parse_bool(key, value):
    lowered = value.strip().lower()
    if lowered in _TRUE_WORDS:
        return True
    if lowered in _FALSE_WORDS:
        return False
    raise ConfigError(f"config key {key!r}: expected a boolean, got {value!r}")


@dataclass
class PipelineConfig:
    documents: Path
    queries: Path | None = None          # None -> bundled 2012 query file
    stoplist: Path | None = None         # None -> bundled default stoplist
    sentiment_lexicon: Path | None = None  # None -> bundled demo lexicon
    issue_lexicon: Path | None = None    # None -> bundled default lexicon
    survey: Path | None = None           # None -> bundled survey fixture
    out_dir: Path = Path("out")
    doc_format: str = "jsonl"
    lda: lda.LdaConfig = field(default_factory=lda.LdaConfig)
    dedup: bool = False
    drop_query_terms: bool = False
    on_duplicate_id: str = "skip"
    report_formats: tuple[str, ...] = ("md", "json")
    top_words: int = 10
    model_format: str = "json"

    def resolved(self, name: str) -> Path:
        """Input path for ``name``, falling back to the bundled default."""
        value = getattr(self, name)
        if value is not None:
            return Path(value)
        defaults = {
            "queries": "queries_2012.tsv",
            "stoplist": "stoplist.txt",
            "sentiment_lexicon": "sentiment_lexicon.txt",
            "issue_lexicon": "issue_lexicon.txt",
            "survey": "survey_pew_2012.csv",
        }
        return data_path(defaults[name])

    def validate(self):
        if self.doc_format not in ("jsonl", "csv"):
            raise ConfigError(f"format must be jsonl or csv, got {self.doc_format!r}")
        if self.on_duplicate_id not in ("skip", "fatal"):
            raise ConfigError(
                f"on_duplicate_id must be skip or fatal, got {self.on_duplicate_id!r}"
            )
        if self.model_format not in ("json", "npz"):
            raise ConfigError(f"model_format must be json or npz, got {self.model_format!r}")
        if not self.report_formats:
            raise ConfigError("at least one report format is required")
        for fmt in self.report_formats:
            if fmt not in REPORT_FORMATS:
                raise ConfigError(
                    f"unknown report format {fmt!r} (expected md, json, or csv)"
                )
        if self.top_words < 1:
            raise ConfigError("top_words must be >= 1")
        self.lda.validate()
        for name in ("documents", "queries", "stoplist", "sentiment_lexicon",
                     "issue_lexicon", "survey"):
            path = Path(self.documents) if name == "documents" else self.resolved(name)
            if not path.is_file():
                raise ConfigError(f"{name} file not found: {path}")
        out_dir = Path(self.out_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ConfigError(f"cannot create output directory {out_dir}: {exc}") from exc

    def snapshot(self) -> dict:
        """Resolved configuration as stored in the manifest."""
        return {
            "documents": str(self.documents),
            "queries": str(self.resolved("queries")),
            "stoplist": str(self.resolved("stoplist")),
            "sentiment_lexicon": str(self.resolved("sentiment_lexicon")),
            "issue_lexicon": str(self.resolved("issue_lexicon")),
            "survey": str(self.resolved("survey")),
            "out_dir": str(self.out_dir),
            "format": self.doc_format,
            "lda": self.lda.as_dict(),
            "dedup": self.dedup,
            "drop_query_terms": self.drop_query_terms,
            "on_duplicate_id": self.on_duplicate_id,
            "report_formats": list(self.report_formats),
            "top_words": self.top_words,
            "model_format": self.model_format,
        }


_CONFIG_KEYS = {
    "documents", "queries", "stoplist", "sentiment_lexicon", "issue_lexicon",
    "survey", "out_dir", "format", "num_topics", "k", "alpha", "beta",
    "iterations", "seed", "min_word_count", "trace_interval", "dedup",
    "drop_query_terms", "on_duplicate_id", "report_formats", "top_words",
    "model_format",
}


def parse_config_file(path) -> dict[str, str]:
    """Parse the flat ``key = value`` config grammar.

    One assignment per line; '#' lines and blank lines are ignored; keys are
    case-insensitive; unknown keys are fatal.
    """
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                key = key.strip().lower()
                value = value.strip()
                if key not in _CONFIG_KEYS:
                    raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
                if not value:
                    raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
                values[key] = value
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def config_from_values(values: dict[str, str], base_dir=None) -> PipelineConfig:
    """Build a PipelineConfig from flat string values (file plus overrides).

    Relative paths resolve against ``base_dir`` (the config file's directory)
    when given.
    """
    def path_of(key):
        if key not in values:
            return None
        path = Path(values[key])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        return path

    documents = path_of("documents")
    if documents is None:
        raise ConfigError("config is missing required key 'documents'")

    lda_kwargs = {}
    if "k" in values and "num_topics" in values:
        raise ConfigError("config sets both 'k' and 'num_topics'; use one")
    try:
        if "k" in values:
            lda_kwargs["num_topics"] = int(values["k"])
        if "num_topics" in values:
            lda_kwargs["num_topics"] = int(values["num_topics"])
        if "alpha" in values:
            lda_kwargs["alpha"] = float(values["alpha"])
        if "beta" in values:
            lda_kwargs["beta"] = float(values["beta"])
        if "iterations" in values:
            lda_kwargs["iterations"] = int(values["iterations"])
        if "seed" in values:
            lda_kwargs["seed"] = int(values["seed"]) & MASK64
        if "min_word_count" in values:
            lda_kwargs["min_word_count"] = int(values["min_word_count"])
        if "trace_interval" in values:
            lda_kwargs["trace_interval"] = int(values["trace_interval"])
        top_words = int(values.get("top_words", "10"))
    except ValueError as exc:
        raise ConfigError(f"bad numeric config value: {exc}") from exc

    report_formats = tuple(
        fmt.strip() for fmt in values.get("report_formats", "md,json").split(",")
        if fmt.strip()
    )
    return PipelineConfig(
        documents=documents,
        queries=path_of("queries"),
        stoplist=path_of("stoplist"),
        sentiment_lexicon=path_of("sentiment_lexicon"),
        issue_lexicon=path_of("issue_lexicon"),
        survey=path_of("survey"),
        out_dir=path_of("out_dir") or Path("out"),
        doc_format=values.get("format", "jsonl"),
        lda=lda.LdaConfig(**lda_kwargs),
        dedup=_parse_bool("dedup", values["dedup"]) if "dedup" in values else False,
        drop_query_terms=(
            _parse_bool("drop_query_terms", values["drop_query_terms"])
            if "drop_query_terms" in values else False
        ),
        on_duplicate_id=values.get("on_duplicate_id", "skip"),
        report_formats=report_formats,
        top_words=top_words,
        model_format=values.get("model_format", "json"),
    )


def load_config(path, overrides=None) -> PipelineConfig:
    """Load a config file and apply CLI-style overrides (flags win)."""
    values = parse_config_file(path)
    config = config_from_values(values, base_dir=Path(path).resolve().parent)
    if overrides:
        lda_over = {}
        for key in ("seed", "num_topics"):
            if overrides.get(key) is not None:
                lda_over[key] = overrides[key]
        if lda_over:
            config = replace(config, lda=replace(config.lda, **lda_over))
        if overrides.get("out_dir") is not None:
            config = replace(config, out_dir=Path(overrides["out_dir"]))
        if overrides.get("dedup") is not None:
            config = replace(config, dedup=overrides["dedup"])
        if overrides.get("drop_query_terms") is not None:
            config = replace(config, drop_query_terms=overrides["drop_query_terms"])
        if overrides.get("report_formats") is not None:
            config = replace(config, report_formats=tuple(overrides["report_formats"]))
    return config


# --- manifest ----------------------------------------------------------------


@dataclass
class RunManifest:
    config: dict
    seed: int
    stages: dict = field(default_factory=dict)
    complete: bool = False

    def record(self, stage: str, counts: dict, wall_clock: float, status="ok"):
        self.stages[stage] = {
            "status": status,
            "wall_clock_seconds": round(wall_clock, 6),
            "counts": counts,
        }

    def save(self, out_dir):
        path = Path(out_dir) / "manifest.json"
        payload = {
            "config": self.config,
            "seed": self.seed,
            "stages": self.stages,
            "complete": self.complete,
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, indent=2)
            handle.write("\n")

    @classmethod
    def load(cls, out_dir) -> "RunManifest":
        path = Path(out_dir) / "manifest.json"
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
        return cls(
            config=payload["config"],
            seed=payload["seed"],
            stages=payload["stages"],
            complete=payload["complete"],
        )

    @classmethod
    def open_or_create(cls, config: PipelineConfig) -> "RunManifest":
        path = Path(config.out_dir) / "manifest.json"
        if path.is_file():
            return cls.load(config.out_dir)
        return cls(config=config.snapshot(), seed=config.lda.seed & MASK64)


# --- stage implementations ---------------------------------------------------


def _artifact(config: PipelineConfig, stage: str) -> Path:
    return Path(config.out_dir) / _ARTIFACTS[stage]


def _require_artifact(config: PipelineConfig, stage: str) -> Path:
    path = _artifact(config, stage)
    if not path.is_file():
        raise StageError(
            f"missing artifact {path.name}: run the '{stage}' stage first"
        )
    return path


def _write_json_line(handle, payload):
    handle.write(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    handle.write("\n")


def _read_jsonl(path):
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                yield json.loads(line)


def stage_ingest(config: PipelineConfig) -> dict:
    """Load documents, tag candidates, clean text; write ingest.jsonl.

    Documents matching no candidate are dropped here; documents that clean
    down to zero tokens are kept (they still get a sentiment label) and only
    fall out at partitioning.
    """
    query_sets = corpus.load_query_sets(config.resolved("queries"))
    stoplist = corpus.load_stoplist(config.resolved("stoplist"))
    report = corpus.LoadReport()
    docs = corpus.load_documents(
        config.documents,
        fmt=config.doc_format,
        on_duplicate_id=config.on_duplicate_id,
        dedup_texts=config.dedup,
        report=report,
    )
    matched = 0
    unmatched = 0
    empty_after_cleaning = 0
    per_candidate = {qs.candidate: 0 for qs in query_sets}
    out_path = _artifact(config, "ingest")
    with open(out_path, "w", encoding="utf-8") as handle:
        for doc in docs:
            tags = corpus.match_candidates(doc, query_sets)
            if not tags:
                unmatched += 1
                continue
            matched += 1
            for candidate in tags:
                per_candidate[candidate] += 1
            tokens = corpus.remove_stopwords(corpus.tokenize(doc.text), stoplist)
            if not tokens:
                empty_after_cleaning += 1
            _write_json_line(handle, {
                "id": doc.id,
                "timestamp": doc.timestamp,
                "candidates": sorted(tags),
                "tokens": tokens,
            })
    counts = report.as_dict()
    counts.update({
        "matched": matched,
        "unmatched_dropped": unmatched,
        "empty_after_cleaning": empty_after_cleaning,
        "matched_per_candidate": per_candidate,
    })
    logger.info("ingest: %d loaded, %d matched, %d unmatched",
                report.loaded, matched, unmatched)
    return counts


def stage_sentiment(config: PipelineConfig) -> dict:
    """Classify each ingested document; write sentiment.jsonl."""
    in_path = _require_artifact(config, "ingest")
    lexicon = sentiment.load_lexicon(config.resolved("sentiment_lexicon"))
    label_counts = {label: 0 for label in sentiment.LABELS}
    per_candidate: dict[str, dict[str, int]] = {}
    out_path = _artifact(config, "sentiment")
    with open(out_path, "w", encoding="utf-8") as handle:
        for record in _read_jsonl(in_path):
            result = sentiment.classify(record["tokens"], lexicon)
            label_counts[result.label] += 1
            for candidate in record["candidates"]:
                bucket = per_candidate.setdefault(
                    candidate, {label: 0 for label in sentiment.LABELS}
                )
                bucket[result.label] += 1
            _write_json_line(handle, {
                "id": record["id"],
                "pos_count": result.pos_count,
                "neg_count": result.neg_count,
                "label": result.label,
            })
    counts = {"labels": label_counts, "labels_per_candidate": per_candidate}
    logger.info("sentiment: %s", label_counts)
    return counts


def _partition_label(candidate: str, polarity: str) -> str:
    return f"{candidate}/{polarity}"


def _model_filename(config: PipelineConfig, candidate: str, polarity: str) -> str:
    ext = "npz" if config.model_format == "npz" else "json"
    return f"topics_{candidate}_{polarity}.{ext}"


def stage_topics(config: PipelineConfig) -> dict:
    """Partition the corpus and train one topic model per partition.

    Every partition gets an independent seed derived from the base seed and
    the partition name, so training order (or parallel training) cannot
    change results. Partitions with no documents are skipped and noted.
    """
    ingest_path = _require_artifact(config, "ingest")
    sentiment_path = _require_artifact(config, "sentiment")
    query_sets = corpus.load_query_sets(config.resolved("queries"))
    candidates = [qs.candidate for qs in query_sets]
    labels = {rec["id"]: rec["label"] for rec in _read_jsonl(sentiment_path)}
    labeled_docs = []
    for record in _read_jsonl(ingest_path):
        label = labels.get(record["id"])
        if label is None:
            raise StageError(
                f"document {record['id']!r} has no sentiment label; "
                "rerun the 'sentiment' stage"
            )
        labeled_docs.append((
            corpus.CleanDocument(record["id"], record["tokens"]),
            set(record["candidates"]),
            label,
        ))
    drop_tokens = corpus.query_token_sets(query_sets) if config.drop_query_terms else None
    partitions, empty_dropped = corpus.partition_corpus(
        labeled_docs, candidates, drop_tokens=drop_tokens
    )
    out_dir = Path(config.out_dir)
    partition_info = {}
    for partition in partitions:
        label = _partition_label(partition.candidate, partition.polarity)
        if not partition.documents:
            logger.warning("partition %s is empty; skipping topic model", label)
            partition_info[label] = {"documents": 0, "skipped": True}
            continue
        part_config = lda.partition_config(config.lda, label)
        model = lda.train(partition, part_config)
        model_path = out_dir / _model_filename(config, partition.candidate, partition.polarity)
        lda.save_model(model, model_path, fmt=config.model_format, top_n=config.top_words)
        lda.export_top_words_csv(
            model,
            out_dir / f"top_words_{partition.candidate}_{partition.polarity}.csv",
            top_n=config.top_words,
        )
        partition_info[label] = {
            "documents": len(partition.documents),
            "modeled_documents": model.state.num_docs,
            "dropped_empty_documents": model.dropped_docs,
            "tokens": model.state.num_tokens,
            "vocabulary": len(model.vocab),
            "seed": part_config.seed,
            "initial_log_likelihood": model.ll_trace[0][1],
            "final_log_likelihood": model.ll_trace[-1][1],
        }
    counts = {
        "partitions": partition_info,
        "empty_documents_dropped": empty_dropped,
    }
    return counts


def stage_issues(config: PipelineConfig) -> dict:
    """Assign every trained topic to an issue; write audit CSV and counts."""
    query_sets = corpus.load_query_sets(config.resolved("queries"))
    candidates = [qs.candidate for qs in query_sets]
    lexicons = issues.load_issue_lexicon(config.resolved("issue_lexicon"))
    out_dir = Path(config.out_dir)

    expected = [
        (candidate, polarity)
        for candidate in candidates
        for polarity in corpus.POLARITIES
    ]
    model_paths = {
        pair: out_dir / _model_filename(config, *pair) for pair in expected
    }
    if not any(path.is_file() for path in model_paths.values()):
        raise StageError(
            "no topic model dumps found: run the 'topics' stage first"
        )

    audit_path = out_dir / "issue_assignments.csv"
    per_partition: dict[str, dict[str, int]] = {}
    assigned_total = 0
    unassigned_total = 0
    with open(audit_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["partition", "topic", "issue", "matched_keywords", "score"])
        for candidate, polarity in expected:
            label = _partition_label(candidate, polarity)
            path = model_paths[(candidate, polarity)]
            if not path.is_file():
                logger.warning("no model dump for %s; counting zero topics", label)
                per_partition[label] = {issue: 0 for issue in issues.ISSUES}
                continue
            dump = lda.load_model_dump(path)
            assignments = [
                issues.assign_issue(summary, lexicons, top_n=config.top_words)
                for summary in dump["topics"]
            ]
            for assignment in assignments:
                writer.writerow([
                    label,
                    assignment.topic,
                    assignment.issue,
                    "|".join(assignment.matched_words),
                    repr(assignment.score),
                ])
                if assignment.issue == issues.UNASSIGNED:
                    unassigned_total += 1
                else:
                    assigned_total += 1
            per_partition[label] = issues.issue_counts(assignments)

    counts_path = _artifact(config, "issues")
    payload = {
        "per_partition": per_partition,
        "assigned": assigned_total,
        "unassigned": unassigned_total,
    }
    with open(counts_path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")
    return payload


def stage_report(config: PipelineConfig) -> dict:
    """Compute DPNT scores and advantage; write report files."""
    counts_path = _require_artifact(config, "issues")
    with open(counts_path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    per_partition = payload["per_partition"]
    query_sets = corpus.load_query_sets(config.resolved("queries"))
    candidates = [qs.candidate for qs in query_sets]

    records = []
    for candidate in candidates:
        pos = per_partition.get(_partition_label(candidate, sentiment.POSITIVE), {})
        neg = per_partition.get(_partition_label(candidate, sentiment.NEGATIVE), {})
        for issue in issues.ISSUES:
            records.append(dpnt.IssueTopicCounts(
                candidate, issue, pos.get(issue, 0), neg.get(issue, 0)
            ))
    survey = dpnt.load_survey(config.resolved("survey"))
    report = dpnt.build_report(records, survey=survey)

    out_dir = Path(config.out_dir)
    written = []
    if "md" in config.report_formats:
        path = out_dir / "report.md"
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(dpnt.render_markdown(report))
        written.append(path.name)
    if "json" in config.report_formats:
        path = out_dir / "report.json"
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(dpnt.report_to_json(report), handle, sort_keys=True, indent=2)
            handle.write("\n")
        written.append(path.name)
    if "csv" in config.report_formats:
        path = out_dir / "report.csv"
        dpnt.write_report_csv(report, path)
        written.append(path.name)
    return {
        "total_dpnt": report.totals,
        "advantage": report.advantage,
        "survey_agreement": report.survey_agreement,
        "reports_written": written,
    }


_STAGE_FUNCS = {
    "ingest": stage_ingest,
    "sentiment": stage_sentiment,
    "topics": stage_topics,
    "issues": stage_issues,
    "report": stage_report,
}


def run_stage(config: PipelineConfig, stage: str) -> RunManifest:
    """Run one stage, updating (or creating) the manifest in out_dir."""
    if stage not in _STAGE_FUNCS:
        raise ConfigError(f"unknown stage {stage!r}")
    manifest = RunManifest.open_or_create(config)
    manifest.config = config.snapshot()
    manifest.seed = config.lda.seed & MASK64
    started = time.perf_counter()
    try:
        counts = _STAGE_FUNCS[stage](config)
    except Exception:
        manifest.record(stage, {}, time.perf_counter() - started, status="failed")
        manifest.complete = False
        manifest.save(config.out_dir)
        raise
    manifest.record(stage, counts, time.perf_counter() - started)
    manifest.complete = all(
        manifest.stages.get(name, {}).get("status") == "ok" for name in STAGES
    )
    manifest.save(config.out_dir)
    return manifest


def run_pipeline(config: PipelineConfig) -> RunManifest:
    """Run all five stages in order with a fresh manifest.

    A stage failure aborts the run; earlier artifacts are kept and the
    manifest marks the failed stage. The original exception propagates with a
    ``stage`` attribute so callers can name the stage (and keep the I/O vs.
    stage-failure distinction in exit codes).
    """
    config.validate()
    manifest = RunManifest(config=config.snapshot(), seed=config.lda.seed & MASK64)
    manifest.save(config.out_dir)
    for stage in STAGES:
        started = time.perf_counter()
        try:
            counts = _STAGE_FUNCS[stage](config)
        except Exception as exc:
            manifest.record(stage, {}, time.perf_counter() - started, status="failed")
            manifest.complete = False
            manifest.save(config.out_dir)
            logger.error("stage %s failed: %s", stage, exc)
            exc.stage = stage
            raise
        manifest.record(stage, counts, time.perf_counter() - started)
        manifest.save(config.out_dir)
    manifest.complete = True
    manifest.save(config.out_dir)
    return manifest
