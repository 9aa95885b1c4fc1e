"""Command-line entry point: `pipeline run` plus the five stage subcommands.

Exit codes: 0 success, 2 config validation failure, 3 stage failure,
4 input I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .exceptions import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_STAGE,
    ConfigError,
    EconmineError,
    InputError,
)
from .pipeline import STAGES, load_config, run_pipeline, run_stage

logger = logging.getLogger("econmine")


def _add_common_flags(parser):
    parser.add_argument("--config", required=True, help="pipeline config file")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the RNG seed")
    parser.add_argument("--k", type=int, default=None,
                        help="override the number of topics per partition")
    parser.add_argument("--out-dir", default=None,
                        help="override the output directory")
    parser.add_argument("--dedup", action="store_true", default=None,
                        help="collapse exact-duplicate texts at ingest")
    parser.add_argument("--drop-query-terms", action="store_true", default=None,
                        help="exclude each candidate's query words from its topic models")
    parser.add_argument("--format", default=None, metavar="{md,json,csv}",
                        help="report format(s), comma-separated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pipeline",
        description=(
            "Batch opinion-mining pipeline: candidate-filtered documents are "
            "sentiment-partitioned, topic-modeled per partition, mapped to "
            "economic issues, and scored by DPNT."
        ),
    )
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="debug-level logging")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run all stages end to end")
    _add_common_flags(run)
    for stage in STAGES:
        stage_parser = sub.add_parser(stage, help=f"run only the {stage} stage")
        _add_common_flags(stage_parser)
    return parser


def _overrides(args) -> dict:
    formats = None
    if args.format is not None:
        formats = [fmt.strip() for fmt in args.format.split(",") if fmt.strip()]
    return {
        "seed": args.seed,
        "num_topics": args.k,
        "out_dir": args.out_dir,
        "dedup": args.dedup,
        "drop_query_terms": args.drop_query_terms,
        "report_formats": formats,
    }


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args.config, overrides=_overrides(args))
        config.validate()
        if args.command == "run":
            manifest = run_pipeline(config)
            report = manifest.stages["report"]["counts"]
            logger.info("pipeline complete: advantage=%s survey_agreement=%s",
                        report["advantage"], report["survey_agreement"])
        else:
            run_stage(config, args.command)
            logger.info("stage %s complete", args.command)
    except ConfigError as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except InputError as exc:
        stage = getattr(exc, "stage", None)
        logger.error("I/O error%s: %s", f" in stage {stage!r}" if stage else "", exc)
        return EXIT_IO
    except EconmineError as exc:
        stage = getattr(exc, "stage", None)
        logger.error("failure%s: %s", f" in stage {stage!r}" if stage else "", exc)
        return EXIT_STAGE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
