"""DPNT scoring: per-issue advantage from positive/negative topic counts.

DPNT is the difference between the number of positive topics and the number
of negative topics a candidate has on an issue. A positive value means the
candidate drew more positive than negative feedback there; between two
candidates, the strictly higher DPNT holds the advantage and equality is an
explicit tie.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .exceptions import InputError, ValidationError
from .issues import ISSUES

TIE = "Tie"


@dataclass(frozen=True)
class IssueTopicCounts:
    candidate: str
    issue: str
    n_pos: int
    n_neg: int

    def __post_init__(self):
        if self.n_pos < 0 or self.n_neg < 0:
            raise ValidationError(
                f"topic counts must be nonnegative, got ({self.n_pos}, {self.n_neg})"
            )


@dataclass(frozen=True)
class DpntScore:
    candidate: str
    issue: str
    value: int


@dataclass(frozen=True)
class AdvantageTable:
    """Per-issue winning candidate (or TIE) plus each candidate's total DPNT."""

    winners: dict  # issue -> candidate or TIE
    totals: dict  # candidate -> total DPNT


def _value(score) -> int:
    return score.value if isinstance(score, DpntScore) else score


def dpnt(n_pos: int, n_neg: int) -> int:
    """Positive-minus-negative topic count; positive means net-positive feedback."""
    if n_pos < 0 or n_neg < 0:
        raise ValidationError(f"topic counts must be nonnegative, got ({n_pos}, {n_neg})")
    return n_pos - n_neg


def advantage(issue: str, scores) -> str:
    """The candidate with strictly highest DPNT on an issue, or TIE.

    ``scores`` maps candidate -> DPNT value (ints or DpntScore); at least two
    candidates are required.
    """
    if len(scores) < 2:
        raise ValidationError(
            f"advantage on {issue!r} needs scores for at least two candidates"
        )
    values = {candidate: _value(score) for candidate, score in scores.items()}
    best = max(values.values())
    winners = [candidate for candidate, value in values.items() if value == best]
    return winners[0] if len(winners) == 1 else TIE


def total_dpnt(scores) -> int:
    """Sum of a candidate's DPNT values across the five-issue taxonomy."""
    missing = [issue for issue in ISSUES if issue not in scores]
    if missing:
        raise ValidationError(f"missing DPNT score for issue(s): {', '.join(missing)}")
    return sum(_value(scores[issue]) for issue in ISSUES)


def compare_with_survey(advantages, survey):
    """Fraction of issues where the computed advantage matches the survey.

    ``advantages`` is an AdvantageTable or a per-issue winner mapping. A tie
    on either side counts as a non-match. Returns (fraction, per-issue match
    dict).
    """
    if isinstance(advantages, AdvantageTable):
        advantages = advantages.winners
    if set(advantages) != set(ISSUES) or set(survey) != set(ISSUES):
        raise ValidationError(
            "advantage and survey tables must cover exactly the five-issue taxonomy"
        )
    matches = {
        issue: advantages[issue] == survey[issue] and advantages[issue] != TIE
        for issue in ISSUES
    }
    return sum(matches.values()) / len(ISSUES), matches


def issue_salience_rank(counts) -> list[str]:
    """Issues ordered by total topic count (positive + negative), descending.

    ``counts`` maps issue -> (n_pos, n_neg). Ties keep the fixed taxonomy
    order.
    """
    missing = [issue for issue in ISSUES if issue not in counts]
    if missing:
        raise ValidationError(f"missing counts for issue(s): {', '.join(missing)}")
    totals = {issue: counts[issue][0] + counts[issue][1] for issue in ISSUES}
    return sorted(ISSUES, key=lambda issue: (-totals[issue], ISSUES.index(issue)))


def load_survey(path) -> dict[str, str]:
    """Load a survey table: CSV with ``issue,advantaged_candidate`` rows."""
    table = {}
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or \
                    {"issue", "advantaged_candidate"} - set(reader.fieldnames):
                raise ValidationError(
                    f"{path}: expected header 'issue,advantaged_candidate'"
                )
            for row in reader:
                issue = (row["issue"] or "").strip()
                candidate = (row["advantaged_candidate"] or "").strip()
                if issue not in ISSUES:
                    raise ValidationError(f"{path}: unknown issue {issue!r}")
                if issue in table:
                    raise ValidationError(f"{path}: duplicate issue {issue!r}")
                if not candidate:
                    raise ValidationError(f"{path}: empty candidate for issue {issue!r}")
                table[issue] = candidate
    except OSError as exc:
        raise InputError(f"cannot read survey file {path}: {exc}") from exc
    missing = [issue for issue in ISSUES if issue not in table]
    if missing:
        raise ValidationError(f"{path}: missing issue(s): {', '.join(missing)}")
    return table


# --- assembled report -------------------------------------------------------


@dataclass
class DpntReport:
    candidates: list[str]
    counts: dict  # candidate -> issue -> (n_pos, n_neg)
    scores: dict  # candidate -> issue -> dpnt value
    totals: dict  # candidate -> total dpnt
    salience: dict  # candidate -> ordered issue list
    advantage: dict  # issue -> winning candidate or TIE
    survey: dict | None  # issue -> surveyed advantaged candidate
    survey_agreement: float | None
    survey_matches: dict | None

    def advantage_table(self) -> AdvantageTable:
        return AdvantageTable(winners=dict(self.advantage), totals=dict(self.totals))


def build_report(counts, survey=None) -> DpntReport:
    """Assemble the full DPNT analysis from per-issue topic counts.

    ``counts`` is an iterable of IssueTopicCounts covering every
    (candidate, issue) pair of the taxonomy.
    """
    by_candidate: dict[str, dict[str, tuple[int, int]]] = {}
    for record in counts:
        by_candidate.setdefault(record.candidate, {})[record.issue] = (
            record.n_pos,
            record.n_neg,
        )
    candidates = sorted(by_candidate)
    if len(candidates) < 2:
        raise ValidationError("DPNT report needs counts for at least two candidates")
    for candidate in candidates:
        missing = [issue for issue in ISSUES if issue not in by_candidate[candidate]]
        if missing:
            raise ValidationError(
                f"candidate {candidate!r} missing counts for: {', '.join(missing)}"
            )

    scores = {
        candidate: {
            issue: dpnt(*by_candidate[candidate][issue]) for issue in ISSUES
        }
        for candidate in candidates
    }
    totals = {candidate: total_dpnt(scores[candidate]) for candidate in candidates}
    salience = {
        candidate: issue_salience_rank(by_candidate[candidate])
        for candidate in candidates
    }
    advantages = {
        issue: advantage(issue, {c: scores[c][issue] for c in candidates})
        for issue in ISSUES
    }
    agreement = None
    matches = None
    if survey is not None:
        agreement, matches = compare_with_survey(advantages, survey)
    return DpntReport(
        candidates=candidates,
        counts=by_candidate,
        scores=scores,
        totals=totals,
        salience=salience,
        advantage=advantages,
        survey=dict(survey) if survey is not None else None,
        survey_agreement=agreement,
        survey_matches=matches,
    )


def report_to_json(report: DpntReport) -> dict:
    """Machine-readable report payload."""
    records = [
        {
            "candidate": candidate,
            "issue": issue,
            "n_pos": report.counts[candidate][issue][0],
            "n_neg": report.counts[candidate][issue][1],
            "dpnt": report.scores[candidate][issue],
        }
        for candidate in report.candidates
        for issue in ISSUES
    ]
    return {
        "records": records,
        "advantage": report.advantage,
        "total_dpnt": report.totals,
        "salience": report.salience,
        "survey": report.survey,
        "survey_agreement": report.survey_agreement,
        "survey_matches": report.survey_matches,
    }


def _signed(value: int) -> str:
    return f"+{value}" if value > 0 else str(value)


def render_markdown(report: DpntReport) -> str:
    """Report as Markdown tables: per-candidate counts/DPNT, then advantage."""
    lines = ["# DPNT report", ""]
    for candidate in report.candidates:
        lines.append(f"## {candidate}")
        lines.append("")
        lines.append("| | " + " | ".join(ISSUES) + " |")
        lines.append("|---" * (len(ISSUES) + 1) + "|")
        row = [str(report.counts[candidate][issue][0]) for issue in ISSUES]
        lines.append("| Positive topics | " + " | ".join(row) + " |")
        row = [str(report.counts[candidate][issue][1]) for issue in ISSUES]
        lines.append("| Negative topics | " + " | ".join(row) + " |")
        row = [_signed(report.scores[candidate][issue]) for issue in ISSUES]
        lines.append("| DPNT | " + " | ".join(row) + " |")
        lines.append("")
        lines.append(f"Total DPNT: {_signed(report.totals[candidate])}")
        lines.append("Issue salience: " + " > ".join(report.salience[candidate]))
        lines.append("")
    lines.append("## Advantage")
    lines.append("")
    if report.survey is not None:
        lines.append("| Issue | Advantage (this run) | Advantage (survey) | Match |")
        lines.append("|---|---|---|---|")
        for issue in ISSUES:
            match = "yes" if report.survey_matches[issue] else "no"
            lines.append(
                f"| {issue} | {report.advantage[issue]} | {report.survey[issue]} | {match} |"
            )
        lines.append("")
        agreed = sum(report.survey_matches.values())
        lines.append(
            f"Survey agreement: {report.survey_agreement:.2f} ({agreed}/{len(ISSUES)})"
        )
    else:
        lines.append("| Issue | Advantage (this run) |")
        lines.append("|---|---|")
        for issue in ISSUES:
            lines.append(f"| {issue} | {report.advantage[issue]} |")
    lines.append("")
    return "\n".join(lines)


def write_report_csv(report: DpntReport, path):
    """Report records as CSV: candidate,issue,n_pos,n_neg,dpnt."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["candidate", "issue", "n_pos", "n_neg", "dpnt"])
        for candidate in report.candidates:
            for issue in ISSUES:
                n_pos, n_neg = report.counts[candidate][issue]
                writer.writerow(
                    [candidate, issue, n_pos, n_neg, report.scores[candidate][issue]]
                )
