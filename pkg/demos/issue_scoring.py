"""From topic summaries to issue assignments to a DPNT advantage table.

Uses a hand-built counts table (per-issue positive/negative topic counts for
two candidates) to show the scoring arithmetic end to end. Run from the repo
root:

    python demos/issue_scoring.py
"""

from econmine.dpnt import IssueTopicCounts, build_report, load_survey, render_markdown
from econmine.issues import ISSUES, assign_issue, load_issue_lexicon
from econmine.lda import TopicSummary
from econmine.resources import data_path

# --- 1. topics get issues via the keyword lexicon ----------------------------

lexicons = load_issue_lexicon()
examples = [
    ["tax", "plan", "raise", "rich", "wealthy"],
    ["jobs", "created", "millions", "private", "sector"],
    ["care", "health", "obamacare", "insurance", "affordable"],
    ["weather", "sunny", "rain", "storm", "cloudy"],  # nothing economic
]
for words in examples:
    summary = TopicSummary(0, tuple((w, 0.05 - 0.002 * i) for i, w in enumerate(words)))
    result = assign_issue(summary, lexicons)
    matched = ",".join(result.matched_words) or "-"
    print(f"{result.issue:>17}  matched=[{matched}]  score={result.score:.3f}")
print()

# --- 2. per-issue topic counts -> DPNT -> advantage --------------------------
# counts: (candidate, issue, #positive topics, #negative topics)

counts = []
alpha_counts = dict(zip(ISSUES, [(13, 18), (34, 24), (4, 3), (11, 4), (8, 13)]))
beta_counts = dict(zip(ISSUES, [(19, 25), (22, 31), (3, 9), (18, 14), (21, 31)]))
for issue in ISSUES:
    counts.append(IssueTopicCounts("obama", issue, *alpha_counts[issue]))
    counts.append(IssueTopicCounts("romney", issue, *beta_counts[issue]))

survey = load_survey(data_path("survey_pew_2012.csv"))
report = build_report(counts, survey=survey)
print(render_markdown(report))
