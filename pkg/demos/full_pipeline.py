"""Run the whole pipeline on a generated corpus and inspect the results.

Generates 2,000 synthetic tweets with planted candidates, issues, and
polarity, then runs ingest -> sentiment -> topics -> issues -> report.
Everything lands under work/demo/. Run from the repo root:

    python demos/full_pipeline.py
"""

import json
from pathlib import Path

from econmine.lda import LdaConfig
from econmine.pipeline import PipelineConfig, run_pipeline
from econmine.synthetic import generate_election_corpus, write_jsonl

work = Path("work/demo")
work.mkdir(parents=True, exist_ok=True)

corpus_path = work / "tweets.jsonl"
write_jsonl(generate_election_corpus(n_docs=2000, seed=42), corpus_path)
print(f"wrote synthetic corpus: {corpus_path}")

config = PipelineConfig(
    documents=corpus_path,
    out_dir=work / "run",
    lda=LdaConfig(num_topics=10, iterations=200, seed=42),
    report_formats=("md", "json", "csv"),
)
manifest = run_pipeline(config)

print("\nstage counts:")
ingest = manifest.stages["ingest"]["counts"]
print(f"  ingest: loaded={ingest['loaded']} matched={ingest['matched']} "
      f"unmatched={ingest['unmatched_dropped']}")
labels = manifest.stages["sentiment"]["counts"]["labels"]
print(f"  sentiment: {labels}")
for name, info in manifest.stages["topics"]["counts"]["partitions"].items():
    print(f"  topics {name}: docs={info['documents']} vocab={info.get('vocabulary')}")
report = manifest.stages["report"]["counts"]
print(f"  report: total_dpnt={report['total_dpnt']} "
      f"survey_agreement={report['survey_agreement']}")

print(f"\nreports written under {config.out_dir}/:")
for name in sorted(p.name for p in Path(config.out_dir).iterdir()):
    print(f"  {name}")

payload = json.loads((Path(config.out_dir) / "report.json").read_text())
print("\nper-issue advantage:", payload["advantage"])
