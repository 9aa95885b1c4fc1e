"""Synthetic corpus generators for tests, demos, and benchmarks.

Two generators:

* ``generate_election_corpus`` plants candidate mentions, issue keywords and
  sentiment words with a known polarity mix, so the full pipeline has a
  deterministic desk-scale input.
* ``generate_topic_corpus`` draws documents from planted topic-word
  distributions with disjoint dominant vocabularies, the standard
  identifiability fixture for checking that the sampler recovers topics.

Both use ``random.Random`` seeded explicitly, so a (seed, size) pair always
produces the same corpus.
"""

from __future__ import annotations

import argparse
import json
import random
from datetime import datetime, timedelta, timezone

CANDIDATE_SURFACES = {
    "obama": ("barack obama", "@BarackObama", "#barackobama", "#Obama"),
    "romney": ("mitt romney", "@MittRomney", "#mittromney", "#Romney"),
}

ISSUE_SURFACES = {
    "EconomyInGeneral": ("economy", "economic", "markets", "recession"),
    "Job": ("jobs", "job", "unemployment", "business", "workers"),
    "BudgetDeficit": ("deficit", "debt", "budget", "trillion", "spending"),
    "Healthcare": ("healthcare", "health", "insurance", "obamacare", "care"),
    "Tax": ("tax", "taxes", "taxpayers"),
}

POSITIVE_WORDS = ("great", "win", "hope", "support", "strong", "success")
NEGATIVE_WORDS = ("bad", "fail", "wrong", "weak", "disaster", "worse")

FILLER_WORDS = (
    "tonight", "debate", "watch", "people", "country", "america", "president",
    "campaign", "vote", "election", "speech", "rally", "video", "news",
    "live", "tomorrow", "today", "plan", "question", "answer",
)

NOISE_TOKENS = ("http://t.co/ab12cd", "@cnn", "@foxnews", "RT", "2012", "#Election2012")

# P(candidate axis): single-candidate docs dominate, a slice mentions both.
_CANDIDATE_MIX = (("obama", 0.45), ("romney", 0.45), ("both", 0.10))

_ISSUE_WEIGHTS = (
    ("Job", 0.30),
    ("EconomyInGeneral", 0.22),
    ("Tax", 0.18),
    ("Healthcare", 0.17),
    ("BudgetDeficit", 0.13),
)

# P(positive | candidate, issue) among polarized docs.
_POSITIVE_RATE = {
    ("obama", "EconomyInGeneral"): 0.44,
    ("obama", "Job"): 0.62,
    ("obama", "BudgetDeficit"): 0.56,
    ("obama", "Healthcare"): 0.66,
    ("obama", "Tax"): 0.42,
    ("romney", "EconomyInGeneral"): 0.44,
    ("romney", "Job"): 0.40,
    ("romney", "BudgetDeficit"): 0.32,
    ("romney", "Healthcare"): 0.58,
    ("romney", "Tax"): 0.40,
}

_NEUTRAL_RATE = 0.12

_EPOCH = datetime(2012, 9, 29, tzinfo=timezone.utc)


def _weighted_choice(rng, pairs):
    roll = rng.random()
    acc = 0.0
    for value, weight in pairs:
        acc += weight
        if roll < acc:
            return value
    return pairs[-1][0]


def generate_election_corpus(n_docs=2000, seed=42, neutral_rate=_NEUTRAL_RATE):
    """Generate tweet-like records with planted candidates, issues, polarity.

    Returns a list of dicts with 'id', 'timestamp', and 'text' keys, ready to
    be written as JSONL pipeline input.
    """
    rng = random.Random(seed)
    records = []
    for i in range(n_docs):
        side = _weighted_choice(rng, _CANDIDATE_MIX)
        candidates = ("obama", "romney") if side == "both" else (side,)
        issue = _weighted_choice(rng, _ISSUE_WEIGHTS)
        anchor = candidates[0]
        if rng.random() < neutral_rate:
            polarity = "neutral"
        else:
            positive_rate = _POSITIVE_RATE[(anchor, issue)]
            polarity = "positive" if rng.random() < positive_rate else "negative"

        words = []
        for candidate in candidates:
            words.append(rng.choice(CANDIDATE_SURFACES[candidate]))
        surfaces = ISSUE_SURFACES[issue]
        for _ in range(rng.randint(1, 2)):
            words.append(rng.choice(surfaces))
        if polarity == "positive":
            words.extend(rng.sample(POSITIVE_WORDS, rng.randint(2, 3)))
        elif polarity == "negative":
            words.extend(rng.sample(NEGATIVE_WORDS, rng.randint(2, 3)))
        for _ in range(rng.randint(2, 5)):
            words.append(rng.choice(FILLER_WORDS))
        if rng.random() < 0.25:
            words.append(rng.choice(NOISE_TOKENS))
        rng.shuffle(words)

        stamp = _EPOCH + timedelta(minutes=rng.randint(0, 48 * 24 * 60))
        records.append(
            {
                "id": f"t{i:06d}",
                "timestamp": stamp.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "text": " ".join(words),
            }
        )
    return records


def write_jsonl(records, path):
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, sort_keys=True, separators=(",", ":")))
            handle.write("\n")


PLANTED_TOPICS = (
    ("jobs", "hiring", "workers", "wages", "factory",
     "labor", "unemployment", "manufacturing", "payroll", "careers"),
    ("tax", "taxes", "deduction", "revenue", "income",
     "brackets", "rates", "refund", "audit", "loophole"),
    ("health", "insurance", "hospital", "doctors", "medicine",
     "coverage", "patients", "clinics", "nurses", "premiums"),
)


def _dirichlet(rng, alphas):
    draws = [rng.gammavariate(a, 1.0) for a in alphas]
    total = sum(draws)
    return [d / total for d in draws]


def generate_topic_corpus(n_docs=200, seed=7, doc_len_range=(25, 50),
                          topic_concentration=0.2, dominant_mass=0.97):
    """Draw documents from three planted topics over a 30-word vocabulary.

    Each topic puts ``dominant_mass`` of its probability uniformly on its
    own ten words and the rest uniformly on the other twenty. Document topic
    mixtures come from a symmetric Dirichlet with ``topic_concentration``.

    Returns (documents, planted) where documents is a list of token lists
    and planted is the tuple of ten-word topic vocabularies.
    """
    rng = random.Random(seed)
    vocab = [word for topic in PLANTED_TOPICS for word in topic]
    n_topics = len(PLANTED_TOPICS)
    words_per_topic = len(PLANTED_TOPICS[0])
    other = len(vocab) - words_per_topic

    # phi[t][v]: dominant_mass over own words, remainder over the others
    phi = []
    for t in range(n_topics):
        own_lo = t * words_per_topic
        own_hi = own_lo + words_per_topic
        row = [
            dominant_mass / words_per_topic if own_lo <= v < own_hi
            else (1.0 - dominant_mass) / other
            for v in range(len(vocab))
        ]
        phi.append(row)

    docs = []
    for _ in range(n_docs):
        theta = _dirichlet(rng, [topic_concentration] * n_topics)
        length = rng.randint(*doc_len_range)
        tokens = []
        for _ in range(length):
            topic = _weighted_choice(rng, list(zip(range(n_topics), theta)))
            word = _weighted_choice(rng, list(zip(vocab, phi[topic])))
            tokens.append(word)
        docs.append(tokens)
    return docs, PLANTED_TOPICS


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="Generate a synthetic election corpus as JSONL."
    )
    parser.add_argument("--docs", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", required=True, help="output JSONL path")
    args = parser.parse_args(argv)
    records = generate_election_corpus(n_docs=args.docs, seed=args.seed)
    from pathlib import Path

    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_jsonl(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
