"""Benchmark harness for the two hot paths.

Measures sentiment classification throughput (documents/second) and Gibbs
sampling throughput (token updates/second) on synthetic input. Numbers are
reported, not asserted: run `python -m econmine.bench`.
"""

from __future__ import annotations

import argparse
import time

from . import lda, sentiment
from .corpus import load_stoplist, remove_stopwords, tokenize
from .resources import data_path
from .synthetic import generate_election_corpus


def bench_sentiment(n_docs=100_000, seed=11) -> dict:
    """Classify n_docs synthetic documents; returns docs/sec and counts."""
    records = generate_election_corpus(n_docs=n_docs, seed=seed)
    stoplist = load_stoplist(data_path("stoplist.txt"))
    token_lists = [remove_stopwords(tokenize(r["text"]), stoplist) for r in records]
    lexicon = sentiment.default_lexicon()
    started = time.perf_counter()
    labels = {label: 0 for label in sentiment.LABELS}
    for tokens in token_lists:
        labels[sentiment.classify(tokens, lexicon).label] += 1
    elapsed = time.perf_counter() - started
    return {
        "documents": n_docs,
        "seconds": elapsed,
        "docs_per_second": n_docs / elapsed,
        "labels": labels,
    }


def bench_gibbs(n_docs=1500, num_topics=20, sweeps=30, seed=11) -> dict:
    """Time Gibbs sweeps on a synthetic corpus; returns token updates/second.

    One warmup sweep runs first so JIT compilation stays out of the timing.
    """
    records = generate_election_corpus(n_docs=n_docs, seed=seed)
    stoplist = load_stoplist(data_path("stoplist.txt"))
    docs = [remove_stopwords(tokenize(r["text"]), stoplist) for r in records]
    docs = [doc for doc in docs if doc]
    config = lda.LdaConfig(num_topics=num_topics, iterations=1, seed=seed)
    vocab, indexed, _ = lda.build_vocab(docs, config.min_word_count)
    state = lda.init_state(indexed, config, vocab_size=len(vocab))
    lda.gibbs_sweep(state, config)  # warmup, includes JIT compile
    started = time.perf_counter()
    for _ in range(sweeps):
        lda.gibbs_sweep(state, config)
    elapsed = time.perf_counter() - started
    updates = state.num_tokens * sweeps
    return {
        "documents": state.num_docs,
        "tokens": state.num_tokens,
        "num_topics": num_topics,
        "sweeps": sweeps,
        "seconds": elapsed,
        "token_updates_per_second": updates / elapsed,
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description="Throughput benchmarks.")
    parser.add_argument("--sentiment-docs", type=int, default=100_000)
    parser.add_argument("--gibbs-docs", type=int, default=1500)
    parser.add_argument("--gibbs-topics", type=int, default=20)
    parser.add_argument("--gibbs-sweeps", type=int, default=30)
    args = parser.parse_args(argv)

    result = bench_sentiment(n_docs=args.sentiment_docs)
    print(
        f"sentiment: {result['documents']} docs in {result['seconds']:.3f}s "
        f"-> {result['docs_per_second']:,.0f} docs/s"
    )
    result = bench_gibbs(
        n_docs=args.gibbs_docs,
        num_topics=args.gibbs_topics,
        sweeps=args.gibbs_sweeps,
    )
    print(
        f"gibbs: {result['tokens']} tokens x {result['sweeps']} sweeps "
        f"(K={result['num_topics']}) in {result['seconds']:.3f}s "
        f"-> {result['token_updates_per_second']:,.0f} token updates/s"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
