"""Latent Dirichlet allocation trained by collapsed Gibbs sampling.

The sampler resamples one token at a time from the collapsed conditional

    P(z_i = k) ∝ (n_dk[d,k] + alpha) * (n_kw[k,w] + beta) / (n_k[k] + V*beta)

with the current token removed from all counts, scanning tokens in
(document, position) order. All randomness comes from one SplitMix64 stream
seeded by LdaConfig.seed, so a (corpus, config) pair always yields
bit-identical output; the hot loop is numba-compiled but numerically
identical to the dense formula above evaluated in plain Python.

Hyperparameter defaults follow MALLET's LDA defaults: symmetric alpha summing
to 5.0 across topics, beta 0.01, 1000 sweeps, no hyperparameter optimization.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit
from scipy.special import gammaln

from .exceptions import ConfigError, ValidationError
from .rng import MASK64

logger = logging.getLogger(__name__)

DEFAULT_ALPHA_SUM = 5.0
DEFAULT_BETA = 0.01
DEFAULT_ITERATIONS = 1000
DEFAULT_NUM_TOPICS = 100


@dataclass
class LdaConfig:
    num_topics: int = DEFAULT_NUM_TOPICS
    alpha: float | None = None  # None -> DEFAULT_ALPHA_SUM / num_topics
    beta: float = DEFAULT_BETA
    iterations: int = DEFAULT_ITERATIONS
    seed: int = 1
    min_word_count: int = 1
    trace_interval: int = 50

    def resolved_alpha(self) -> float:
        if self.alpha is not None:
            return self.alpha
        return DEFAULT_ALPHA_SUM / self.num_topics

    def validate(self):
        if self.num_topics < 2:
            raise ConfigError(f"num_topics must be >= 2, got {self.num_topics}")
        if self.resolved_alpha() <= 0:
            raise ConfigError("alpha must be > 0")
        if self.beta <= 0:
            raise ConfigError("beta must be > 0")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.min_word_count < 1:
            raise ConfigError("min_word_count must be >= 1")
        if self.trace_interval < 1:
            raise ConfigError("trace_interval must be >= 1")

    def as_dict(self) -> dict:
        return {
            "num_topics": self.num_topics,
            "alpha": self.resolved_alpha(),
            "beta": self.beta,
            "iterations": self.iterations,
            "seed": self.seed & MASK64,
            "min_word_count": self.min_word_count,
            "trace_interval": self.trace_interval,
        }


@dataclass
class VocabMap:
    """Bijection between words and dense indices in first-appearance order."""

    words: list[str]
    index: dict[str, int] = field(repr=False, default=None)

    def __post_init__(self):
        if self.index is None:
            self.index = {word: i for i, word in enumerate(self.words)}

    def __len__(self):
        return len(self.words)


@dataclass
class LdaState:
    """Token stream, topic assignments, and the three Gibbs count tables."""

    tokens: np.ndarray       # int32 (N,) word index per token position
    doc_offsets: np.ndarray  # int64 (D+1,) document slice boundaries
    z: np.ndarray            # int32 (N,) topic assignment per token
    n_dk: np.ndarray         # int32 (D, K) doc-topic counts
    n_kw: np.ndarray         # int32 (K, V) topic-word counts
    n_k: np.ndarray          # int64 (K,) per-topic totals
    rng_state: int           # SplitMix64 state; advances as sampling consumes it

    @property
    def num_docs(self) -> int:
        return len(self.doc_offsets) - 1

    @property
    def num_topics(self) -> int:
        return self.n_kw.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.n_kw.shape[1]

    @property
    def num_tokens(self) -> int:
        return len(self.tokens)

    def doc_lengths(self) -> np.ndarray:
        return np.diff(self.doc_offsets)


@dataclass(frozen=True)
class TopicSummary:
    topic: int
    words: tuple[tuple[str, float], ...]  # (word, probability), nonincreasing


@dataclass
class TrainedModel:
    state: LdaState
    vocab: VocabMap
    config: LdaConfig
    ll_trace: list[tuple[int, float]]  # (sweep, joint log-likelihood)
    dropped_docs: int

    def top_words(self, topic: int, n: int = 10) -> TopicSummary:
        return top_words(self.state, self.config, self.vocab, topic, n)

    def summaries(self, n: int = 10) -> list[TopicSummary]:
        return [self.top_words(k, n) for k in range(self.state.num_topics)]


# --- sampler kernels -------------------------------------------------------
# _mix64 must stay bit-identical to rng.SplitMix64.next_uint64. Callers must
# pass the state as np.uint64: a bare Python int can dispatch an int64
# specialization whose mixed-type arithmetic silently goes through float64.

_INV_2_53 = 1.0 / 9007199254740992.0

_U64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_U64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_MIX2 = np.uint64(0x94D049BB133111EB)
_U64_11 = np.uint64(11)
_U64_27 = np.uint64(27)
_U64_30 = np.uint64(30)
_U64_31 = np.uint64(31)


@njit(cache=True)
def _mix64(state):
    state = state + _U64_GAMMA
    z = state
    z = (z ^ (z >> _U64_30)) * _U64_MIX1
    z = (z ^ (z >> _U64_27)) * _U64_MIX2
    z = z ^ (z >> _U64_31)
    return state, z


@njit(cache=True)
def _draw_topics(n_tokens, num_topics, state):
    z = np.empty(n_tokens, np.int32)
    k64 = np.uint64(num_topics)
    for i in range(n_tokens):
        state, value = _mix64(state)
        z[i] = np.int32(value % k64)
    return z, state


@njit(cache=True)
def _sweep_kernel(tokens, doc_offsets, z, n_dk, n_kw, n_k, alpha, beta, state):
    num_topics = n_kw.shape[0]
    vbeta = n_kw.shape[1] * beta
    cum = np.empty(num_topics, np.float64)
    for d in range(doc_offsets.shape[0] - 1):
        for i in range(doc_offsets[d], doc_offsets[d + 1]):
            w = tokens[i]
            old = z[i]
            n_dk[d, old] -= 1
            n_kw[old, w] -= 1
            n_k[old] -= 1
            total = 0.0
            for k in range(num_topics):
                total += (n_dk[d, k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + vbeta)
                cum[k] = total
            state, value = _mix64(state)
            u = (value >> _U64_11) * _INV_2_53 * total
            new = 0
            while new < num_topics - 1 and cum[new] <= u:
                new += 1
            z[i] = np.int32(new)
            n_dk[d, new] += 1
            n_kw[new, w] += 1
            n_k[new] += 1
    return state


# --- public operations ------------------------------------------------------


def build_vocab(docs, min_word_count=1):
    """Index a partition's documents against a frequency-floored vocabulary.

    The vocabulary contains exactly the words whose total occurrence count
    reaches ``min_word_count``, indexed in first-appearance order. Documents
    are re-expressed as int32 index arrays with out-of-vocabulary tokens
    dropped; documents emptied by the drop are removed and counted.

    Returns (VocabMap, indexed docs, dropped doc count). Raises
    ValidationError when no word survives the floor.
    """
    freq: dict[str, int] = {}
    for doc in docs:
        for word in doc:
            freq[word] = freq.get(word, 0) + 1
    words = [word for word, count in freq.items() if count >= min_word_count]
    if not words:
        raise ValidationError(
            "partition too small to model: no word reaches "
            f"min_word_count={min_word_count}"
        )
    vocab = VocabMap(words)
    index = vocab.index
    indexed = []
    dropped = 0
    for doc in docs:
        ids = [index[word] for word in doc if word in index]
        if ids:
            indexed.append(np.asarray(ids, dtype=np.int32))
        else:
            dropped += 1
    return vocab, indexed, dropped


def init_state(indexed_docs, config: LdaConfig, vocab_size=None) -> LdaState:
    """Seed a sampler state with uniformly drawn topic assignments.

    Each token's topic is drawn from the SplitMix64 stream in (document,
    position) order; all three count tables are built to match.
    """
    if not indexed_docs:
        raise ValidationError("cannot initialize LDA state with zero documents")
    lengths = np.array([len(doc) for doc in indexed_docs], dtype=np.int64)
    doc_offsets = np.zeros(len(indexed_docs) + 1, dtype=np.int64)
    np.cumsum(lengths, out=doc_offsets[1:])
    tokens = np.concatenate([np.asarray(d, dtype=np.int32) for d in indexed_docs])
    num_tokens = len(tokens)
    if vocab_size is None:
        vocab_size = int(tokens.max()) + 1
    num_topics = config.num_topics

    z, state = _draw_topics(num_tokens, num_topics, np.uint64(config.seed & MASK64))

    doc_ids = np.repeat(np.arange(len(indexed_docs), dtype=np.int64), lengths)
    n_dk = np.zeros((len(indexed_docs), num_topics), dtype=np.int32)
    np.add.at(n_dk, (doc_ids, z), 1)
    n_kw = np.zeros((num_topics, vocab_size), dtype=np.int32)
    np.add.at(n_kw, (z, tokens), 1)
    n_k = np.bincount(z, minlength=num_topics).astype(np.int64)
    return LdaState(tokens, doc_offsets, z, n_dk, n_kw, n_k, int(state))


def gibbs_sweep(state: LdaState, config: LdaConfig) -> LdaState:
    """Resample every token once, in (document, position) order, in place."""
    new_rng = _sweep_kernel(
        state.tokens,
        state.doc_offsets,
        state.z,
        state.n_dk,
        state.n_kw,
        state.n_k,
        config.resolved_alpha(),
        config.beta,
        np.uint64(state.rng_state),
    )
    state.rng_state = int(new_rng)
    return state


def log_likelihood(state: LdaState, config: LdaConfig) -> float:
    """Joint collapsed log-likelihood log P(w, z | alpha, beta)."""
    alpha = config.resolved_alpha()
    beta = config.beta
    num_topics = state.num_topics
    vocab_size = state.vocab_size
    doc_lengths = state.n_dk.sum(axis=1, dtype=np.int64)

    ll = float(np.sum(gammaln(num_topics * alpha) - gammaln(doc_lengths + num_topics * alpha)))
    ll += float(np.sum(gammaln(state.n_dk + alpha)))
    ll -= state.num_docs * num_topics * float(gammaln(alpha))
    ll += float(np.sum(gammaln(vocab_size * beta) - gammaln(state.n_k + vocab_size * beta)))
    ll += float(np.sum(gammaln(state.n_kw + beta)))
    ll -= num_topics * vocab_size * float(gammaln(beta))
    return ll


def recompute_counts(state: LdaState):
    """Rebuild the three count tables from z; used for consistency checks."""
    doc_ids = np.repeat(
        np.arange(state.num_docs, dtype=np.int64), state.doc_lengths()
    )
    n_dk = np.zeros_like(state.n_dk)
    np.add.at(n_dk, (doc_ids, state.z), 1)
    n_kw = np.zeros_like(state.n_kw)
    np.add.at(n_kw, (state.z, state.tokens), 1)
    n_k = np.bincount(state.z, minlength=state.num_topics).astype(np.int64)
    return n_dk, n_kw, n_k


def train(docs, config: LdaConfig) -> TrainedModel:
    """Run the full sampler on one partition's documents.

    ``docs`` is a sequence of token lists (a CorpusPartition is also
    accepted). Validates the config, initializes from the seed, runs
    ``iterations`` sweeps, and records the joint log-likelihood at
    initialization, every ``trace_interval`` sweeps, and at the final sweep.
    """
    config.validate()
    if hasattr(docs, "documents"):
        docs = [doc.tokens for doc in docs.documents]
    vocab, indexed, dropped = build_vocab(docs, config.min_word_count)
    if dropped:
        logger.info("vocabulary floor dropped %d empty document(s)", dropped)
    state = init_state(indexed, config, vocab_size=len(vocab))
    trace = [(0, log_likelihood(state, config))]
    for sweep in range(1, config.iterations + 1):
        gibbs_sweep(state, config)
        if sweep % config.trace_interval == 0 or sweep == config.iterations:
            trace.append((sweep, log_likelihood(state, config)))
    logger.info(
        "trained %d topics on %d docs / %d tokens (V=%d): ll %.1f -> %.1f",
        config.num_topics, state.num_docs, state.num_tokens, len(vocab),
        trace[0][1], trace[-1][1],
    )
    return TrainedModel(state, vocab, config, trace, dropped)


def estimate_phi(state: LdaState, config: LdaConfig) -> np.ndarray:
    """Posterior-mean topic-word matrix: rows sum to 1, all entries > 0."""
    beta = config.beta
    return (state.n_kw + beta) / (state.n_k[:, None] + state.vocab_size * beta)


def estimate_theta(state: LdaState, config: LdaConfig) -> np.ndarray:
    """Posterior-mean document-topic matrix: rows sum to 1, all entries > 0."""
    alpha = config.resolved_alpha()
    doc_lengths = state.doc_lengths()[:, None]
    return (state.n_dk + alpha) / (doc_lengths + state.num_topics * alpha)


def top_words(state: LdaState, config: LdaConfig, vocab: VocabMap,
              topic: int, n: int = 10) -> TopicSummary:
    """The n highest-probability words of one topic.

    Ties break by ascending vocabulary index; n larger than the vocabulary
    clamps with a warning.
    """
    vocab_size = state.vocab_size
    if n > vocab_size:
        logger.warning(
            "requested %d top words but vocabulary has %d; clamping", n, vocab_size
        )
        n = vocab_size
    beta = config.beta
    phi_row = (state.n_kw[topic] + beta) / (state.n_k[topic] + vocab_size * beta)
    order = np.argsort(-phi_row, kind="stable")[:n]
    return TopicSummary(
        topic=topic,
        words=tuple((vocab.words[i], float(phi_row[i])) for i in order),
    )


# --- model persistence ------------------------------------------------------


def _summaries_payload(model: TrainedModel, top_n: int) -> list[dict]:
    return [
        {"topic": s.topic, "words": [[w, p] for w, p in s.words]}
        for s in model.summaries(top_n)
    ]


def save_model(model: TrainedModel, path, fmt="json", top_n=10):
    """Dump a trained model for downstream stages.

    fmt='json' writes a single JSON object (config, vocab, n_kw, per-topic
    top-N summaries) suitable for small runs; fmt='npz' writes the same
    content as a compressed NumPy archive for large runs (keys: n_kw, n_k,
    vocab, config_json, topics_json).
    """
    if fmt == "json":
        payload = {
            "config": model.config.as_dict(),
            "vocab": model.vocab.words,
            "n_kw": model.state.n_kw.tolist(),
            "topics": _summaries_payload(model, top_n),
        }
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, separators=(",", ":"))
            handle.write("\n")
    elif fmt == "npz":
        np.savez_compressed(
            path,
            n_kw=model.state.n_kw,
            n_k=model.state.n_k,
            vocab=np.array(model.vocab.words, dtype=np.str_),
            config_json=np.str_(json.dumps(model.config.as_dict(), sort_keys=True)),
            topics_json=np.str_(json.dumps(_summaries_payload(model, top_n))),
        )
    else:
        raise ConfigError(f"unknown model format {fmt!r} (expected json or npz)")


def load_model_dump(path) -> dict:
    """Load a model dump written by save_model.

    Returns a dict with 'config' (dict), 'vocab' (list of words), 'n_kw'
    (int32 array), and 'topics' (list of TopicSummary).
    """
    path = str(path)
    if path.endswith(".npz"):
        with np.load(path, allow_pickle=False) as archive:
            config = json.loads(str(archive["config_json"]))
            vocab = [str(w) for w in archive["vocab"]]
            n_kw = archive["n_kw"].astype(np.int32)
            topics_raw = json.loads(str(archive["topics_json"]))
    else:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
        config = payload["config"]
        vocab = payload["vocab"]
        n_kw = np.asarray(payload["n_kw"], dtype=np.int32)
        topics_raw = payload["topics"]
    topics = [
        TopicSummary(t["topic"], tuple((w, float(p)) for w, p in t["words"]))
        for t in topics_raw
    ]
    return {"config": config, "vocab": vocab, "n_kw": n_kw, "topics": topics}


def export_top_words_csv(model: TrainedModel, path, top_n=10):
    """Write `topic,rank,word,probability` rows for every topic."""
    import csv

    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["topic", "rank", "word", "probability"])
        for summary in model.summaries(top_n):
            for rank, (word, prob) in enumerate(summary.words, start=1):
                writer.writerow([summary.topic, rank, word, prob])


def partition_config(config: LdaConfig, label: str) -> LdaConfig:
    """Config for one named partition: same knobs, derived child seed."""
    from .rng import derive_seed

    return replace(config, seed=derive_seed(config.seed, label))
