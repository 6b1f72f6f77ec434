"""Topic modelling and distributional similarity over a collection's
documentation corpus.

The semantic rules work from two artefacts built per collection: an LDA
topic model (collapsed Gibbs sampling, deterministic under a fixed seed)
and a second-order word similarity provider. The default provider derives
first-order co-occurrence vectors from the corpus itself (positional counts
in a +/-3 token window), then scores word pairs by the cosine of their
*similarity vectors*, i.e. similarity of similarity profiles. Scores live
in [0, 1] with identical in-vocabulary words at exactly 1.0 and unknown
words at 0.0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

import numpy as np
import scipy.sparse as sp
from numba import njit

from .io import ApiCollection
from .textpipe import ProcessedDoc, default_stopwords, preprocess
from .uri import NodeKind, parse_uri

__all__ = [
    "Corpus",
    "TopicModel",
    "SimilarityProvider",
    "CooccurrenceSimilarity",
    "WordVectorSimilarity",
    "TableSimilarity",
    "NodeTopicMembership",
    "build_corpus",
    "choose_k",
    "train_lda",
    "second_order_similarity",
    "aggregate_node_topic_score",
    "node_topic_memberships",
]

DEFAULT_THRESHOLD = 0.3
DEFAULT_ITERATIONS = 1000
DEFAULT_SEED = 42
DEFAULT_BETA = 0.01
TOP_WORDS_PER_TOPIC = 15
COOCCURRENCE_WINDOW = 3


@dataclass(frozen=True)
class Corpus:
    """One processed document per collection entry plus the observed
    vocabulary with frequencies."""

    documents: tuple[ProcessedDoc, ...]
    vocabulary: dict[str, int]

    def __len__(self) -> int:
        return len(self.documents)


def build_corpus(collection: ApiCollection) -> Corpus:
    """Preprocess every entry's documentation into the collection corpus.

    Empty documentation yields an empty document. When the collection
    carries no stop-word list the packaged default list is used.
    """
    stopwords = collection.stopwords or default_stopwords()
    documents = tuple(
        preprocess(entry.documentation, stopwords, collection.acronyms)
        for entry in collection.entries
    )
    vocabulary: dict[str, int] = {}
    for doc in documents:
        for token in doc.tokens:
            vocabulary[token] = vocabulary.get(token, 0) + 1
    return Corpus(documents=documents, vocabulary=vocabulary)


def choose_k(collection: ApiCollection, vocabulary_size: int | None = None) -> int:
    """Topic count for a collection: the number of distinct leading literal
    path nodes (endpoints), clamped to [1, vocabulary size]."""
    endpoints: set[str] = set()
    for entry in collection.entries:
        uri = parse_uri(entry.uri)
        for node in uri.nodes:
            if node.kind is NodeKind.LITERAL:
                endpoints.add(node.raw.lower())
                break
    k = max(1, len(endpoints))
    if vocabulary_size is not None:
        k = min(k, max(1, vocabulary_size))
    return k


@njit(cache=True)
def _gibbs_kernel(doc_ids, word_ids, k, n_docs, n_vocab, alpha, beta, iterations, seed):  # pragma: no cover - compiled
    n_tokens = word_ids.shape[0]
    ndk = np.zeros((n_docs, k), np.int64)
    nkw = np.zeros((k, n_vocab), np.int64)
    nk = np.zeros(k, np.int64)
    z = np.zeros(n_tokens, np.int64)
    probs = np.zeros(k, np.float64)
    # splitmix64 stream: fully deterministic and platform-independent
    state = np.uint64(seed)
    golden = np.uint64(0x9E3779B97F4A7C15)
    mix1 = np.uint64(0xBF58476D1CE4E5B9)
    mix2 = np.uint64(0x94D049BB133111EB)
    inv = 1.0 / 9007199254740992.0
    for i in range(n_tokens):
        state = state + golden
        x = state
        x = (x ^ (x >> np.uint64(30))) * mix1
        x = (x ^ (x >> np.uint64(27))) * mix2
        x = x ^ (x >> np.uint64(31))
        r = (x >> np.uint64(11)) * inv
        t = int(r * k)
        if t >= k:
            t = k - 1
        z[i] = t
        ndk[doc_ids[i], t] += 1
        nkw[t, word_ids[i]] += 1
        nk[t] += 1
    beta_v = beta * n_vocab
    for _ in range(iterations):
        for i in range(n_tokens):
            d = doc_ids[i]
            w = word_ids[i]
            t = z[i]
            ndk[d, t] -= 1
            nkw[t, w] -= 1
            nk[t] -= 1
            total = 0.0
            for tt in range(k):
                total += (ndk[d, tt] + alpha) * (nkw[tt, w] + beta) / (nk[tt] + beta_v)
                probs[tt] = total
            state = state + golden
            x = state
            x = (x ^ (x >> np.uint64(30))) * mix1
            x = (x ^ (x >> np.uint64(27))) * mix2
            x = x ^ (x >> np.uint64(31))
            r = ((x >> np.uint64(11)) * inv) * total
            t = k - 1
            for tt in range(k - 1):
                if r < probs[tt]:
                    t = tt
                    break
            z[i] = t
            ndk[d, t] += 1
            nkw[t, w] += 1
            nk[t] += 1
    return nkw, nk


@dataclass(frozen=True, eq=False)
class TopicModel:
    """k topics over the corpus vocabulary. ``topics`` holds the ranked
    top-M (word, weight) pairs per topic; ``word_topic`` retains the full
    normalised word distribution of every topic."""

    k: int
    seed: int
    iterations: int
    alpha: float
    beta: float
    vocabulary: tuple[str, ...]
    word_topic: np.ndarray
    topics: tuple[tuple[tuple[str, float], ...], ...]

    def topic_word_lists(self) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(word for word, _ in topic) for topic in self.topics)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "topics": [
                [{"word": word, "weight": round(weight, 10)} for word, weight in topic]
                for topic in self.topics
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_word_lists(cls, word_lists: Sequence[Sequence[str]]) -> "TopicModel":
        """Build a rank-only model from plain topic word lists (used when a
        topic model is supplied externally rather than trained)."""
        vocabulary = tuple(sorted({w for topic in word_lists for w in topic}))
        index = {w: i for i, w in enumerate(vocabulary)}
        k = len(word_lists)
        word_topic = np.zeros((k, max(1, len(vocabulary))))
        topics = []
        for t, words in enumerate(word_lists):
            # synthetic strictly-decreasing weights; only ranks are meaningful
            raw = [2.0 ** -(rank + 1) for rank in range(len(words))]
            total = sum(raw) or 1.0
            topic = tuple((w, raw[i] / total) for i, w in enumerate(words))
            topics.append(topic)
            for w, weight in topic:
                word_topic[t, index[w]] = weight
            row_sum = word_topic[t].sum()
            if row_sum > 0:
                word_topic[t] /= row_sum
        return cls(
            k=k, seed=0, iterations=0, alpha=0.0, beta=0.0,
            vocabulary=vocabulary, word_topic=word_topic, topics=tuple(topics),
        )


def train_lda(
    corpus: Corpus,
    k: int,
    seed: int = DEFAULT_SEED,
    iterations: int = DEFAULT_ITERATIONS,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
    top_m: int = TOP_WORDS_PER_TOPIC,
) -> TopicModel:
    """Collapsed Gibbs sampling. Deterministic: identical (corpus, k, seed,
    iterations, hyperparameters) produce a bit-identical model."""
    if k < 1:
        raise ValueError("topic count k must be at least 1")
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    vocabulary = tuple(sorted(corpus.vocabulary))
    if not vocabulary:
        raise ValueError("cannot train on empty corpus")
    if alpha is None:
        alpha = 50.0 / k
    index = {w: i for i, w in enumerate(vocabulary)}
    doc_ids: list[int] = []
    word_ids: list[int] = []
    for d, doc in enumerate(corpus.documents):
        for token in doc.tokens:
            doc_ids.append(d)
            word_ids.append(index[token])
    nkw, nk = _gibbs_kernel(
        np.asarray(doc_ids, np.int64),
        np.asarray(word_ids, np.int64),
        k,
        max(1, len(corpus.documents)),
        len(vocabulary),
        float(alpha),
        float(beta),
        iterations,
        seed,
    )
    v = len(vocabulary)
    word_topic = (nkw + beta) / (nk + beta * v)[:, None]
    topics = []
    for t in range(k):
        order = sorted(range(v), key=lambda w: (-word_topic[t, w], vocabulary[w]))
        top = tuple((vocabulary[w], float(word_topic[t, w])) for w in order[: min(top_m, v)])
        topics.append(top)
    return TopicModel(
        k=k,
        seed=seed,
        iterations=iterations,
        alpha=float(alpha),
        beta=float(beta),
        vocabulary=vocabulary,
        word_topic=word_topic,
        topics=tuple(topics),
    )


class SimilarityProvider(Protocol):
    """Word-pair scorer in [0, 1]; out-of-vocabulary words score 0."""

    def similarity(self, w1: str, w2: str) -> float: ...

    def __contains__(self, word: str) -> bool: ...


class CooccurrenceSimilarity:
    """Second-order distributional similarity derived from the corpus.

    First-order vectors count (context word, relative position) features in
    a +/-window token window. Words are then compared by the cosine of
    their first-order *similarity profiles*, so two words are close when
    they are similar to the same words, not merely when they co-occur.
    """

    def __init__(self, vocabulary: Sequence[str], matrix: np.ndarray):
        self._index = {w: i for i, w in enumerate(vocabulary)}
        self._matrix = matrix

    @classmethod
    def from_corpus(cls, corpus: Corpus, window: int = COOCCURRENCE_WINDOW) -> "CooccurrenceSimilarity":
        vocabulary = tuple(sorted(corpus.vocabulary))
        v = len(vocabulary)
        if v == 0:
            return cls(vocabulary, np.zeros((0, 0)))
        index = {w: i for i, w in enumerate(vocabulary)}
        slots = 2 * window
        rows: list[int] = []
        cols: list[int] = []
        for doc in corpus.documents:
            ids = [index[t] for t in doc.tokens]
            n = len(ids)
            for i, wid in enumerate(ids):
                for off in range(-window, window + 1):
                    if off == 0:
                        continue
                    j = i + off
                    if 0 <= j < n:
                        slot = off + window if off < 0 else off + window - 1
                        rows.append(wid)
                        cols.append(ids[j] * slots + slot)
        counts = sp.csr_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(v, v * slots), dtype=np.float64
        )
        counts.sum_duplicates()
        norms = np.sqrt(counts.multiply(counts).sum(axis=1)).A.ravel()
        norms[norms == 0.0] = 1.0
        normalised = sp.diags(1.0 / norms) @ counts
        first_order = (normalised @ normalised.T).toarray()
        np.fill_diagonal(first_order, 1.0)
        profile_norms = np.linalg.norm(first_order, axis=1)
        profile_norms[profile_norms == 0.0] = 1.0
        second_order = (first_order / profile_norms[:, None]) @ (first_order / profile_norms[:, None]).T
        second_order = (second_order + second_order.T) / 2.0
        np.clip(second_order, 0.0, 1.0, out=second_order)
        np.fill_diagonal(second_order, 1.0)
        return cls(vocabulary, second_order)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def similarity(self, w1: str, w2: str) -> float:
        i = self._index.get(w1)
        j = self._index.get(w2)
        if i is None or j is None:
            return 0.0
        return float(self._matrix[i, j])


class WordVectorSimilarity:
    """Similarity from a pre-computed word-vector file: one
    ``word v1 v2 ... vd`` line per word; cosine clamped to [0, 1]."""

    def __init__(self, vectors: dict[str, np.ndarray]):
        self._vectors = {}
        for word, vec in vectors.items():
            norm = np.linalg.norm(vec)
            self._vectors[word] = vec / norm if norm > 0 else vec

    @classmethod
    def from_file(cls, path) -> "WordVectorSimilarity":
        vectors: dict[str, np.ndarray] = {}
        dim: int | None = None
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected 'word v1 ... vd'")
            word = parts[0].lower()
            try:
                vec = np.asarray([float(p) for p in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-numeric vector component") from exc
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise ValueError(f"{path}:{lineno}: vector dimension mismatch")
            vectors[word] = vec
        return cls(vectors)

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def similarity(self, w1: str, w2: str) -> float:
        v1 = self._vectors.get(w1)
        v2 = self._vectors.get(w2)
        if v1 is None or v2 is None:
            return 0.0
        if w1 == w2:
            return 1.0
        return float(min(1.0, max(0.0, float(np.dot(v1, v2)))))


class TableSimilarity:
    """Similarity backed by an explicit symmetric pair table (used for
    externally supplied similarity matrices). Unlisted identical words in
    the table vocabulary score 1.0; unknown words score 0.0."""

    def __init__(self, pairs: dict[tuple[str, str], float], vocabulary: Iterable[str] = ()):
        self._pairs: dict[tuple[str, str], float] = {}
        vocab = set(vocabulary)
        for (w1, w2), value in pairs.items():
            self._pairs[(w1, w2)] = float(value)
            self._pairs[(w2, w1)] = float(value)
            vocab.add(w1)
            vocab.add(w2)
        self._vocab = frozenset(vocab)

    def __contains__(self, word: str) -> bool:
        return word in self._vocab

    def similarity(self, w1: str, w2: str) -> float:
        value = self._pairs.get((w1, w2))
        if value is not None:
            return value
        if w1 == w2 and w1 in self._vocab:
            return 1.0
        return 0.0


def second_order_similarity(w1: str, w2: str, provider: SimilarityProvider) -> float:
    """Similarity of two lowercase lemmas under the given provider."""
    return provider.similarity(w1, w2)


def aggregate_node_topic_score(
    nodes: Sequence[str],
    topic_words: Sequence[str],
    provider: SimilarityProvider,
) -> float:
    """Mean over nodes of the maximum similarity against any topic word."""
    if not nodes:
        raise ValueError("cannot aggregate over an empty node list")
    if not topic_words:
        raise ValueError("cannot aggregate against an empty topic")
    total = 0.0
    for node in nodes:
        total += max(provider.similarity(node, word) for word in topic_words)
    return total / len(nodes)


@dataclass(frozen=True)
class NodeTopicMembership:
    """Fit of one node word against one topic: the node's best similarity
    to any of the topic's ranked words, thresholded into a boolean."""

    node: str
    topic_index: int
    score: float
    fits: bool


def node_topic_memberships(
    nodes: Sequence[str],
    model: TopicModel | Sequence[Sequence[str]],
    provider: SimilarityProvider,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[NodeTopicMembership]:
    """Per-node, per-topic fit table. A node fits a topic when its best
    similarity against the topic's ranked words exceeds the threshold."""
    if isinstance(model, TopicModel):
        topic_lists = model.topic_word_lists()
    else:
        topic_lists = tuple(tuple(t) for t in model)
    memberships: list[NodeTopicMembership] = []
    for node in nodes:
        for t, words in enumerate(topic_lists):
            score = max((provider.similarity(node, w) for w in words), default=0.0)
            memberships.append(
                NodeTopicMembership(node=node, topic_index=t, score=score, fits=score > threshold)
            )
    return memberships
