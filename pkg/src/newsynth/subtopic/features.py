"""The 12-component feature vector behind label scoring.

Definitions, with tf/df computed over the whole corpus and documents
meaning articles (title plus body):

  tfidf                  tf * ln(N / df)
  df                     number of articles containing the n-gram
  word_count             token count (1..3)
  char_count             Unicode characters across the label's tokens
  intra_cluster_sim      mean pairwise tf-cosine among supporting
                         articles; 1.0 when only one article
  cluster_entropy        entropy of the label's occurrence distribution
                         across articles
  independence_entropy   min of left/right neighbor entropy at label
                         occurrences; sentence edges count as symbols
  title_freq             occurrences inside titles
  syntactic_continuity   ln(p(gram) / max over split points of
                         p(left) * p(right)); 0 for unigrams
  noun_count             tokens tagged noun
  topic_model_score      max over LDA topics of the geometric-mean
                         word probability
  raw_tf                 corpus term frequency
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..corpus import POS_NOUN, Corpus, TermVector, cosine, term_vector
from .candidates import CandidateLabel
from .lda import TopicModel
from .ngrams import CorpusNgramIndex

FEATURE_NAMES = [
    "tfidf",
    "df",
    "word_count",
    "char_count",
    "intra_cluster_sim",
    "cluster_entropy",
    "independence_entropy",
    "title_freq",
    "syntactic_continuity",
    "noun_count",
    "topic_model_score",
    "raw_tf",
]

N_FEATURES = len(FEATURE_NAMES)


@dataclass(frozen=True)
class FeatureVector:
    tfidf: float
    df: float
    word_count: float
    char_count: float
    intra_cluster_sim: float
    cluster_entropy: float
    independence_entropy: float
    title_freq: float
    syntactic_continuity: float
    noun_count: float
    topic_model_score: float
    raw_tf: float

    def __post_init__(self):
        arr = self.as_array()
        if not np.all(np.isfinite(arr)):
            raise ValueError("feature vector contains non-finite values")

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=np.float64)


def _entropy(counts) -> float:
    total = sum(counts)
    if total == 0:
        return 0.0
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * math.log(p)
    return h


class FeatureExtractor:
    """Computes feature vectors against a fixed corpus and topic model.

    Corpus-level structures (the n-gram index, per-article vectors, the
    article-pair cosine cache) are built once and reused, so feature
    computation per candidate is cheap and independently parallelizable.
    """

    def __init__(
        self,
        corpus: Corpus,
        topic_model: TopicModel,
        index: CorpusNgramIndex | None = None,
    ):
        self.corpus = corpus
        self.topic_model = topic_model
        self.index = index if index is not None else CorpusNgramIndex(corpus)
        self._doc_vectors: list[TermVector] = [
            term_vector(list(a.sentences())) for a in corpus.articles
        ]
        self._pair_cos: dict[tuple[int, int], float] = {}

    def _doc_cosine(self, i: int, j: int) -> float:
        key = (i, j) if i < j else (j, i)
        if key not in self._pair_cos:
            self._pair_cos[key] = cosine(self._doc_vectors[key[0]], self._doc_vectors[key[1]])
        return self._pair_cos[key]

    def compute(self, candidate: CandidateLabel) -> FeatureVector:
        gram = candidate.token_texts
        idx = self.index
        tf = idx.counts[gram]
        doc_counts = idx.doc_counts[gram]
        df = len(doc_counts)
        if df == 0:
            raise ValueError(f"candidate {candidate.surface!r} does not occur in the corpus")
        n_docs = len(self.corpus.articles)

        docs = sorted(doc_counts)
        if df == 1:
            intra = 1.0
        else:
            sims = [
                self._doc_cosine(docs[a], docs[b])
                for a in range(df)
                for b in range(a + 1, df)
            ]
            intra = sum(sims) / len(sims)

        cluster_entropy = _entropy(doc_counts.values())
        independence = min(
            _entropy(idx.left_neighbors[gram].values()),
            _entropy(idx.right_neighbors[gram].values()),
        )

        if len(gram) == 1:
            continuity = 0.0
        else:
            p_gram = idx.probability(gram)
            best_split = max(
                idx.probability(gram[:i]) * idx.probability(gram[i:])
                for i in range(1, len(gram))
            )
            continuity = math.log(p_gram / best_split)

        return FeatureVector(
            tfidf=tf * math.log(n_docs / df),
            df=float(df),
            word_count=float(len(gram)),
            char_count=float(sum(len(t) for t in gram)),
            intra_cluster_sim=intra,
            cluster_entropy=cluster_entropy,
            independence_entropy=independence,
            title_freq=float(idx.title_counts.get(gram, 0)),
            syntactic_continuity=continuity,
            noun_count=float(sum(1 for t in candidate.tokens if t.pos == POS_NOUN)),
            topic_model_score=self.topic_model.label_score(gram),
            raw_tf=float(tf),
        )

    def compute_all(self, candidates: list[CandidateLabel]) -> list[CandidateLabel]:
        for c in candidates:
            c.features = self.compute(c)
        return candidates


def compute_features(
    candidate: CandidateLabel, corpus: Corpus, topic_model: TopicModel
) -> FeatureVector:
    """One-off convenience wrapper; pipelines should reuse a FeatureExtractor."""
    return FeatureExtractor(corpus, topic_model).compute(candidate)
