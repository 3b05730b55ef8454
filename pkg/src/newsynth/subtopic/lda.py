"""Small LDA topic model fit by collapsed Gibbs sampling.

Feeds the topic-model feature of the label scorer.  Defaults: K=10
topics, 200 sweeps, alpha=50/K, beta=0.01, fixed seed.  Word-topic
probabilities are read off the final sample.
"""

from __future__ import annotations

import numpy as np


class TopicModel:
    def __init__(
        self,
        n_topics: int = 10,
        iterations: int = 200,
        alpha: float | None = None,
        beta: float = 0.01,
        seed: int = 0,
    ):
        if n_topics < 1:
            raise ValueError("n_topics must be >= 1")
        self.n_topics = n_topics
        self.iterations = iterations
        self.alpha = 50.0 / n_topics if alpha is None else alpha
        self.beta = beta
        self.seed = seed
        self.vocab: dict[str, int] = {}
        self._n_kw: np.ndarray | None = None  # topic x word counts
        self._n_k: np.ndarray | None = None  # tokens per topic

    def fit(self, documents: list[list[str]]) -> "TopicModel":
        """Run the collapsed Gibbs sampler over tokenized documents."""
        vocab: dict[str, int] = {}
        doc_words: list[np.ndarray] = []
        for doc in documents:
            ids = []
            for w in doc:
                if w not in vocab:
                    vocab[w] = len(vocab)
                ids.append(vocab[w])
            doc_words.append(np.array(ids, dtype=np.int64))
        self.vocab = vocab
        V = len(vocab)
        K = self.n_topics
        D = len(documents)
        if V == 0:
            raise ValueError("cannot fit a topic model on an empty corpus")

        rng = np.random.default_rng(self.seed)
        n_dk = np.zeros((D, K), dtype=np.float64)
        n_kw = np.zeros((K, V), dtype=np.float64)
        n_k = np.zeros(K, dtype=np.float64)
        assignments = []
        for d, words in enumerate(doc_words):
            z = rng.integers(0, K, size=len(words))
            assignments.append(z)
            for w, k in zip(words, z):
                n_dk[d, k] += 1
                n_kw[k, w] += 1
                n_k[k] += 1

        alpha, beta = self.alpha, self.beta
        vbeta = V * beta
        for _ in range(self.iterations):
            for d, words in enumerate(doc_words):
                z = assignments[d]
                row = n_dk[d]
                for i in range(len(words)):
                    w = words[i]
                    k = z[i]
                    row[k] -= 1
                    n_kw[k, w] -= 1
                    n_k[k] -= 1
                    p = (row + alpha) * (n_kw[:, w] + beta) / (n_k + vbeta)
                    cumulative = np.cumsum(p)
                    k = int(np.searchsorted(cumulative, rng.random() * cumulative[-1]))
                    z[i] = k
                    row[k] += 1
                    n_kw[k, w] += 1
                    n_k[k] += 1
        self._n_kw = n_kw
        self._n_k = n_k
        return self

    def word_prob(self, word: str, topic: int) -> float:
        """P(word | topic) under the final sample, smoothed by beta."""
        if self._n_kw is None:
            raise RuntimeError("model not fitted")
        V = len(self.vocab)
        denom = self._n_k[topic] + V * self.beta
        w = self.vocab.get(word)
        count = self._n_kw[topic, w] if w is not None else 0.0
        return float((count + self.beta) / denom)

    def label_score(self, words) -> float:
        """max over topics of the geometric-mean word probability.

        The geometric mean keeps scores comparable across n-gram orders.
        """
        words = list(words)
        if self._n_kw is None:
            raise RuntimeError("model not fitted")
        best = 0.0
        for k in range(self.n_topics):
            prod = 1.0
            for w in words:
                prod *= self.word_prob(w, k)
            best = max(best, prod ** (1.0 / len(words)))
        return best


def fit_topic_model(corpus, n_topics=10, iterations=200, seed=0) -> TopicModel:
    """Fit on one document per article (title plus body tokens)."""
    docs = [
        [t.text for s in article.sentences() for t in s.tokens]
        for article in corpus.articles
    ]
    return TopicModel(n_topics=n_topics, iterations=iterations, seed=seed).fit(docs)
