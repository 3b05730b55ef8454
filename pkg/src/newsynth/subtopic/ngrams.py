"""Corpus-wide n-gram occurrence index.

Built once per corpus and shared by candidate extraction and feature
computation.  Scans title and body sentences; n-grams never cross a
sentence boundary.
"""

from __future__ import annotations

from collections import Counter, defaultdict

from ..corpus import Corpus

MAX_ORDER = 3

# boundary symbols for neighbor distributions
LEFT_EDGE = "<s>"
RIGHT_EDGE = "</s>"


def contains_token_seq(haystack, needle) -> bool:
    """True when ``needle`` occurs contiguously inside ``haystack``."""
    n = len(needle)
    if n == 0 or n > len(haystack):
        return False
    first = needle[0]
    for i in range(len(haystack) - n + 1):
        if haystack[i] == first and tuple(haystack[i : i + n]) == tuple(needle):
            return True
    return False


def count_token_seq(haystack, needle) -> int:
    n = len(needle)
    if n == 0 or n > len(haystack):
        return 0
    needle = tuple(needle)
    return sum(1 for i in range(len(haystack) - n + 1) if tuple(haystack[i : i + n]) == needle)


class CorpusNgramIndex:
    """Occurrence statistics for every within-sentence n-gram, n in 1..3.

    Attributes map an n-gram (tuple of token texts) to:
      counts          total occurrences
      doc_counts      per-article occurrence counts (article position)
      title_counts    occurrences inside title sentences
      left_neighbors / right_neighbors
                      neighbor-symbol histograms, sentence edges included
      first_tokens    Token objects from the first occurrence (POS source)
    ``order_totals[n]`` is the total number of order-n occurrences.
    """

    def __init__(self, corpus: Corpus, max_order: int = MAX_ORDER):
        self.corpus = corpus
        self.max_order = max_order
        self.counts: Counter = Counter()
        self.doc_counts: dict[tuple, Counter] = defaultdict(Counter)
        self.title_counts: Counter = Counter()
        self.left_neighbors: dict[tuple, Counter] = defaultdict(Counter)
        self.right_neighbors: dict[tuple, Counter] = defaultdict(Counter)
        self.first_tokens: dict[tuple, tuple] = {}
        self.order_totals: Counter = Counter()
        self._build()

    def _build(self) -> None:
        for ai, article in enumerate(self.corpus.articles):
            for sentence in article.sentences():
                tokens = sentence.tokens
                texts = [t.text for t in tokens]
                in_title = sentence.index < 0
                for n in range(1, self.max_order + 1):
                    for i in range(len(texts) - n + 1):
                        g = tuple(texts[i : i + n])
                        self.counts[g] += 1
                        self.doc_counts[g][ai] += 1
                        self.order_totals[n] += 1
                        if in_title:
                            self.title_counts[g] += 1
                        left = texts[i - 1] if i > 0 else LEFT_EDGE
                        right = texts[i + n] if i + n < len(texts) else RIGHT_EDGE
                        self.left_neighbors[g][left] += 1
                        self.right_neighbors[g][right] += 1
                        if g not in self.first_tokens:
                            self.first_tokens[g] = tuple(tokens[i : i + n])

    def probability(self, gram: tuple) -> float:
        """Occurrence probability within the n-gram's own order."""
        total = self.order_totals[len(gram)]
        if total == 0:
            return 0.0
        return self.counts[gram] / total
