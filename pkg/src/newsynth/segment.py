"""Lexical-cohesion segmentation of article bodies into text blocks.

Sentence-windowed TextTiling: each gap between adjacent sentences gets a
cohesion score (tf-cosine of the w sentences before vs after), gaps get
depth scores against their nearest flanking peaks, and boundaries land
where depth clears mean + k * stddev over the positive depths.  Blocks
are the runs between boundaries and always partition the body.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, NewsArticle, Sentence, TermVector, cosine, term_vector


@dataclass(frozen=True)
class TextBlock:
    """A contiguous run of body sentences; the atomic synthesis unit."""

    article_id: str
    start: int
    end: int
    published_at: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError("block range must satisfy 0 <= start < end")

    @property
    def block_id(self) -> str:
        return f"{self.article_id}:{self.start}"

    def __len__(self) -> int:
        return self.end - self.start


def _window_vector(body, lo: int, hi: int, stopwords) -> TermVector:
    sentences = body[max(0, lo) : hi]
    if not stopwords:
        return term_vector(sentences)
    counts: dict[str, float] = {}
    for s in sentences:
        for tok in s.tokens:
            if tok.text not in stopwords:
                counts[tok.text] = counts.get(tok.text, 0.0) + 1.0
    return TermVector(counts)


def gap_scores(
    body: tuple[Sentence, ...], window_w: int = 2, stopwords: frozenset[str] | None = None
) -> list[float]:
    """Cohesion score for each of the len(body)-1 inter-sentence gaps.

    Gap i separates body[:i] from body[i:]; windows clip at the article
    edges.
    """
    return [
        cosine(
            _window_vector(body, i - window_w, i, stopwords),
            _window_vector(body, i, i + window_w, stopwords),
        )
        for i in range(1, len(body))
    ]


def depth_scores(scores: list[float]) -> list[float]:
    """Valley depth per gap: rise to the nearest peak on each side."""
    depths = []
    for i, g in enumerate(scores):
        left = g
        for j in range(i - 1, -1, -1):
            if scores[j] >= left:
                left = scores[j]
            else:
                break
        right = g
        for j in range(i + 1, len(scores)):
            if scores[j] >= right:
                right = scores[j]
            else:
                break
        depths.append((left - g) + (right - g))
    return depths


def _boundaries(depths: list[float], cutoff_k: float) -> list[int]:
    positive = [d for d in depths if d > 0.0]
    if not positive:
        return []
    mean = sum(positive) / len(positive)
    var = sum((d - mean) ** 2 for d in positive) / len(positive)
    threshold = mean + cutoff_k * var**0.5
    return [i + 1 for i, d in enumerate(depths) if d >= threshold and d > 0.0]


def segment_article(
    article: NewsArticle,
    window_w: int = 2,
    depth_cutoff_k: float = 0.5,
    stopwords: frozenset[str] | None = None,
) -> list[TextBlock]:
    """Split one article body into blocks.

    Bodies shorter than 2*window_w + 1 sentences stay a single block; a
    body with no positive-depth gap (uniform cohesion) does too.
    """
    body = article.body
    n = len(body)
    if n < 2 * window_w + 1:
        return [TextBlock(article.id, 0, n, article.published_at)]
    depths = depth_scores(gap_scores(body, window_w, stopwords))
    cuts = _boundaries(depths, depth_cutoff_k)
    edges = [0] + cuts + [n]
    return [
        TextBlock(article.id, edges[i], edges[i + 1], article.published_at)
        for i in range(len(edges) - 1)
    ]


def segment_corpus(
    corpus: Corpus,
    window_w: int = 2,
    depth_cutoff_k: float = 0.5,
    stopwords: frozenset[str] | None = None,
) -> list[TextBlock]:
    """Per-article segmentation concatenated in corpus order."""
    out: list[TextBlock] = []
    for article in corpus.articles:
        out.extend(segment_article(article, window_w, depth_cutoff_k, stopwords))
    return out


def load_stopwords(path) -> frozenset[str]:
    """One token per line, UTF-8; blank lines ignored."""
    with open(path, "r", encoding="utf-8") as fh:
        return frozenset(line.strip() for line in fh if line.strip())


def block_sentences(corpus: Corpus, block: TextBlock) -> tuple[Sentence, ...]:
    return corpus.article(block.article_id).body[block.start : block.end]


def block_token_texts(corpus: Corpus, block: TextBlock) -> list[str]:
    """Token stream of the block, concatenated across its sentences."""
    return [t.text for s in block_sentences(corpus, block) for t in s.tokens]


def block_text(corpus: Corpus, block: TextBlock) -> str:
    """Rendered paragraph text: the raw sentences joined by single spaces."""
    return " ".join(s.text for s in block_sentences(corpus, block))


def block_vector(corpus: Corpus, block: TextBlock) -> TermVector:
    return term_vector(block_sentences(corpus, block))
