"""Per-subtopic block selection: exact match, biased TextRank, MMR, ordering.

Similarity everywhere is tf-cosine over block token vectors; the restart
distribution of the walk is the normalized block-to-label similarity, so
high-scoring blocks are both central and on-topic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, TermVector, cosine
from .errors import NoVerticesError
from .segment import TextBlock, block_token_texts, block_vector
from .subtopic.merge import SubtopicLabel
from .subtopic.ngrams import contains_token_seq


def assign_blocks(blocks: list[TextBlock], label: SubtopicLabel, corpus: Corpus) -> list[TextBlock]:
    """Blocks whose concatenated token stream contains the label verbatim."""
    return [
        b for b in blocks if contains_token_seq(block_token_texts(corpus, b), label.tokens)
    ]


@dataclass
class BlockGraph:
    """Similarity graph over one subtopic's candidate blocks.

    ``weights`` is symmetric with zero diagonal; ``restart`` sums to 1
    and falls back to uniform when every block-label similarity is 0.
    """

    blocks: list[TextBlock]
    weights: np.ndarray
    restart: np.ndarray


def build_block_graph(
    blocks: list[TextBlock], label: SubtopicLabel, corpus: Corpus
) -> BlockGraph:
    n = len(blocks)
    if n == 0:
        raise NoVerticesError("cannot build a graph with no blocks")
    vectors = [block_vector(corpus, b) for b in blocks]
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            w = cosine(vectors[i], vectors[j])
            weights[i, j] = w
            weights[j, i] = w

    label_vec = TermVector({t: label.tokens.count(t) for t in label.tokens})
    sims = np.array([cosine(v, label_vec) for v in vectors])
    total = sims.sum()
    restart = sims / total if total > 0 else np.full(n, 1.0 / n)
    return BlockGraph(list(blocks), weights, restart)


def textrank(
    graph: BlockGraph, damping: float = 0.85, tol: float = 1e-6, max_iter: int = 1000
) -> np.ndarray:
    """Random walk with restart over the block graph.

    Iterates ws = (1-d) * restart + d * T'ws from a uniform start until
    the L1 change drops below tol, where T row-normalizes the edge
    weights and dangling rows redistribute through the restart vector.
    Scores are non-negative and sum to 1.
    """
    n = len(graph.blocks)
    if n == 0:
        raise NoVerticesError("graph has no vertices")
    if n == 1:
        return np.array([1.0])

    transition = np.empty((n, n))
    row_sums = graph.weights.sum(axis=1)
    for i in range(n):
        if row_sums[i] > 0:
            transition[i] = graph.weights[i] / row_sums[i]
        else:
            transition[i] = graph.restart

    ws = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = (1.0 - damping) * graph.restart + damping * (transition.T @ ws)
        if np.abs(nxt - ws).sum() < tol:
            return nxt
        ws = nxt
    return ws


@dataclass(frozen=True)
class RankedBlock:
    block: TextBlock
    ws: float
    mmr_rank: int


def mmr_select(
    graph: BlockGraph,
    scores: np.ndarray,
    mmr_lambda: float = 0.7,
    m: int | None = None,
) -> list[RankedBlock]:
    """Greedy redundancy-aware selection of up to m blocks.

    Each step takes the block maximizing
    lambda * ws(b) - (1 - lambda) * max similarity to the already
    selected; ties break by higher ws then block_id.  With lambda=1 the
    result is a prefix of the ws ordering.
    """
    if not 0.0 <= mmr_lambda <= 1.0:
        raise ValueError("mmr_lambda must lie in [0, 1]")
    n = len(graph.blocks)
    if m is None:
        m = n
    if m < 1:
        raise ValueError("m must be >= 1")

    remaining = list(range(n))
    selected: list[int] = []
    out: list[RankedBlock] = []
    while remaining and len(selected) < m:
        best = None
        best_key = None
        for i in remaining:
            penalty = max((graph.weights[i, j] for j in selected), default=0.0)
            objective = mmr_lambda * scores[i] - (1.0 - mmr_lambda) * penalty
            key = (-objective, -scores[i], graph.blocks[i].block_id)
            if best_key is None or key < best_key:
                best, best_key = i, key
        selected.append(best)
        remaining.remove(best)
        out.append(RankedBlock(graph.blocks[best], float(scores[best]), len(out)))
    return out


def order_blocks(selected: list[TextBlock]) -> list[TextBlock]:
    """Reading order: older articles first, original order within one article."""
    return sorted(selected, key=lambda b: (b.published_at, b.article_id, b.start))


def rank_blocks_for_label(
    corpus: Corpus,
    blocks: list[TextBlock],
    label: SubtopicLabel,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iter: int = 1000,
    mmr_lambda: float = 0.7,
) -> list[RankedBlock]:
    """Full per-label ranking: exact match, walk, MMR over all candidates.

    Returns the complete MMR ordering (callers truncate against their
    word budget); empty when no block contains the label.
    """
    candidates = assign_blocks(blocks, label, corpus)
    if not candidates:
        return []
    graph = build_block_graph(candidates, label, corpus)
    scores = textrank(graph, damping=damping, tol=tol, max_iter=max_iter)
    return mmr_select(graph, scores, mmr_lambda=mmr_lambda, m=len(candidates))
