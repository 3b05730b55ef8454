"""Comparison summarizers and the P@k label-evaluation harness.

Six baselines: Lead and Coverage on the sentence unit, Centroid and
TextRank on either sentences or segmented blocks.  All share the word
budget rule: units accumulate in rank order until the budget is
reached, so overshoot stays within one unit.  Articles come back
without subtitles, as a single unlabeled section.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, TermVector, cosine
from .errors import InsufficientTopicsError, UnknownMethodError
from .rank import BlockGraph, RankedBlock, textrank
from .segment import TextBlock, block_text, block_token_texts, block_vector, segment_corpus
from .subtopic.regression import SvrHyperparams, TrainingExample, train
from .synth import Paragraph, SubtopicSection, SynthesisArticle, count_words

METHODS = ("lead", "coverage", "centroid", "textrank")
UNITS = ("sentence", "block")

# the six combinations reported by the evaluation harness
BASELINES = (
    ("lead", "sentence"),
    ("coverage", "sentence"),
    ("centroid", "sentence"),
    ("textrank", "sentence"),
    ("centroid", "block"),
    ("textrank", "block"),
)


def sentence_units(corpus: Corpus) -> list[TextBlock]:
    return [
        TextBlock(a.id, i, i + 1, a.published_at)
        for a in corpus.articles
        for i in range(len(a.body))
    ]


def _natural_key(unit: TextBlock):
    return (unit.published_at, unit.article_id, unit.start)


def _take_until_budget(corpus: Corpus, units: list[TextBlock], target_words: int) -> list[TextBlock]:
    chosen: list[TextBlock] = []
    words = 0
    for u in units:
        if chosen and words >= target_words:
            break
        chosen.append(u)
        words += count_words(block_text(corpus, u))
    return chosen


def _lead_order(corpus: Corpus, units: list[TextBlock]) -> list[TextBlock]:
    # most recent article first, original sentence order inside it
    return sorted(units, key=lambda u: (-u.published_at, u.article_id, u.start))


def _coverage_order(corpus: Corpus, units: list[TextBlock]) -> list[TextBlock]:
    term_sets = {u.block_id: set(block_token_texts(corpus, u)) for u in units}
    remaining = list(units)
    covered: set[str] = set()
    ordered = []
    while remaining:
        best = min(
            remaining,
            key=lambda u: (-len(term_sets[u.block_id] - covered),) + _natural_key(u),
        )
        ordered.append(best)
        remaining.remove(best)
        covered |= term_sets[best.block_id]
    return ordered


def _centroid_order(corpus: Corpus, units: list[TextBlock]) -> list[TextBlock]:
    vectors = {u.block_id: block_vector(corpus, u) for u in units}
    centroid_counts: dict[str, float] = {}
    for v in vectors.values():
        for t, w in v.weights.items():
            centroid_counts[t] = centroid_counts.get(t, 0.0) + w
    centroid = TermVector(centroid_counts)
    return sorted(
        units,
        key=lambda u: (-cosine(vectors[u.block_id], centroid),) + _natural_key(u),
    )


def _uniform_graph(corpus: Corpus, units: list[TextBlock]) -> BlockGraph:
    n = len(units)
    vectors = [block_vector(corpus, u) for u in units]
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            w = cosine(vectors[i], vectors[j])
            weights[i, j] = w
            weights[j, i] = w
    return BlockGraph(list(units), weights, np.full(n, 1.0 / n))


def _textrank_order(corpus: Corpus, units: list[TextBlock]) -> list[TextBlock]:
    graph = _uniform_graph(corpus, units)
    scores = textrank(graph)
    indexed = {u.block_id: s for u, s in zip(units, scores)}
    return sorted(units, key=lambda u: (-indexed[u.block_id],) + _natural_key(u))


def baseline_summarize(
    method: str,
    unit: str,
    corpus: Corpus,
    target_words: int = 1000,
    window_w: int = 2,
    depth_cutoff_k: float = 0.5,
) -> SynthesisArticle:
    """Run one baseline and return an article with a single untitled section."""
    if method not in METHODS or unit not in UNITS:
        raise UnknownMethodError(method, unit)
    if method in ("lead", "coverage") and unit != "sentence":
        raise UnknownMethodError(method, unit)

    units = (
        sentence_units(corpus)
        if unit == "sentence"
        else segment_corpus(corpus, window_w, depth_cutoff_k)
    )
    order = {
        "lead": _lead_order,
        "coverage": _coverage_order,
        "centroid": _centroid_order,
        "textrank": _textrank_order,
    }[method]
    chosen = _take_until_budget(corpus, order(corpus, units), target_words)

    paragraphs = tuple(
        Paragraph(
            text=block_text(corpus, u),
            article_id=u.article_id,
            start=u.start,
            end=u.end,
            block_id=u.block_id,
            edited=False,
        )
        for u in chosen
    )
    blocks = tuple(RankedBlock(u, 0.0, i) for i, u in enumerate(chosen))
    section = SubtopicSection(None, blocks, paragraphs)
    words = sum(count_words(p.text) for p in paragraphs)
    return SynthesisArticle(corpus.topic_name, (section,), words)


def redundancy(corpus: Corpus, units: list[TextBlock]) -> float:
    """Mean pairwise tf-cosine among the selected units (0 when < 2)."""
    if len(units) < 2:
        return 0.0
    vectors = [block_vector(corpus, u) for u in units]
    sims = [
        cosine(vectors[i], vectors[j])
        for i in range(len(vectors))
        for j in range(i + 1, len(vectors))
    ]
    return sum(sims) / len(sims)


def precision_at_k(predicted: list[str], gold: dict[str, int], k: int) -> float:
    """Fraction of the top-k predictions with a positive gold score.

    Predictions missing from the gold map count as misses; k stays the
    denominator even when fewer than k predictions exist.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    hits = sum(1 for surface in predicted[:k] if gold.get(surface, 0) > 0)
    return hits / k


@dataclass(frozen=True)
class LabeledTopic:
    topic: str
    examples: list[TrainingExample]


@dataclass
class EvalReport:
    """Cross-validation P@k results and/or baseline comparison stats."""

    per_topic: dict[str, dict[int, float]] = field(default_factory=dict)
    macro: dict[int, float] = field(default_factory=dict)
    method_stats: dict[str, dict[str, float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "per_topic": {
                t: {f"p@{k}": v for k, v in row.items()} for t, row in self.per_topic.items()
            },
            "macro": {f"p@{k}": v for k, v in self.macro.items()},
            "method_stats": self.method_stats,
        }


P_AT_KS = (5, 10, 20)


def cross_validate(
    topics: list[LabeledTopic], hyperparams: SvrHyperparams | None = None
) -> EvalReport:
    """Leave-one-topic-out: train on the rest, score P@k on the held-out topic."""
    if len(topics) < 2:
        raise InsufficientTopicsError("cross-validation needs at least 2 labeled topics")
    report = EvalReport()
    for held_out in topics:
        train_examples = [
            e for t in topics if t.topic != held_out.topic for e in t.examples
        ]
        model = train(train_examples, hyperparams)
        scored = sorted(
            held_out.examples,
            key=lambda e: (-model.predict(e.features), e.surface),
        )
        predicted = [e.surface for e in scored]
        gold = {e.surface: e.gold_score for e in held_out.examples}
        report.per_topic[held_out.topic] = {
            k: precision_at_k(predicted, gold, k) for k in P_AT_KS
        }
    for k in P_AT_KS:
        rows = [row[k] for row in report.per_topic.values()]
        report.macro[k] = sum(rows) / len(rows)
    return report


def group_by_topic(examples: list[TrainingExample]) -> list[LabeledTopic]:
    order: list[str] = []
    grouped: dict[str, list[TrainingExample]] = {}
    for e in examples:
        if e.topic not in grouped:
            grouped[e.topic] = []
            order.append(e.topic)
        grouped[e.topic].append(e)
    return [LabeledTopic(t, grouped[t]) for t in order]


def compare_baselines(corpus: Corpus, target_words: int = 1000) -> EvalReport:
    """Word count and redundancy for each of the six baselines."""
    report = EvalReport()
    for method, unit in BASELINES:
        article = baseline_summarize(method, unit, corpus, target_words)
        section = article.sections[0]
        units = [rb.block for rb in section.blocks]
        report.method_stats[f"{method}-{'sen' if unit == 'sentence' else 'blk'}"] = {
            "word_count": float(article.word_count),
            "redundancy": redundancy(corpus, units),
        }
    return report


def render_p_at_k_table(report: EvalReport) -> str:
    lines = [f"{'topic':<24}" + "".join(f"{f'P@{k}':>8}" for k in P_AT_KS)]
    for topic, row in report.per_topic.items():
        lines.append(f"{topic:<24}" + "".join(f"{row[k]:>8.3f}" for k in P_AT_KS))
    lines.append(f"{'MACRO':<24}" + "".join(f"{report.macro[k]:>8.3f}" for k in P_AT_KS))
    return "\n".join(lines)


def render_baseline_table(report: EvalReport) -> str:
    lines = [f"{'Method':<16}{'Words':>8}{'Redun.':>8}"]
    for name, stats in report.method_stats.items():
        lines.append(f"{name:<16}{stats['word_count']:>8.0f}{stats['redundancy']:>8.3f}")
    return "\n".join(lines)
