"""Merging of top-scored candidates into final subtopic labels.

Three rules run in order over the top-k candidates:

  1. two labels sharing a contiguous common part of at least two tokens
     collapse into their union n-gram (capped at 5 tokens), keeping the
     higher score;
  2. when one label's surface is a substring of another's, only the
     higher-scored label survives;
  3. when two labels' context cosine exceeds the threshold, only the
     higher-scored label survives.

A label's context vector is the tf vector of every sentence containing
the label.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus import Corpus, TermVector, cosine, join_token_texts, term_vector
from .candidates import CandidateLabel
from .ngrams import contains_token_seq, count_token_seq

MAX_MERGED_TOKENS = 5


@dataclass(frozen=True)
class SubtopicLabel:
    """A merged label: the subtitle of one synthesized section."""

    tokens: tuple[str, ...]
    surface: str
    score: float
    tf: int


def context_vector(corpus: Corpus, tokens: tuple[str, ...]) -> TermVector:
    sentences = [
        s
        for a in corpus.articles
        for s in a.sentences()
        if contains_token_seq(s.token_texts(), tokens)
    ]
    return term_vector(sentences)


def count_occurrences(corpus: Corpus, tokens: tuple[str, ...]) -> int:
    return sum(
        count_token_seq(s.token_texts(), tokens)
        for a in corpus.articles
        for s in a.sentences()
    )


def _common_run(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    """Longest run of tokens contiguous in both a and b (first found wins)."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    for length in range(len(short), 0, -1):
        for start in range(len(short) - length + 1):
            run = short[start : start + length]
            if contains_token_seq(long_, run):
                return run
    return ()


def _union(a: tuple[str, ...], b: tuple[str, ...], run: tuple[str, ...]) -> tuple[str, ...] | None:
    """Concatenate around the shared run when it sits at compatible edges."""
    k = len(run)
    if a[-k:] == run and b[:k] == run:
        return a + b[k:]
    if b[-k:] == run and a[:k] == run:
        return b + a[k:]
    return None


def _sort_key(label: SubtopicLabel):
    return (-label.score, -label.tf, label.surface)


def merge_labels(
    ranked: list[CandidateLabel],
    corpus: Corpus,
    top_k: int = 20,
    cos_threshold: float = 0.65,
) -> list[SubtopicLabel]:
    """Apply the three merge rules to the top_k scored candidates.

    Output keeps descending-score order; no surviving label is a
    substring of another and no surviving pair has context cosine above
    the threshold.
    """
    labels = [
        SubtopicLabel(
            tokens=c.token_texts,
            surface=c.surface,
            score=c.predicted_score if c.predicted_score is not None else 0.0,
            tf=c.tf,
        )
        for c in ranked[:top_k]
    ]
    labels.sort(key=_sort_key)

    # rule 1: merge overlapping labels until no pair shares a 2+ token run;
    # containment pairs (run == the shorter label) are left to rule 2
    merged = True
    while merged:
        merged = False
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                run = _common_run(labels[i].tokens, labels[j].tokens)
                if len(run) < 2 or len(run) == min(len(labels[i].tokens), len(labels[j].tokens)):
                    continue
                union = _union(labels[i].tokens, labels[j].tokens, run)
                score = max(labels[i].score, labels[j].score)
                if union is not None and len(union) <= MAX_MERGED_TOKENS:
                    new = SubtopicLabel(
                        tokens=union,
                        surface=join_token_texts(union),
                        score=score,
                        tf=count_occurrences(corpus, union),
                    )
                else:
                    # no clean concatenation (or too long): collapse onto
                    # the higher-scored of the pair
                    new = labels[i]
                hi, lo = max(i, j), min(i, j)
                del labels[hi]
                del labels[lo]
                labels.append(new)
                labels.sort(key=_sort_key)
                merged = True
                break
            if merged:
                break

    # rule 2: substring labels lose to the higher-scored label
    survivors: list[SubtopicLabel] = []
    for label in labels:
        if any(
            label.surface in kept.surface or kept.surface in label.surface
            for kept in survivors
        ):
            continue
        survivors.append(label)

    # rule 3: near-identical contexts lose to the higher-scored label
    contexts = {l.tokens: context_vector(corpus, l.tokens) for l in survivors}
    final: list[SubtopicLabel] = []
    for label in survivors:
        if any(
            cosine(contexts[label.tokens], contexts[kept.tokens]) > cos_threshold
            for kept in final
        ):
            continue
        final.append(label)
    return final
