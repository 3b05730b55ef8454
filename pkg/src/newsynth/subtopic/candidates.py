"""Candidate label extraction.

An n-gram (n in 1..3, within one sentence) becomes a candidate when it
clears four filters: corpus term frequency at or above a min-count
threshold, not a substring of the topic name, free of adverbs and time
words, and, for unigrams, a noun or verb.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..corpus import POS_ADVERB, POS_NOUN, POS_TIME, POS_VERB, Corpus, Token, join_token_texts
from .ngrams import CorpusNgramIndex

# Backstop for corpora whose tagger missed temporal words: digit+date-unit
# patterns and a small lexicon of common Chinese time expressions.
_TIME_PATTERN = re.compile(r"^\d+(年|月|日|号|时|點|点|分|秒|世纪|年代)$")
_TIME_LEXICON = frozenset(
    {
        "今天", "昨天", "明天", "前天", "后天", "今年", "去年", "明年", "前年",
        "目前", "日前", "近日", "当天", "当日", "本月", "上月", "下月",
        "上午", "下午", "凌晨", "傍晚", "夜间", "周末", "本周", "上周", "下周",
    }
)


def is_time_token(token: Token) -> bool:
    return (
        token.pos == POS_TIME
        or token.text in _TIME_LEXICON
        or bool(_TIME_PATTERN.match(token.text))
    )


@dataclass
class CandidateLabel:
    """An n-gram candidate; features and score are filled in later."""

    tokens: tuple[Token, ...]
    surface: str
    tf: int
    features: "FeatureVector | None" = field(default=None)
    predicted_score: float | None = None

    @property
    def token_texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)


def passes_filters(
    tokens: tuple[Token, ...],
    tf: int,
    topic_name: str,
    min_count_unigram: int,
    min_count_ngram: int,
) -> bool:
    n = len(tokens)
    threshold = min_count_unigram if n == 1 else min_count_ngram
    if tf < threshold:
        return False
    surface = join_token_texts(t.text for t in tokens)
    if surface in topic_name:
        return False
    if any(t.pos == POS_ADVERB or is_time_token(t) for t in tokens):
        return False
    if n == 1 and tokens[0].pos not in (POS_NOUN, POS_VERB):
        return False
    return True


def extract_candidates(
    corpus: Corpus,
    min_count_unigram: int = 25,
    min_count_ngram: int = 10,
    index: CorpusNgramIndex | None = None,
) -> list[CandidateLabel]:
    """Return every qualifying n-gram exactly once, in first-occurrence order.

    POS attributes come from the n-gram's first occurrence in the corpus.
    Can return an empty list when nothing clears the thresholds.
    """
    if index is None:
        index = CorpusNgramIndex(corpus)
    out = []
    for gram, tf in index.counts.items():
        tokens = index.first_tokens[gram]
        if passes_filters(tokens, tf, corpus.topic_name, min_count_unigram, min_count_ngram):
            out.append(
                CandidateLabel(
                    tokens=tokens,
                    surface=join_token_texts(gram),
                    tf=tf,
                )
            )
    return out
