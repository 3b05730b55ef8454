"""Shared fixtures: tiny corpus builders and the bundled sample corpus."""

from __future__ import annotations

from pathlib import Path

import pytest

from newsynth.corpus import Corpus, NewsArticle, Sentence, Token, ingest_corpus
from newsynth.subtopic.candidates import extract_candidates
from newsynth.subtopic.features import FeatureExtractor
from newsynth.subtopic.lda import fit_topic_model
from newsynth.subtopic.ngrams import CorpusNgramIndex
from newsynth.subtopic.regression import SvrHyperparams, TrainingExample, train
from newsynth.synth import PipelineConfig, run_pipeline, session_from_dict, session_to_dict

DATA_DIR = Path(__file__).parent / "data"
SAMPLE_CORPUS_PATH = DATA_DIR / "sample_news.jsonl"
SAMPLE_TOPIC = "riverton marathon"

THEME_PHRASES = [
    "race route",
    "finish line",
    "weather forecast",
    "charity fund",
    "security plan",
]
THEME_NOUNS = {
    "route", "streets", "closure", "bridge", "avenue", "detour", "traffic",
    "marshals", "signage", "finish", "line", "champion", "runner", "record",
    "sprint", "medal", "pace", "course", "weather", "forecast", "rain",
    "wind", "heat", "clouds", "temperature", "showers", "charity", "fund",
    "donation", "pledge", "hospital", "cause", "sponsor", "drive",
    "security", "plan", "police", "barrier", "patrol", "checkpoint",
    "bag", "check",
}


def tok(text: str, pos: str = "noun") -> Token:
    return Token(text, pos)


def sent(words, index: int, pos: str = "noun") -> Sentence:
    """Build a sentence from plain words or (word, pos) pairs."""
    tokens = []
    for item in words:
        if isinstance(item, tuple):
            tokens.append(Token(item[0], item[1]))
        else:
            tokens.append(Token(item, pos))
    text = " ".join(t.text for t in tokens)
    return Sentence(text, tuple(tokens), index)


def make_article(
    article_id: str,
    body_word_lists,
    title_words=("headline",),
    published_at: int = 0,
    source: str = "test",
    pos: str = "noun",
) -> NewsArticle:
    title = sent(title_words, -1, pos)
    body = tuple(sent(ws, i, pos) for i, ws in enumerate(body_word_lists))
    return NewsArticle(article_id, title, body, published_at, source)


def make_corpus(topic: str, articles, max_articles: int = 100) -> Corpus:
    return Corpus(topic, tuple(articles), max_articles)


@pytest.fixture(scope="session")
def sample_corpus() -> Corpus:
    return ingest_corpus(SAMPLE_CORPUS_PATH, SAMPLE_TOPIC)


def build_model_for(corpus: Corpus, config: PipelineConfig, gold_fn):
    """Train a scorer on the corpus's own candidates with rule-based gold.

    Features are computed with the same topic-model settings the pipeline
    will use, so train-time and run-time feature spaces agree.
    """
    index = CorpusNgramIndex(corpus)
    cands = extract_candidates(
        corpus, config.min_count_unigram, config.min_count_ngram, index
    )
    topic_model = fit_topic_model(
        corpus, n_topics=config.lda_topics, iterations=config.lda_iterations, seed=config.seed
    )
    FeatureExtractor(corpus, topic_model, index).compute_all(cands)
    examples = [
        TrainingExample(c.surface, c.features.as_array(), gold_fn(c)) for c in cands
    ]
    return train(examples, SvrHyperparams(seed=config.seed))


def sample_gold(candidate) -> int:
    if candidate.surface in THEME_PHRASES:
        return 3
    if {t.text for t in candidate.tokens} & THEME_NOUNS:
        return 1
    return 0


@pytest.fixture(scope="session")
def sample_model(sample_corpus):
    return build_model_for(sample_corpus, PipelineConfig(), sample_gold)


@pytest.fixture(scope="session")
def _sample_session_pristine(sample_corpus, sample_model):
    return run_pipeline(
        sample_corpus, sample_model, PipelineConfig(), session_id="fixture", now=0.0
    )


@pytest.fixture
def sample_session(_sample_session_pristine):
    # deep copy through serialization so tests may mutate freely
    return session_from_dict(session_to_dict(_sample_session_pristine))


# A 4-article corpus cheap enough for interaction and service tests.
# Two body themes plus one title-only label ("update") whose candidate
# block set is empty.
MINI_TOPIC = "metro strike"
MINI_CONFIG = PipelineConfig(
    min_count_unigram=2,
    min_count_ngram=2,
    top_k=12,
    lda_iterations=10,
    target_words=60,
    default_section_count=2,
)

_UNION_RUN = [
    ["union", "talks", "leaders", "meeting"],
    ["wage", "union", "talks", "offer"],
    ["leaders", "deal", "union", "talks"],
]
_DELAY_RUN = [
    ["train", "delays", "platform", "queues"],
    ["schedule", "train", "delays", "gaps"],
    ["riders", "train", "delays", "waits"],
]


def build_mini_corpus() -> Corpus:
    specs = [
        ("m1", ["metro", "strike", "update", "announced"], _UNION_RUN + _DELAY_RUN, 100),
        ("m2", ["metro", "strike", "update", "issued"], _DELAY_RUN + _UNION_RUN, 200),
        ("m3", ["metro", "strike", "talks", "continue"], _UNION_RUN + _DELAY_RUN, 300),
        ("m4", ["metro", "strike", "delays", "persist"], _DELAY_RUN + _UNION_RUN, 400),
    ]
    articles = [
        make_article(aid, body, title_words=title, published_at=ts)
        for aid, title, body, ts in specs
    ]
    return make_corpus(MINI_TOPIC, articles)


def mini_gold(candidate) -> int:
    if candidate.surface in ("union talks", "train delays"):
        return 3
    if {t.text for t in candidate.tokens} & {"union", "talks", "train", "delays"}:
        return 1
    return 0


@pytest.fixture(scope="session")
def mini_corpus() -> Corpus:
    return build_mini_corpus()


@pytest.fixture(scope="session")
def mini_model(mini_corpus):
    return build_model_for(mini_corpus, MINI_CONFIG, mini_gold)


def write_planted_training_data(path, n_topics: int = 4) -> None:
    """Labeled JSONL with a planted signal: gold-positive labels carry a
    large first feature, so any sane fit ranks them first (P@5 = 1)."""
    import json

    import numpy as np

    rng = np.random.default_rng(99)
    with open(path, "w", encoding="utf-8") as fh:
        for t in range(n_topics):
            for i in range(5):
                features = [0.0] * 12
                features[0] = 5.0 + i + float(rng.normal(scale=0.01))
                fh.write(
                    json.dumps(
                        {
                            "topic": f"topic{t}",
                            "label": f"topic{t}-good{i}",
                            "gold_score": 3,
                            "features": features,
                        }
                    )
                    + "\n"
                )
            for i in range(15):
                features = [0.0] * 12
                features[0] = float(rng.normal(scale=0.05))
                fh.write(
                    json.dumps(
                        {
                            "topic": f"topic{t}",
                            "label": f"topic{t}-bad{i}",
                            "gold_score": 0,
                            "features": features,
                        }
                    )
                    + "\n"
                )


def article_to_record(article: NewsArticle) -> dict:
    """Render an article back into the JSONL input schema."""
    return {
        "id": article.id,
        "title": article.title.text,
        "title_tokens": [[t.text, t.pos] for t in article.title.tokens],
        "body": [s.text for s in article.body],
        "body_tokens": [[[t.text, t.pos] for t in s.tokens] for s in article.body],
        "published_at": article.published_at,
        "source": article.source,
    }


def write_corpus_jsonl(corpus: Corpus, path) -> None:
    import json

    with open(path, "w", encoding="utf-8") as fh:
        for article in corpus.articles:
            fh.write(json.dumps(article_to_record(article), ensure_ascii=False) + "\n")


@pytest.fixture(scope="session")
def _mini_session_pristine(mini_corpus, mini_model):
    return run_pipeline(mini_corpus, mini_model, MINI_CONFIG, session_id="mini", now=0.0)


@pytest.fixture
def mini_session(_mini_session_pristine):
    return session_from_dict(session_to_dict(_mini_session_pristine))
