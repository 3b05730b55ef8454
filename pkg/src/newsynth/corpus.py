"""Document data model, offline corpus ingestion, and sparse term vectors.

Articles arrive as JSONL, one object per line:

    {"id": str, "title": str, "title_tokens": [[text, pos], ...]?,
     "body": [str, ...], "body_tokens": [[[text, pos], ...], ...]?,
     "published_at": int, "source": str}

Tokenization and POS tags are an input contract.  When ``*_tokens`` are
absent a whitespace tokenizer with pos="other" kicks in, which keeps
plain-text corpora runnable with POS-dependent filters degraded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping

from .errors import EmptyCorpusError, SchemaError

# Coarse POS classes.  Ingestion maps common fine-grained tag strings
# (LTP / ICTCLAS style) onto these six.
POS_NOUN = "noun"
POS_VERB = "verb"
POS_ADVERB = "adverb"
POS_TIME = "time-word"
POS_ADJ = "adjective"
POS_OTHER = "other"

POS_TAGS = frozenset({POS_NOUN, POS_VERB, POS_ADVERB, POS_TIME, POS_ADJ, POS_OTHER})

# Fine tag -> coarse class.  "nt"/"t" are temporal words; remaining n* are
# noun subtypes, v* verb subtypes, a* adjective subtypes, "d" adverbs.
_FINE_POS_MAP = {
    "nt": POS_TIME,
    "t": POS_TIME,
    "d": POS_ADVERB,
}


def normalize_pos(tag: str) -> str:
    """Map a raw POS tag onto the coarse six-class set."""
    if tag in POS_TAGS:
        return tag
    if tag in _FINE_POS_MAP:
        return _FINE_POS_MAP[tag]
    if tag.startswith("n"):
        return POS_NOUN
    if tag.startswith("v"):
        return POS_VERB
    if tag.startswith("a"):
        return POS_ADJ
    return POS_OTHER


def _is_cjk(ch: str) -> bool:
    o = ord(ch)
    return (
        0x4E00 <= o <= 0x9FFF
        or 0x3400 <= o <= 0x4DBF
        or 0xF900 <= o <= 0xFAFF
        or 0x3040 <= o <= 0x30FF
    )


def join_token_texts(texts) -> str:
    """Concatenate token texts, inserting a space only between two
    non-CJK neighbors so both Chinese and Latin-script labels read
    naturally ("世界杯" + "抽签" -> "世界杯抽签", "world" + "cup" -> "world cup").
    """
    parts = []
    prev_last = ""
    for t in texts:
        if parts and not _is_cjk(prev_last) and not _is_cjk(t[0]):
            parts.append(" ")
        parts.append(t)
        prev_last = t[-1]
    return "".join(parts)


@dataclass(frozen=True)
class Token:
    text: str
    pos: str
    char_len: int = 0

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown coarse POS tag: {self.pos!r}")
        object.__setattr__(self, "char_len", len(self.text))


@dataclass(frozen=True)
class Sentence:
    """A tokenized sentence plus its raw surface text.

    ``index`` is the 0-based position within the article body; title
    sentences carry index -1.
    """

    text: str
    tokens: tuple[Token, ...]
    index: int

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence must contain at least one token")

    def token_texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)


@dataclass(frozen=True)
class NewsArticle:
    id: str
    title: Sentence
    body: tuple[Sentence, ...]
    published_at: int
    source: str

    def __post_init__(self):
        if not self.body:
            raise ValueError("article body must be non-empty")
        for i, s in enumerate(self.body):
            if s.index != i:
                raise ValueError("body sentence indices must be consecutive from 0")

    def sentences(self) -> Iterator[Sentence]:
        """Title followed by body, the unit stream label mining runs over."""
        yield self.title
        yield from self.body


@dataclass(frozen=True)
class Corpus:
    topic_name: str
    articles: tuple[NewsArticle, ...]
    max_articles: int = 100

    def __post_init__(self):
        if self.max_articles <= 0:
            raise ValueError("max_articles must be positive")
        if not 1 <= len(self.articles) <= self.max_articles:
            raise ValueError("corpus must hold between 1 and max_articles articles")
        ids = [a.id for a in self.articles]
        if len(set(ids)) != len(ids):
            raise ValueError("article ids must be unique")

    def __len__(self) -> int:
        return len(self.articles)

    def article(self, article_id: str) -> NewsArticle:
        try:
            return self._by_id[article_id]
        except AttributeError:
            object.__setattr__(self, "_by_id", {a.id: a for a in self.articles})
            return self._by_id[article_id]

    def to_dict(self) -> dict:
        return {
            "topic_name": self.topic_name,
            "max_articles": self.max_articles,
            "articles": [_article_to_dict(a) for a in self.articles],
        }

    def to_json(self) -> str:
        # sort_keys keeps serialization byte-identical across runs
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Corpus":
        articles = tuple(_article_from_dict(a) for a in d["articles"])
        return cls(d["topic_name"], articles, d.get("max_articles", 100))


def _sentence_to_dict(s: Sentence) -> dict:
    return {"text": s.text, "tokens": [[t.text, t.pos] for t in s.tokens], "index": s.index}


def _sentence_from_dict(d: dict) -> Sentence:
    tokens = tuple(Token(t, p) for t, p in d["tokens"])
    return Sentence(d["text"], tokens, d["index"])


def _article_to_dict(a: NewsArticle) -> dict:
    return {
        "id": a.id,
        "title": _sentence_to_dict(a.title),
        "body": [_sentence_to_dict(s) for s in a.body],
        "published_at": a.published_at,
        "source": a.source,
    }


def _article_from_dict(d: dict) -> NewsArticle:
    return NewsArticle(
        id=d["id"],
        title=_sentence_from_dict(d["title"]),
        body=tuple(_sentence_from_dict(s) for s in d["body"]),
        published_at=d["published_at"],
        source=d["source"],
    )


def fallback_tokenize(text: str) -> tuple[Token, ...]:
    """Whitespace tokenizer used when the input carries no token data."""
    return tuple(Token(w, POS_OTHER) for w in text.split())


def _parse_token_list(raw, line: int, fld: str) -> tuple[Token, ...]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(line, fld)
    out = []
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not isinstance(item[0], str)
            or not isinstance(item[1], str)
            or not item[0]
        ):
            raise SchemaError(line, fld)
        out.append(Token(item[0], normalize_pos(item[1])))
    return tuple(out)


def _parse_sentence(text, tokens_raw, index: int, line: int, fld: str) -> Sentence:
    if not isinstance(text, str) or not text.strip():
        raise SchemaError(line, fld)
    if tokens_raw is None:
        tokens = fallback_tokenize(text)
        if not tokens:
            raise SchemaError(line, fld)
    else:
        tokens = _parse_token_list(tokens_raw, line, fld)
    return Sentence(text, tokens, index)


def _parse_article(obj: dict, line: int) -> NewsArticle:
    if not isinstance(obj, dict):
        raise SchemaError(line, "article")
    for fld in ("id", "title", "body", "published_at", "source"):
        if fld not in obj:
            raise SchemaError(line, fld)
    if not isinstance(obj["id"], str) or not obj["id"]:
        raise SchemaError(line, "id")
    if not isinstance(obj["source"], str):
        raise SchemaError(line, "source")
    ts = obj["published_at"]
    if isinstance(ts, bool) or not isinstance(ts, int):
        raise SchemaError(line, "published_at")

    title = _parse_sentence(obj["title"], obj.get("title_tokens"), -1, line, "title")

    body_raw = obj["body"]
    if not isinstance(body_raw, list) or not body_raw:
        raise SchemaError(line, "body")
    body_tokens = obj.get("body_tokens")
    if body_tokens is not None:
        if not isinstance(body_tokens, list) or len(body_tokens) != len(body_raw):
            raise SchemaError(line, "body_tokens")
    body = tuple(
        _parse_sentence(
            body_raw[i],
            body_tokens[i] if body_tokens is not None else None,
            i,
            line,
            "body",
        )
        for i in range(len(body_raw))
    )
    return NewsArticle(obj["id"], title, body, ts, obj["source"])


def ingest_corpus(path, topic_name: str, max_articles: int = 100) -> Corpus:
    """Read a JSONL corpus file, keeping the first ``max_articles`` articles.

    Malformed lines raise :class:`SchemaError` with their 1-based line
    number.  Raises :class:`EmptyCorpusError` when no articles are found
    and ``FileNotFoundError`` when the path does not exist.
    """
    p = Path(path)
    articles: list[NewsArticle] = []
    seen_ids: set[str] = set()
    with p.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if len(articles) >= max_articles:
                break
            raw = raw.strip()
            if not raw:
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError:
                raise SchemaError(lineno, "json", f"line {lineno}: invalid JSON")
            article = _parse_article(obj, lineno)
            if article.id in seen_ids:
                raise SchemaError(lineno, "id", f"line {lineno}: duplicate article id {article.id!r}")
            seen_ids.add(article.id)
            articles.append(article)
    if not articles:
        raise EmptyCorpusError(f"no articles in {p}")
    return Corpus(topic_name, tuple(articles), max_articles)


def corpus_from_objects(objects, topic_name: str, max_articles: int = 100) -> Corpus:
    """Build a corpus from already-decoded article objects (inline upload)."""
    articles: list[NewsArticle] = []
    seen_ids: set[str] = set()
    for lineno, obj in enumerate(objects, start=1):
        if len(articles) >= max_articles:
            break
        article = _parse_article(obj, lineno)
        if article.id in seen_ids:
            raise SchemaError(lineno, "id", f"item {lineno}: duplicate article id {article.id!r}")
        seen_ids.add(article.id)
        articles.append(article)
    if not articles:
        raise EmptyCorpusError("no articles provided")
    return Corpus(topic_name, tuple(articles), max_articles)


class TermVector:
    """Sparse term -> non-negative weight map with cosine support."""

    __slots__ = ("weights", "_norm")

    def __init__(self, weights: Mapping[str, float] | None = None):
        w = {t: float(v) for t, v in (weights or {}).items() if v != 0.0}
        for t, v in w.items():
            if v < 0:
                raise ValueError(f"negative weight for term {t!r}")
        self.weights = w
        self._norm = math.sqrt(sum(v * v for v in w.values()))

    def __bool__(self) -> bool:
        return bool(self.weights)

    def __eq__(self, other) -> bool:
        return isinstance(other, TermVector) and self.weights == other.weights

    def norm(self) -> float:
        return self._norm

    def dot(self, other: "TermVector") -> float:
        a, b = self.weights, other.weights
        if len(b) < len(a):
            a, b = b, a
        return sum(v * b[t] for t, v in a.items() if t in b)


def cosine(a: TermVector, b: TermVector) -> float:
    """Cosine similarity in [0, 1]; zero vectors compare as 0."""
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    sim = a.dot(b) / (na * nb)
    # guard against float drift outside [0, 1]
    return min(1.0, max(0.0, sim))


@dataclass(frozen=True)
class CorpusStats:
    """Document counts backing idf weighting: idf(t) = ln(N / df(t))."""

    n_documents: int
    df: Mapping[str, int] = field(default_factory=dict)

    def idf(self, term: str) -> float:
        d = self.df.get(term, 0)
        if d == 0:
            return 0.0
        return math.log(self.n_documents / d)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    df: dict[str, int] = {}
    for article in corpus.articles:
        terms = {t.text for s in article.sentences() for t in s.tokens}
        for t in terms:
            df[t] = df.get(t, 0) + 1
    return CorpusStats(len(corpus.articles), df)


def term_vector(sentences, weighting: str = "tf", stats: CorpusStats | None = None) -> TermVector:
    """Build a term vector over the given sentences.

    ``weighting="tf"`` uses raw counts; ``"tfidf"`` multiplies by
    ln(N/df) from ``stats`` (terms present in every document get 0).
    Empty input yields the zero vector.
    """
    counts: dict[str, float] = {}
    for s in sentences:
        for tok in s.tokens:
            counts[tok.text] = counts.get(tok.text, 0.0) + 1.0
    if weighting == "tf":
        return TermVector(counts)
    if weighting == "tfidf":
        if stats is None:
            raise ValueError("tfidf weighting requires corpus stats")
        return TermVector({t: c * stats.idf(t) for t, c in counts.items()})
    raise ValueError(f"unknown weighting {weighting!r}")
