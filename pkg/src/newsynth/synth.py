"""Session state machine and final overview-article assembly.

A session is created by running the full pipeline over a corpus; users
may then choose and reorder labels, choose and edit blocks per label,
synthesize, and edit the final draft.  Every step is optional: with no
interaction, synthesize picks the top-scored labels and fills each
section with MMR-ranked blocks up to an even share of the word budget.
"""

from __future__ import annotations

import json
import re
import secrets
import time
from dataclasses import dataclass, field

from .corpus import Corpus
from .errors import (
    DuplicateLabelError,
    EditWithoutSelectionError,
    EmptySectionError,
    NoCandidatesError,
    NotSynthesizedError,
    UnknownBlockError,
    UnknownLabelError,
)
from .rank import RankedBlock, order_blocks, rank_blocks_for_label
from .segment import TextBlock, block_text, segment_corpus
from .subtopic.candidates import extract_candidates
from .subtopic.features import FeatureExtractor
from .subtopic.lda import fit_topic_model
from .subtopic.merge import SubtopicLabel, merge_labels
from .subtopic.ngrams import CorpusNgramIndex
from .subtopic.regression import RegressionModel, predict_scores

CONFIG_FORMAT_VERSION = 1

STAGE_LABELS_READY = "LABELS_READY"
STAGE_BLOCKS_READY = "BLOCKS_READY"
STAGE_SYNTHESIZED = "SYNTHESIZED"
_STAGE_ORDER = [STAGE_LABELS_READY, STAGE_BLOCKS_READY, STAGE_SYNTHESIZED]

_CJK_RE = re.compile(r"[一-鿿㐀-䶿豈-﫿]")


def count_words(text: str) -> int:
    """CJK characters count one apiece; other scripts count whitespace tokens."""
    cjk = len(_CJK_RE.findall(text))
    rest = _CJK_RE.sub(" ", text)
    return cjk + len(rest.split())


@dataclass(frozen=True)
class PipelineConfig:
    max_articles: int = 100
    min_count_unigram: int = 25
    min_count_ngram: int = 10
    top_k: int = 20
    cos_threshold: float = 0.65
    window_w: int = 2
    depth_cutoff_k: float = 0.5
    damping: float = 0.85
    tol: float = 1e-6
    max_iter: int = 1000
    mmr_lambda: float = 0.7
    target_words: int = 1000
    default_section_count: int = 5
    lda_topics: int = 10
    lda_iterations: int = 200
    seed: int = 0

    def __post_init__(self):
        checks = [
            self.max_articles >= 1,
            self.min_count_unigram >= 1,
            self.min_count_ngram >= 1,
            self.top_k >= 1,
            0.0 <= self.cos_threshold <= 1.0,
            self.window_w >= 1,
            self.depth_cutoff_k >= 0.0,
            0.0 < self.damping < 1.0,
            self.tol > 0.0,
            self.max_iter >= 1,
            0.0 <= self.mmr_lambda <= 1.0,
            self.target_words >= 1,
            self.default_section_count >= 1,
            self.lda_topics >= 1,
            self.lda_iterations >= 1,
        ]
        if not all(checks):
            raise ValueError("pipeline config value out of range")

    def to_dict(self) -> dict:
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d["version"] = CONFIG_FORMAT_VERSION
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineConfig":
        d = dict(d)
        version = d.pop("version", CONFIG_FORMAT_VERSION)
        if version != CONFIG_FORMAT_VERSION:
            raise ValueError(f"unsupported config version: {version!r}")
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class Paragraph:
    """One rendered paragraph, traceable to the block it came from."""

    text: str
    article_id: str
    start: int
    end: int
    block_id: str
    edited: bool


@dataclass(frozen=True)
class SubtopicSection:
    label: SubtopicLabel | None
    blocks: tuple[RankedBlock, ...]
    paragraphs: tuple[Paragraph, ...]


@dataclass(frozen=True)
class SynthesisArticle:
    topic_name: str
    sections: tuple[SubtopicSection, ...]
    word_count: int


@dataclass
class Session:
    session_id: str
    corpus: Corpus
    config: PipelineConfig
    labels: list[SubtopicLabel]
    blocks: list[TextBlock]
    ranked: dict[str, list[RankedBlock]]
    stage: str = STAGE_LABELS_READY
    chosen_labels: list[str] = field(default_factory=list)
    chosen_blocks: dict[str, list[str]] = field(default_factory=dict)
    edits: dict[str, dict[str, str]] = field(default_factory=dict)
    final_draft: str | None = None
    article: SynthesisArticle | None = None
    created_at: float = 0.0
    updated_at: float = 0.0

    def label_by_surface(self, surface: str) -> SubtopicLabel:
        for label in self.labels:
            if label.surface == surface:
                return label
        raise UnknownLabelError(surface)

    def block_by_id(self, block_id: str) -> TextBlock:
        for b in self.blocks:
            if b.block_id == block_id:
                return b
        raise UnknownBlockError(block_id)

    def _advance(self, stage: str) -> None:
        if _STAGE_ORDER.index(stage) > _STAGE_ORDER.index(self.stage):
            self.stage = stage

    def _touch(self, now: float | None) -> None:
        t = time.time() if now is None else now
        # strictly increasing so "last write wins" is observable
        self.updated_at = max(t, self.updated_at + 1e-6)


def run_pipeline(
    corpus: Corpus,
    model: RegressionModel,
    config: PipelineConfig | None = None,
    session_id: str | None = None,
    now: float | None = None,
) -> Session:
    """Run label mining, segmentation, and per-label ranking.

    Returns a session at LABELS_READY holding everything the interaction
    stages need.  Raises NoCandidatesError when the corpus is too small
    for the extraction thresholds.
    """
    cfg = config or PipelineConfig()
    index = CorpusNgramIndex(corpus)
    candidates = extract_candidates(
        corpus, cfg.min_count_unigram, cfg.min_count_ngram, index
    )
    if not candidates:
        raise NoCandidatesError(cfg.min_count_unigram, cfg.min_count_ngram)

    topic_model = fit_topic_model(
        corpus, n_topics=cfg.lda_topics, iterations=cfg.lda_iterations, seed=cfg.seed
    )
    FeatureExtractor(corpus, topic_model, index).compute_all(candidates)
    ranked_candidates = predict_scores(model, candidates)
    labels = merge_labels(ranked_candidates, corpus, cfg.top_k, cfg.cos_threshold)

    blocks = segment_corpus(corpus, cfg.window_w, cfg.depth_cutoff_k)
    ranked = {
        label.surface: rank_blocks_for_label(
            corpus,
            blocks,
            label,
            damping=cfg.damping,
            tol=cfg.tol,
            max_iter=cfg.max_iter,
            mmr_lambda=cfg.mmr_lambda,
        )
        for label in labels
    }

    t = time.time() if now is None else now
    return Session(
        session_id=session_id or secrets.token_hex(16),
        corpus=corpus,
        config=cfg,
        labels=labels,
        blocks=blocks,
        ranked=ranked,
        created_at=t,
        updated_at=t,
    )


def choose_labels(session: Session, ordered_labels: list[str], now: float | None = None) -> Session:
    """Record the user's label selection; synthesis follows this order exactly."""
    if not ordered_labels:
        raise ValueError("label selection must be non-empty")
    seen = set()
    for surface in ordered_labels:
        if surface in seen:
            raise DuplicateLabelError(surface)
        seen.add(surface)
        session.label_by_surface(surface)
    session.chosen_labels = list(ordered_labels)
    session._advance(STAGE_BLOCKS_READY)
    session._touch(now)
    return session


def choose_blocks(
    session: Session,
    label_surface: str,
    block_ids: list[str],
    edits: dict[str, str] | None = None,
    now: float | None = None,
) -> Session:
    """Override the default block selection for one label.

    Block ids may come from the label's candidates or be force-assigned
    from anywhere in the segmented corpus.  Edits replace rendering only
    and must reference chosen blocks.
    """
    session.label_by_surface(label_surface)
    candidate_ids = {rb.block.block_id for rb in session.ranked.get(label_surface, [])}
    for bid in block_ids:
        if bid not in candidate_ids:
            session.block_by_id(bid)  # force-assign path; raises UnknownBlockError
    edits = dict(edits or {})
    chosen = set(block_ids)
    for bid in edits:
        if bid not in chosen:
            raise EditWithoutSelectionError(bid)
    session.chosen_blocks[label_surface] = list(block_ids)
    if edits:
        session.edits[label_surface] = edits
    else:
        session.edits.pop(label_surface, None)
    session._advance(STAGE_BLOCKS_READY)
    session._touch(now)
    return session


def _paragraph(session: Session, label_surface: str, rb: RankedBlock) -> Paragraph:
    block = rb.block
    edit = session.edits.get(label_surface, {}).get(block.block_id)
    text = edit if edit is not None else block_text(session.corpus, block)
    return Paragraph(
        text=text,
        article_id=block.article_id,
        start=block.start,
        end=block.end,
        block_id=block.block_id,
        edited=edit is not None,
    )


def _default_section_blocks(
    session: Session, label_surface: str, budget: float
) -> list[RankedBlock]:
    """MMR-ranked blocks until the word budget is reached (at least one)."""
    chosen: list[RankedBlock] = []
    words = 0
    for rb in session.ranked[label_surface]:
        if chosen and words >= budget:
            break
        chosen.append(rb)
        words += count_words(block_text(session.corpus, rb.block))
    ordered = order_blocks([rb.block for rb in chosen])
    by_id = {rb.block.block_id: rb for rb in chosen}
    return [by_id[b.block_id] for b in ordered]


def synthesize(session: Session, now: float | None = None) -> SynthesisArticle:
    """Assemble the overview article from the session's current choices.

    User-chosen labels and blocks are honored verbatim; otherwise the
    top-scored labels that have candidate blocks fill
    ``default_section_count`` sections, each up to an even share of
    ``target_words``.  A user-chosen label without any blocks raises
    EmptySectionError rather than being dropped silently.
    """
    cfg = session.config
    if session.chosen_labels:
        chosen = list(session.chosen_labels)
        for surface in chosen:
            explicitly_empty = surface in session.chosen_blocks and not session.chosen_blocks[surface]
            has_blocks = session.chosen_blocks.get(surface) or session.ranked.get(surface)
            if explicitly_empty or not has_blocks:
                raise EmptySectionError(surface)
    else:
        with_blocks = [
            l.surface
            for l in session.labels
            if session.ranked.get(l.surface) or session.chosen_blocks.get(l.surface)
        ]
        chosen = with_blocks[: cfg.default_section_count]
        if not chosen:
            raise EmptySectionError(session.labels[0].surface if session.labels else "")

    budget = cfg.target_words / len(chosen)
    sections = []
    total_words = 0
    for surface in chosen:
        label = session.label_by_surface(surface)
        if surface in session.chosen_blocks:
            ranked_by_id = {rb.block.block_id: rb for rb in session.ranked.get(surface, [])}
            blocks = []
            for pos, bid in enumerate(session.chosen_blocks[surface]):
                rb = ranked_by_id.get(bid)
                if rb is None:
                    rb = RankedBlock(session.block_by_id(bid), 0.0, pos)
                blocks.append(rb)
        else:
            blocks = _default_section_blocks(session, surface, budget)
        paragraphs = tuple(_paragraph(session, surface, rb) for rb in blocks)
        total_words += sum(count_words(p.text) for p in paragraphs)
        sections.append(SubtopicSection(label, tuple(blocks), paragraphs))

    article = SynthesisArticle(session.corpus.topic_name, tuple(sections), total_words)
    session.article = article
    session.final_draft = render_markdown(article)
    session._advance(STAGE_SYNTHESIZED)
    session._touch(now)
    return article


def edit_final(session: Session, text: str, now: float | None = None) -> Session:
    """Replace the final draft after synthesis; last write wins."""
    if session.stage != STAGE_SYNTHESIZED:
        raise NotSynthesizedError("synthesize must run before editing the draft")
    session.final_draft = text
    session._touch(now)
    return session


def render_markdown(article: SynthesisArticle) -> str:
    lines = [f"# {article.topic_name}", ""]
    for section in article.sections:
        if section.label is not None:
            lines.append(f"## {section.label.surface}")
            lines.append("")
        for p in section.paragraphs:
            lines.append(p.text)
            lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def article_to_dict(article: SynthesisArticle) -> dict:
    return {
        "topic_name": article.topic_name,
        "word_count": article.word_count,
        "sections": [
            {
                "label": None if s.label is None else s.label.surface,
                "label_tokens": None if s.label is None else list(s.label.tokens),
                "score": None if s.label is None else s.label.score,
                "paragraphs": [
                    {
                        "text": p.text,
                        "article_id": p.article_id,
                        "sentence_range": [p.start, p.end],
                        "block_id": p.block_id,
                        "edited": p.edited,
                    }
                    for p in s.paragraphs
                ],
                "blocks": [
                    {"block_id": rb.block.block_id, "ws": rb.ws, "mmr_rank": rb.mmr_rank}
                    for rb in s.blocks
                ],
            }
            for s in article.sections
        ],
    }


def _article_from_dict(d: dict, session: "Session") -> SynthesisArticle:
    sections = []
    for s in d["sections"]:
        label = None if s["label"] is None else session.label_by_surface(s["label"])
        blocks = tuple(
            RankedBlock(session.block_by_id(b["block_id"]), b["ws"], b["mmr_rank"])
            for b in s["blocks"]
        )
        paragraphs = tuple(
            Paragraph(
                text=p["text"],
                article_id=p["article_id"],
                start=p["sentence_range"][0],
                end=p["sentence_range"][1],
                block_id=p["block_id"],
                edited=p["edited"],
            )
            for p in s["paragraphs"]
        )
        sections.append(SubtopicSection(label, blocks, paragraphs))
    return SynthesisArticle(d["topic_name"], tuple(sections), d["word_count"])


def session_to_dict(session: Session) -> dict:
    return {
        "session_id": session.session_id,
        "corpus": session.corpus.to_dict(),
        "config": session.config.to_dict(),
        "labels": [
            {"tokens": list(l.tokens), "surface": l.surface, "score": l.score, "tf": l.tf}
            for l in session.labels
        ],
        "blocks": [
            {
                "article_id": b.article_id,
                "start": b.start,
                "end": b.end,
                "published_at": b.published_at,
            }
            for b in session.blocks
        ],
        "ranked": {
            surface: [
                {"block_id": rb.block.block_id, "ws": rb.ws, "mmr_rank": rb.mmr_rank}
                for rb in rbs
            ]
            for surface, rbs in session.ranked.items()
        },
        "stage": session.stage,
        "chosen_labels": list(session.chosen_labels),
        "chosen_blocks": {k: list(v) for k, v in session.chosen_blocks.items()},
        "edits": {k: dict(v) for k, v in session.edits.items()},
        "final_draft": session.final_draft,
        "article": None if session.article is None else article_to_dict(session.article),
        "created_at": session.created_at,
        "updated_at": session.updated_at,
    }


def session_from_dict(d: dict) -> Session:
    corpus = Corpus.from_dict(d["corpus"])
    labels = [
        SubtopicLabel(tuple(l["tokens"]), l["surface"], l["score"], l["tf"])
        for l in d["labels"]
    ]
    blocks = [
        TextBlock(b["article_id"], b["start"], b["end"], b["published_at"])
        for b in d["blocks"]
    ]
    by_id = {b.block_id: b for b in blocks}
    ranked = {
        surface: [RankedBlock(by_id[r["block_id"]], r["ws"], r["mmr_rank"]) for r in rbs]
        for surface, rbs in d["ranked"].items()
    }
    session = Session(
        session_id=d["session_id"],
        corpus=corpus,
        config=PipelineConfig.from_dict(d["config"]),
        labels=labels,
        blocks=blocks,
        ranked=ranked,
        stage=d["stage"],
        chosen_labels=list(d["chosen_labels"]),
        chosen_blocks={k: list(v) for k, v in d["chosen_blocks"].items()},
        edits={k: dict(v) for k, v in d["edits"].items()},
        final_draft=d["final_draft"],
        created_at=d["created_at"],
        updated_at=d["updated_at"],
    )
    if d.get("article") is not None:
        session.article = _article_from_dict(d["article"], session)
    return session
