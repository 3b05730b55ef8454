"""newsynth: interactive synthesis of news overview articles.

Pipeline: ingest a corpus, mine and score subtopic labels, segment
articles into coherent blocks, rank blocks per subtopic, and assemble a
structured overview article, either in one click or steered through a
session.
"""

from .corpus import (
    Corpus,
    NewsArticle,
    Sentence,
    TermVector,
    Token,
    corpus_from_objects,
    cosine,
    ingest_corpus,
    term_vector,
)
from .rank import RankedBlock, assign_blocks, mmr_select, order_blocks, textrank
from .segment import TextBlock, segment_article, segment_corpus
from .subtopic import (
    CandidateLabel,
    FeatureVector,
    RegressionModel,
    SubtopicLabel,
    TrainingExample,
    extract_candidates,
    merge_labels,
    predict_scores,
    train,
)
from .synth import (
    PipelineConfig,
    Session,
    SynthesisArticle,
    choose_blocks,
    choose_labels,
    edit_final,
    run_pipeline,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "NewsArticle",
    "Sentence",
    "TermVector",
    "Token",
    "corpus_from_objects",
    "cosine",
    "ingest_corpus",
    "term_vector",
    "RankedBlock",
    "assign_blocks",
    "mmr_select",
    "order_blocks",
    "textrank",
    "TextBlock",
    "segment_article",
    "segment_corpus",
    "CandidateLabel",
    "FeatureVector",
    "RegressionModel",
    "SubtopicLabel",
    "TrainingExample",
    "extract_candidates",
    "merge_labels",
    "predict_scores",
    "train",
    "PipelineConfig",
    "Session",
    "SynthesisArticle",
    "choose_blocks",
    "choose_labels",
    "edit_final",
    "run_pipeline",
    "synthesize",
    "__version__",
]
