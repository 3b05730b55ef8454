"""Exception hierarchy shared across the pipeline and the HTTP service.

Every domain error carries a stable machine-readable ``code`` so the
service layer can map it onto structured error bodies without string
matching on messages.
"""

from __future__ import annotations


class NewsynthError(Exception):
    """Base class for all domain errors."""

    code = "error"


class SchemaError(NewsynthError):
    """A corpus or config line violated the expected schema."""

    code = "schema_error"

    def __init__(self, line: int, field: str, message: str = ""):
        self.line = line
        self.field = field
        detail = message or f"line {line}: bad or missing field {field!r}"
        super().__init__(detail)


class EmptyCorpusError(NewsynthError):
    code = "empty_corpus"


class DegenerateDataError(NewsynthError):
    """Training data cannot support a regression fit."""

    code = "degenerate_data"


class NoCandidatesError(NewsynthError):
    """Candidate extraction produced nothing under the current thresholds."""

    code = "no_candidates"

    def __init__(self, min_count_unigram: int, min_count_ngram: int):
        self.min_count_unigram = min_count_unigram
        self.min_count_ngram = min_count_ngram
        super().__init__(
            "no candidate labels survive extraction "
            f"(min-count unigram={min_count_unigram}, ngram={min_count_ngram})"
        )


class NoVerticesError(NewsynthError):
    code = "no_vertices"


class UnknownLabelError(NewsynthError):
    code = "unknown_label"

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unknown label: {label!r}")


class DuplicateLabelError(NewsynthError):
    code = "duplicate_label"

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"duplicate label: {label!r}")


class UnknownBlockError(NewsynthError):
    code = "unknown_block"

    def __init__(self, block_id: str):
        self.block_id = block_id
        super().__init__(f"unknown block: {block_id!r}")


class EditWithoutSelectionError(NewsynthError):
    code = "edit_without_selection"

    def __init__(self, block_id: str):
        self.block_id = block_id
        super().__init__(f"edit references unchosen block: {block_id!r}")


class NotSynthesizedError(NewsynthError):
    code = "not_synthesized"


class EmptySectionError(NewsynthError):
    code = "empty_section"

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"chosen subtopic {label!r} has no candidate blocks")


class UnknownMethodError(NewsynthError):
    code = "unknown_method"

    def __init__(self, method: str, unit: str):
        super().__init__(f"unsupported baseline: method={method!r} unit={unit!r}")


class InsufficientTopicsError(NewsynthError):
    code = "insufficient_topics"


class StageError(NewsynthError):
    """An interaction arrived at the wrong session stage."""

    code = "stage_violation"
