"""Session-based HTTP API over the pipeline, versioned under /v1.

Error bodies always carry {"code", "message", "detail"}; domain errors
map onto 400 (input schema), 404 (missing resource), 409 (stage
violation) or 422 (domain rule) and anything unexpected onto a
structured 500.
"""

from __future__ import annotations

import threading
import time

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import synth
from .corpus import corpus_from_objects, ingest_corpus
from .errors import (
    EmptyCorpusError,
    NewsynthError,
    SchemaError,
    StageError,
    UnknownLabelError,
)
from .segment import block_text
from .store import SessionNotFoundError, SessionStore, new_session_id
from .subtopic.regression import load_model
from .synth import PipelineConfig, render_markdown, run_pipeline

_STATUS_BY_CODE = {
    "schema_error": 400,
    "empty_corpus": 400,
    "session_not_found": 404,
    "not_synthesized": 409,
    "stage_violation": 409,
}


def _status_for(exc: NewsynthError) -> int:
    return _STATUS_BY_CODE.get(exc.code, 422)


def _error_body(code: str, message: str, detail=None) -> dict:
    return {"code": code, "message": message, "detail": detail}


class CreateSessionRequest(BaseModel):
    topic_name: str
    corpus_path: str | None = None
    corpus: list[dict] | None = None
    config: dict | None = None


class ChooseLabelsRequest(BaseModel):
    labels: list[str]


class ChooseBlocksRequest(BaseModel):
    block_ids: list[str]
    edits: dict[str, str] | None = None


class DraftRequest(BaseModel):
    text: str


def _label_view(label) -> dict:
    return {
        "surface": label.surface,
        "tokens": list(label.tokens),
        "score": label.score,
        "tf": label.tf,
    }


def _block_view(session, rb) -> dict:
    return {
        "block_id": rb.block.block_id,
        "text": block_text(session.corpus, rb.block),
        "ws": rb.ws,
        "mmr_rank": rb.mmr_rank,
        "article_id": rb.block.article_id,
        "sentence_range": [rb.block.start, rb.block.end],
        "published_at": rb.block.published_at,
    }


def _session_view(session) -> dict:
    return {
        "session_id": session.session_id,
        "topic_name": session.corpus.topic_name,
        "stage": session.stage,
        "labels": [_label_view(l) for l in session.labels],
        "chosen_labels": list(session.chosen_labels),
        "chosen_blocks": {k: list(v) for k, v in session.chosen_blocks.items()},
        "edits": {k: dict(v) for k, v in session.edits.items()},
        "final_draft": session.final_draft,
        "created_at": session.created_at,
        "updated_at": session.updated_at,
    }


def _export_payload(session) -> dict:
    return {
        "topic_name": session.corpus.topic_name,
        "draft": session.final_draft,
        "article": synth.article_to_dict(session.article),
    }


def create_app(
    store_root,
    model_path,
    default_config: PipelineConfig | None = None,
    max_concurrent_pipelines: int = 4,
) -> FastAPI:
    app = FastAPI(title="newsynth", version="0.1.0")
    store = SessionStore(store_root)
    model = load_model(model_path)
    base_config = default_config or PipelineConfig()
    pipeline_slots = threading.BoundedSemaphore(max_concurrent_pipelines)

    @app.exception_handler(NewsynthError)
    async def domain_error(request: Request, exc: NewsynthError):
        return JSONResponse(
            status_code=_status_for(exc),
            content=_error_body(exc.code, str(exc)),
        )

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content=_error_body("bad_request", "invalid request body", exc.errors()),
        )

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content=_error_body("internal_error", f"{type(exc).__name__}: {exc}"),
        )

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/sessions")
    def create_session(req: CreateSessionRequest):
        if (req.corpus_path is None) == (req.corpus is None):
            raise SchemaError(0, "corpus", "provide exactly one of corpus_path or corpus")
        try:
            config = (
                PipelineConfig.from_dict(req.config) if req.config is not None else base_config
            )
        except ValueError as exc:
            raise SchemaError(0, "config", f"bad config: {exc}") from exc
        try:
            if req.corpus_path is not None:
                corpus = ingest_corpus(req.corpus_path, req.topic_name, config.max_articles)
            else:
                corpus = corpus_from_objects(req.corpus, req.topic_name, config.max_articles)
        except FileNotFoundError as exc:
            raise EmptyCorpusError(f"corpus file not found: {exc}") from exc
        with pipeline_slots:
            session = run_pipeline(
                corpus, model, config, session_id=new_session_id(), now=time.time()
            )
        store.create(session)
        return {
            "session_id": session.session_id,
            "stage": session.stage,
            "labels": [_label_view(l) for l in session.labels],
        }

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_view(store.load(session_id))

    @app.get("/v1/sessions/{session_id}/labels/{label}/blocks")
    def get_blocks(session_id: str, label: str):
        session = store.load(session_id)
        try:
            session.label_by_surface(label)
        except UnknownLabelError as exc:
            return JSONResponse(status_code=404, content=_error_body(exc.code, str(exc)))
        ranked = session.ranked.get(label, [])
        return {
            "label": label,
            "blocks": [_block_view(session, rb) for rb in ranked],
        }

    @app.put("/v1/sessions/{session_id}/labels")
    def put_labels(session_id: str, req: ChooseLabelsRequest):
        session = store.mutate(
            session_id, "choose_labels", {"labels": req.labels, "now": time.time()}
        )
        return _session_view(session)

    @app.put("/v1/sessions/{session_id}/labels/{label}/blocks")
    def put_blocks(session_id: str, label: str, req: ChooseBlocksRequest):
        session = store.mutate(
            session_id,
            "choose_blocks",
            {
                "label": label,
                "block_ids": req.block_ids,
                "edits": req.edits or {},
                "now": time.time(),
            },
        )
        return _session_view(session)

    @app.post("/v1/sessions/{session_id}/synthesize")
    def post_synthesize(session_id: str):
        session = store.mutate(session_id, "synthesize", {"now": time.time()})
        return {
            "session_id": session.session_id,
            "stage": session.stage,
            "article": synth.article_to_dict(session.article),
            "markdown": render_markdown(session.article),
        }

    @app.put("/v1/sessions/{session_id}/draft")
    def put_draft(session_id: str, req: DraftRequest):
        session = store.mutate(
            session_id, "edit_final", {"text": req.text, "now": time.time()}
        )
        return _session_view(session)

    @app.get("/v1/sessions/{session_id}/export")
    def export(session_id: str, format: str = "md"):
        session = store.load(session_id)
        if session.article is None:
            raise StageError("nothing to export: synthesize has not run")
        if format == "md":
            return PlainTextResponse(session.final_draft, media_type="text/markdown")
        if format == "json":
            return _export_payload(session)
        raise SchemaError(0, "format", "format must be 'md' or 'json'")

    return app


def create_app_from_env() -> FastAPI:
    """Factory for `uvicorn --factory`; reads NEWSYNTH_STORE and NEWSYNTH_MODEL."""
    import os

    store_root = os.environ["NEWSYNTH_STORE"]
    model_path = os.environ["NEWSYNTH_MODEL"]
    config_path = os.environ.get("NEWSYNTH_CONFIG")
    config = PipelineConfig.load(config_path) if config_path else None
    return create_app(store_root, model_path, config)
