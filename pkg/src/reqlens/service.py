"""HTTP service exposing projects, documents, terms, conflicts and export.

State is held in memory, one knowledge base per project, guarded by a
per-project lock so concurrent requests against one project serialise.
The analyst UI is served as static files under /ui when a build of it is
present.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from reqlens.kb import (
    Conflict,
    KBError,
    KBNotFound,
    KBStateError,
    KBValueError,
    KnowledgeBase,
    TermEntry,
)
from reqlens.pipeline import PipelineConfig, PipelineError, load_config, register_document

def _ui_dist() -> Path:
    override = os.environ.get("REQLENS_UI_DIR")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"


class ServiceError(Exception):
    def __init__(self, status_code: int, message: str):
        super().__init__(message)
        self.status_code = status_code
        self.message = message


class _Store:
    """Project registry with per-project locks."""

    def __init__(self):
        self._lock = threading.Lock()
        self._projects: dict[str, tuple[KnowledgeBase, threading.Lock]] = {}

    def create(self, project_id: str) -> KnowledgeBase:
        kb = KnowledgeBase(project_id=project_id)
        with self._lock:
            if project_id in self._projects:
                raise ServiceError(409, f"project {project_id!r} already exists")
            self._projects[project_id] = (kb, threading.Lock())
        return kb

    def get(self, project_id: str) -> tuple[KnowledgeBase, threading.Lock]:
        with self._lock:
            entry = self._projects.get(project_id)
        if entry is None:
            raise ServiceError(404, f"unknown project {project_id!r}")
        return entry


class ProjectIn(BaseModel):
    project_id: str


class DocumentIn(BaseModel):
    title: str
    text: str


class ClassifyIn(BaseModel):
    type: str
    object_value: str | None = None


class ResolveIn(BaseModel):
    type: str


def _term_json(entry: TermEntry) -> dict:
    return {
        "value": entry.value,
        "display": entry.display,
        "sentence_indices": list(entry.sentence_indices),
        "status": entry.status,
        "claims": [{"type": c.type, "object_value": c.object_value} for c in entry.claims],
    }


def _conflict_json(conflict: Conflict) -> dict:
    return {
        "value": conflict.value,
        "types": list(conflict.types),
        "status": conflict.status,
        "resolution": conflict.resolution,
    }


def _project_json(kb: KnowledgeBase) -> dict:
    return {
        "project_id": kb.project_id,
        "documents": [
            {"doc_id": doc.doc_id, "title": doc.title, "sentence_count": len(doc.sentences)}
            for doc in kb.documents
        ],
        "sentence_count": kb.sentence_count,
        "term_count": len(kb.terms),
        "open_conflict_count": len(kb.open_conflicts()),
    }


def create_app(config: PipelineConfig | None = None) -> FastAPI:
    if config is None:
        config = load_config()
    app = FastAPI(title="reqlens", version="0.1.0")
    store = _Store()

    @app.exception_handler(ServiceError)
    async def _service_error(_, exc: ServiceError):
        return JSONResponse(status_code=exc.status_code, content={"detail": exc.message})

    @app.exception_handler(KBError)
    async def _kb_error(_, exc: KBError):
        if isinstance(exc, KBNotFound):
            status = 404
        elif isinstance(exc, KBStateError):
            status = 409
        else:
            status = 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.exception_handler(PipelineError)
    async def _pipeline_error(_, exc: PipelineError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/projects", status_code=201)
    def create_project(payload: ProjectIn):
        kb = store.create(payload.project_id)
        return _project_json(kb)

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        kb, lock = store.get(project_id)
        with lock:
            return _project_json(kb)

    @app.post("/projects/{project_id}/documents", status_code=201)
    def add_document(project_id: str, payload: DocumentIn):
        kb, lock = store.get(project_id)
        with lock:
            doc = register_document(kb, config, title=payload.title, body=payload.text)
            unparsed = [s.index for s in doc.sentences if s.tree is None]
            return {
                "doc_id": doc.doc_id,
                "title": doc.title,
                "sentence_count": len(doc.sentences),
                "unparsed_indices": unparsed,
            }

    @app.get("/projects/{project_id}/terms")
    def list_terms(project_id: str, status: str | None = None):
        kb, lock = store.get(project_id)
        with lock:
            return {"terms": [_term_json(t) for t in kb.terms_by_status(status)]}

    @app.get("/projects/{project_id}/sentences/{index}/tree")
    def sentence_tree(project_id: str, index: int):
        kb, lock = store.get(project_id)
        with lock:
            record = kb.sentence(index)
            return {
                "index": record.index,
                "doc_id": record.doc_id,
                "text": record.text,
                "tokens": list(record.tokens),
                "tree": record.tree,
                "tree_count": record.tree_count,
            }

    @app.post("/projects/{project_id}/terms/{value}/filter")
    def filter_term(project_id: str, value: str):
        kb, lock = store.get(project_id)
        with lock:
            return _term_json(kb.filter_term(value))

    @app.post("/projects/{project_id}/terms/{value}/unfilter")
    def unfilter_term(project_id: str, value: str):
        kb, lock = store.get(project_id)
        with lock:
            return _term_json(kb.unfilter_term(value))

    @app.post("/projects/{project_id}/terms/{value}/classify")
    def classify_term(project_id: str, value: str, payload: ClassifyIn):
        kb, lock = store.get(project_id)
        with lock:
            return _term_json(kb.classify_term(value, payload.type, payload.object_value))

    @app.post("/projects/{project_id}/terms/{value}/declassify")
    def declassify_term(project_id: str, value: str):
        kb, lock = store.get(project_id)
        with lock:
            return _term_json(kb.declassify_term(value))

    @app.get("/projects/{project_id}/conflicts")
    def list_conflicts(project_id: str):
        kb, lock = store.get(project_id)
        with lock:
            return {"conflicts": [_conflict_json(c) for c in kb.conflicts()]}

    @app.post("/projects/{project_id}/conflicts/{value}/resolve")
    def resolve_conflict(project_id: str, value: str, payload: ResolveIn):
        kb, lock = store.get(project_id)
        with lock:
            return _conflict_json(kb.resolve_conflict(value, payload.type))

    @app.get("/projects/{project_id}/export.sexpr")
    def export_sexpr(project_id: str):
        kb, lock = store.get(project_id)
        with lock:
            return PlainTextResponse(kb.export_sexpr())

    ui_dist = _ui_dist()
    if ui_dist.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dist), html=True), name="ui")

    return app
