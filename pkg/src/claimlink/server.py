"""Read-only HTTP API serving cluster annotations to the reader UI."""

from __future__ import annotations

import logging
import re

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .annotate import annotate_article
from .config import ServerConfig
from .errors import StoreCorruptionError, UnknownArticleError
from .store import ClusterStore

logger = logging.getLogger(__name__)

_ID_RE = re.compile(r"^[A-Za-z0-9._-]+$")


def _check_id(value: str, what: str):
    if not _ID_RE.fullmatch(value):
        raise HTTPException(status_code=400, detail=f"malformed {what}: {value!r}")


def create_app(store: ClusterStore, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="claimlink reading service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(StoreCorruptionError)
    async def _corrupt(request, exc):
        logger.error("store corruption: %s", exc)
        return JSONResponse(status_code=500, content={"detail": "cluster store corrupted"})

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/clusters")
    def clusters():
        return store.list_clusters()

    @app.get("/api/clusters/{cluster_id}/articles")
    def articles(cluster_id: str):
        _check_id(cluster_id, "cluster id")
        if not store.exists(cluster_id):
            raise HTTPException(status_code=404, detail=f"unknown cluster: {cluster_id}")
        doc = store.load(cluster_id)
        return [
            {
                "article_id": a.article_id,
                "url": a.url,
                "venue": a.venue,
                "title": a.title,
                "sentence_count": len(a.sentences),
            }
            for a in doc.cluster.articles
        ]

    @app.get("/api/clusters/{cluster_id}/articles/{article_id}")
    def annotated(cluster_id: str, article_id: str):
        _check_id(cluster_id, "cluster id")
        _check_id(article_id, "article id")
        if not store.exists(cluster_id):
            raise HTTPException(status_code=404, detail=f"unknown cluster: {cluster_id}")
        doc = store.load(cluster_id)
        if doc.annotations and article_id in doc.annotations:
            return doc.annotations[article_id]
        # fall back to computing from stored links, still read-only
        if doc.cluster.article(article_id) is None:
            raise HTTPException(status_code=404, detail=f"unknown article: {article_id}")
        try:
            return annotate_article(
                doc.cluster, doc.sentence_links or [], article_id
            ).to_dict()
        except UnknownArticleError as e:
            raise HTTPException(status_code=404, detail=str(e)) from e

    return app


def serve(store: ClusterStore, server_cfg: ServerConfig):
    """Blocking uvicorn server over the cluster store."""
    import uvicorn

    app = create_app(store, cors_origins=server_cfg.cors_origins)
    uvicorn.run(app, host=server_cfg.host, port=server_cfg.port, log_level="info")
