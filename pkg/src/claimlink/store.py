"""File-backed cluster store: one self-contained JSON document per cluster,
stage outputs included, written with atomic replace."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .annotate import AnnotatedArticle
from .claims import Claim
from .corpus import ArticleCluster, FetchFailure
from .errors import StoreCorruptionError
from .nli import ClaimLink, SentenceLink
from .pairfilter import CandidatePair

DATA_DIR_ENV = "CLAIMLINK_DATA_DIR"
DEFAULT_DATA_DIR = "data"


def resolve_data_dir(cli_value: str | None = None) -> Path:
    """CLI flag wins over the environment variable, which wins over ./data."""
    if cli_value:
        return Path(cli_value)
    return Path(os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR))


@dataclass
class ClusterDocument:
    """A cluster plus whatever pipeline stages have run on it."""

    cluster: ArticleCluster
    fetch_failures: list[FetchFailure] = field(default_factory=list)
    claims: list[Claim] | None = None
    candidates: list[CandidatePair] | None = None
    links: list[ClaimLink] | None = None
    sentence_links: list[SentenceLink] | None = None
    annotations: dict[str, dict] | None = None  # article_id -> AnnotatedArticle dict

    def to_dict(self) -> dict:
        doc = self.cluster.to_dict()
        doc["fetch_failures"] = [f.to_dict() for f in self.fetch_failures]
        if self.claims is not None:
            doc["claims"] = [c.to_dict() for c in self.claims]
        if self.candidates is not None:
            doc["candidates"] = [p.to_dict() for p in self.candidates]
        if self.links is not None:
            doc["links"] = [l.to_dict() for l in self.links]
        if self.sentence_links is not None:
            doc["sentence_links"] = [s.to_dict() for s in self.sentence_links]
        if self.annotations is not None:
            doc["annotations"] = self.annotations
        return doc

    @classmethod
    def from_dict(cls, raw: dict) -> "ClusterDocument":
        return cls(
            cluster=ArticleCluster.from_dict(raw),
            fetch_failures=[FetchFailure.from_dict(f) for f in raw.get("fetch_failures", [])],
            claims=(
                [Claim.from_dict(c) for c in raw["claims"]] if "claims" in raw else None
            ),
            candidates=(
                [CandidatePair.from_dict(p) for p in raw["candidates"]]
                if "candidates" in raw
                else None
            ),
            links=([ClaimLink.from_dict(l) for l in raw["links"]] if "links" in raw else None),
            sentence_links=(
                [SentenceLink.from_dict(s) for s in raw["sentence_links"]]
                if "sentence_links" in raw
                else None
            ),
            annotations=raw.get("annotations"),
        )

    def set_annotations(self, annotated: dict[str, AnnotatedArticle]):
        self.annotations = {aid: a.to_dict() for aid, a in annotated.items()}


class ClusterStore:
    """Single-writer, multi-reader store under <data_dir>/clusters/."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)

    @property
    def clusters_dir(self) -> Path:
        return self.data_dir / "clusters"

    def path(self, cluster_id: str) -> Path:
        return self.clusters_dir / f"{cluster_id}.json"

    def exists(self, cluster_id: str) -> bool:
        return self.path(cluster_id).is_file()

    def save(self, doc: ClusterDocument) -> Path:
        doc.cluster.validate()
        target = self.path(doc.cluster.cluster_id)
        target.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(doc.to_dict(), indent=2, ensure_ascii=False) + "\n"
        fd, tmp_name = tempfile.mkstemp(
            dir=target.parent, prefix=f".{doc.cluster.cluster_id}.", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp_name, target)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        return target

    def load(self, cluster_id: str) -> ClusterDocument:
        path = self.path(cluster_id)
        if not path.is_file():
            raise FileNotFoundError(f"no stored cluster '{cluster_id}' at {path}")
        try:
            raw = json.loads(path.read_text("utf-8"))
            return ClusterDocument.from_dict(raw)
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise StoreCorruptionError(f"cluster file {path} is corrupt: {e}") from e

    def list_clusters(self) -> list[dict]:
        """Summaries for every stored cluster, sorted by cluster id."""
        if not self.clusters_dir.is_dir():
            return []
        out = []
        for path in sorted(self.clusters_dir.glob("*.json")):
            doc = self.load(path.stem)
            out.append(
                {
                    "cluster_id": doc.cluster.cluster_id,
                    "story_title": doc.cluster.story_title,
                    "article_count": len(doc.cluster.articles),
                }
            )
        return out
