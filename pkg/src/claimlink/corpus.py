"""Article clusters: ingestion from manifests or URLs, body extraction,
sentence segmentation."""

from __future__ import annotations

import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import lru_cache
from importlib import resources
from pathlib import Path
from urllib.parse import urlparse

import requests

from .errors import AllArticlesFailedError, EmptyDocumentError, ManifestError
from .htmltext import extract_body

logger = logging.getLogger(__name__)

FETCH_TIMEOUT = 15.0
_USER_AGENT = "claimlink/0.1 (+article cluster ingestion)"


@dataclass(frozen=True)
class Sentence:
    sentence_index: int
    span_start: int
    span_end: int
    text: str

    def to_dict(self) -> dict:
        return {
            "sentence_index": self.sentence_index,
            "span_start": self.span_start,
            "span_end": self.span_end,
            "text": self.text,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Sentence":
        return cls(d["sentence_index"], d["span_start"], d["span_end"], d["text"])


@dataclass
class Article:
    article_id: str
    url: str
    venue: str
    title: str
    body: str
    sentences: list[Sentence] = field(default_factory=list)

    def validate(self):
        prev_end = 0
        for i, s in enumerate(self.sentences):
            if s.sentence_index != i:
                raise ValueError(f"{self.article_id}: sentence index {s.sentence_index} != {i}")
            if not (0 <= s.span_start < s.span_end <= len(self.body)):
                raise ValueError(f"{self.article_id}: bad span [{s.span_start},{s.span_end})")
            if s.span_start < prev_end:
                raise ValueError(f"{self.article_id}: spans overlap or are not increasing")
            if self.body[s.span_start : s.span_end] != s.text:
                raise ValueError(f"{self.article_id}: sentence text does not match body span")
            if not s.text.strip():
                raise ValueError(f"{self.article_id}: empty sentence text")
            prev_end = s.span_end

    def to_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "url": self.url,
            "venue": self.venue,
            "title": self.title,
            "body": self.body,
            "sentences": [s.to_dict() for s in self.sentences],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Article":
        return cls(
            article_id=d["article_id"],
            url=d["url"],
            venue=d["venue"],
            title=d["title"],
            body=d["body"],
            sentences=[Sentence.from_dict(s) for s in d["sentences"]],
        )


@dataclass
class ArticleCluster:
    cluster_id: str
    story_title: str
    articles: list[Article]
    created_at: datetime

    def validate(self):
        if not self.articles:
            raise ValueError("cluster must contain at least one article")
        ids = [a.article_id for a in self.articles]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate article ids in cluster")
        for a in self.articles:
            a.validate()

    def article(self, article_id: str) -> Article | None:
        for a in self.articles:
            if a.article_id == article_id:
                return a
        return None

    def to_dict(self) -> dict:
        return {
            "cluster_id": self.cluster_id,
            "story_title": self.story_title,
            "created_at": _format_ts(self.created_at),
            "articles": [a.to_dict() for a in self.articles],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArticleCluster":
        return cls(
            cluster_id=d["cluster_id"],
            story_title=d["story_title"],
            articles=[Article.from_dict(a) for a in d["articles"]],
            created_at=_parse_ts(d["created_at"]),
        )


@dataclass(frozen=True)
class FetchFailure:
    url: str
    reason: str

    def to_dict(self) -> dict:
        return {"url": self.url, "reason": self.reason}

    @classmethod
    def from_dict(cls, d: dict) -> "FetchFailure":
        return cls(d["url"], d["reason"])


def _format_ts(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def _parse_ts(raw: str) -> datetime:
    return datetime.fromisoformat(raw.replace("Z", "+00:00"))


# --- sentence segmentation -------------------------------------------------

# terminal punctuation, optional closing quotes/brackets, whitespace,
# then an uppercase letter or opening quote starts the next sentence
_BOUNDARY_RE = re.compile(
    "([.!?]+[\"'”’)\\]]*)(\\s+)(?=[\"'“‘(\\[]?[A-Z])"
)
_PARAGRAPH_RE = re.compile(r"\n\s*\n")
_LAST_TOKEN_RE = re.compile(r"[\w.’']*$")


@lru_cache(maxsize=1)
def abbreviations() -> frozenset[str]:
    """Sentence-internal abbreviations shipped as a package asset."""
    data = resources.files("claimlink").joinpath("assets/abbreviations.txt").read_text("utf-8")
    return frozenset(w.strip() for w in data.splitlines() if w.strip())


def _protected(text: str, punct_start: int, punct: str) -> bool:
    """True when the terminal punctuation belongs to an abbreviation or initial."""
    if not punct.startswith("."):
        return False
    token = _LAST_TOKEN_RE.search(text[:punct_start]).group(0) + "."
    if token in abbreviations():
        return True
    # single-letter initials: "John F. Kennedy"
    return bool(re.fullmatch(r"[A-Za-z]\.", token))


def _trimmed_span(body: str, start: int, end: int) -> tuple[int, int] | None:
    while start < end and body[start].isspace():
        start += 1
    while end > start and body[end - 1].isspace():
        end -= 1
    if start >= end:
        return None
    return start, end


def segment_sentences(body: str) -> list[Sentence]:
    """Rule-based sentence splitting with character spans into `body`.

    Splits on . ! ? followed by whitespace and an uppercase/quote opener,
    protected by the abbreviation list and single-letter initials; blank
    lines are hard boundaries. Text without terminal punctuation comes back
    as a single sentence.
    """
    cut_points: list[tuple[int, int]] = []  # (end of sentence, start of next)
    for m in _BOUNDARY_RE.finditer(body):
        if _protected(body, m.start(1), m.group(1)):
            continue
        cut_points.append((m.end(1), m.end(2)))
    for m in _PARAGRAPH_RE.finditer(body):
        cut_points.append((m.start(), m.end()))
    cut_points.sort()

    sentences: list[Sentence] = []
    start = 0
    for end, next_start in cut_points:
        if end <= start:
            continue
        span = _trimmed_span(body, start, end)
        if span:
            sentences.append(
                Sentence(len(sentences), span[0], span[1], body[span[0] : span[1]])
            )
        start = next_start
    span = _trimmed_span(body, start, len(body))
    if span:
        sentences.append(Sentence(len(sentences), span[0], span[1], body[span[0] : span[1]]))
    return sentences


# --- manifest ingestion ------------------------------------------------------


@dataclass
class Manifest:
    story_title: str
    urls: list[str] = field(default_factory=list)
    html_files: list[Path] = field(default_factory=list)
    cluster_id: str | None = None
    created_at: datetime | None = None

    @classmethod
    def load(cls, path: str | Path) -> "Manifest":
        path = Path(path)
        try:
            raw = json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ManifestError(f"cannot read manifest {path}: {e}") from e
        if not isinstance(raw, dict):
            raise ManifestError("manifest must be a JSON object")
        title = raw.get("story_title")
        if not title or not isinstance(title, str):
            raise ManifestError("manifest is missing 'story_title'")
        urls = raw.get("urls", [])
        files = raw.get("html_files", [])
        if not isinstance(urls, list) or not all(isinstance(u, str) for u in urls):
            raise ManifestError("'urls' must be a list of strings")
        if not isinstance(files, list) or not all(isinstance(f, str) for f in files):
            raise ManifestError("'html_files' must be a list of paths")
        if not urls and not files:
            raise ManifestError("manifest lists no urls and no html_files")
        created = raw.get("created_at")
        return cls(
            story_title=title,
            urls=list(urls),
            html_files=[(path.parent / f) for f in files],
            cluster_id=raw.get("cluster_id"),
            created_at=_parse_ts(created) if created else None,
        )


def _venue_from_url(url: str) -> str:
    host = urlparse(url).netloc
    return host[4:] if host.startswith("www.") else host or url


def _slugify(text: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")
    return slug or "cluster"


def _fetch_url(url: str) -> str:
    resp = requests.get(url, timeout=FETCH_TIMEOUT, headers={"User-Agent": _USER_AGENT})
    if resp.status_code != 200:
        raise requests.HTTPError(f"HTTP {resp.status_code}")
    return resp.text


def _build_article(article_id: str, url: str, venue: str, html: str) -> Article:
    title, body = extract_body(html)
    sentences = segment_sentences(body)
    if not sentences:
        raise EmptyDocumentError("no sentences after segmentation")
    return Article(
        article_id=article_id,
        url=url,
        venue=venue,
        title=title,
        body=body,
        sentences=sentences,
    )


def fetch_cluster(
    source: str | Path | Manifest, parallelism: int = 4
) -> tuple[ArticleCluster, list[FetchFailure]]:
    """Build a cluster from a manifest (URL list and/or local HTML files).

    Per-source failures are recorded, not fatal; raises
    AllArticlesFailedError only when nothing could be ingested.
    """
    manifest = source if isinstance(source, Manifest) else Manifest.load(source)

    sources: list[tuple[str, str, str]] = []  # (kind, url-or-path, venue)
    for url in manifest.urls:
        sources.append(("url", url, _venue_from_url(url)))
    for f in manifest.html_files:
        sources.append(("file", str(f), f.stem))

    def safe_fetch(entry: tuple[str, str, str]) -> str | Exception:
        kind, target, _ = entry
        try:
            if kind == "url":
                return _fetch_url(target)
            return Path(target).read_text("utf-8")
        except Exception as e:  # recorded per source below
            return e

    with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
        raw_docs = list(pool.map(safe_fetch, sources))

    articles: list[Article] = []
    failures: list[FetchFailure] = []
    for i, ((_, target, venue), doc) in enumerate(zip(sources, raw_docs)):
        if isinstance(doc, requests.ConnectionError):
            failures.append(FetchFailure(target, f"network-unreachable: {doc}"))
            continue
        if isinstance(doc, Exception):
            failures.append(FetchFailure(target, str(doc) or type(doc).__name__))
            continue
        article_id = f"a{i:03d}"
        try:
            articles.append(_build_article(article_id, target, venue, doc))
        except EmptyDocumentError as e:
            logger.warning("dropping %s: %s", target, e)
            failures.append(FetchFailure(target, str(e)))

    if not articles:
        raise AllArticlesFailedError(
            f"all {len(sources)} articles failed", failures=failures
        )

    cluster = ArticleCluster(
        cluster_id=manifest.cluster_id or _slugify(manifest.story_title),
        story_title=manifest.story_title,
        articles=articles,
        created_at=manifest.created_at or datetime.now(timezone.utc),
    )
    cluster.validate()
    return cluster, failures
