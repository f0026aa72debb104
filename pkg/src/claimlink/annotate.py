"""Per-article reading annotations: sentence highlights with cross-source
evidence snippets, assembled from sentence links."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .corpus import Article, ArticleCluster
from .errors import UnknownArticleError
from .nli import SentenceLink

SUPPORTED = "supported"
CONTRADICTED = "contradicted"
MIXED = "mixed"


@dataclass(frozen=True)
class EvidenceSnippet:
    label: str
    confidence: float
    source_article_id: str
    source_venue: str
    source_title: str
    source_url: str
    snippet_text: str
    source_sentence_index: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "confidence": self.confidence,
            "source_article_id": self.source_article_id,
            "source_venue": self.source_venue,
            "source_title": self.source_title,
            "source_url": self.source_url,
            "snippet_text": self.snippet_text,
            "source_sentence_index": self.source_sentence_index,
        }


@dataclass
class Highlight:
    sentence_index: int
    span_start: int
    span_end: int
    polarity: str
    evidence: list[EvidenceSnippet] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "sentence_index": self.sentence_index,
            "span_start": self.span_start,
            "span_end": self.span_end,
            "polarity": self.polarity,
            "evidence": [e.to_dict() for e in self.evidence],
        }


@dataclass
class AnnotatedArticle:
    article_id: str
    url: str
    venue: str
    title: str
    body: str
    highlights: list[Highlight] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "url": self.url,
            "venue": self.venue,
            "title": self.title,
            "body": self.body,
            "highlights": [h.to_dict() for h in self.highlights],
        }


def _polarity(labels: Sequence[str]) -> str:
    unique = set(labels)
    if unique == {"entailment"}:
        return SUPPORTED
    if unique == {"contradiction"}:
        return CONTRADICTED
    return MIXED


def annotate_article(
    cluster: ArticleCluster,
    sentence_links: Sequence[SentenceLink],
    focus_article_id: str,
) -> AnnotatedArticle:
    """Annotations for one focus article: a highlight per focus sentence with
    at least one link, evidence sorted by confidence descending.

    A link contributes whichever of its two endpoints lies in the focus
    article; the other endpoint supplies the evidence snippet. Pure function
    of its inputs, deterministic output order."""
    focus_article = cluster.article(focus_article_id)
    if focus_article is None:
        raise UnknownArticleError(f"unknown focus article: {focus_article_id}")
    articles = {a.article_id: a for a in cluster.articles}

    per_sentence: dict[int, list[EvidenceSnippet]] = {}
    for link in sentence_links:
        for focus_end, evidence_end in (
            (link.focus, link.evidence),
            (link.evidence, link.focus),
        ):
            if focus_end.article_id != focus_article_id:
                continue
            source = articles.get(evidence_end.article_id)
            if source is None:
                continue
            snippet = EvidenceSnippet(
                label=link.label,
                confidence=link.confidence,
                source_article_id=source.article_id,
                source_venue=source.venue,
                source_title=source.title,
                source_url=source.url,
                snippet_text=source.sentences[evidence_end.sentence_index].text,
                source_sentence_index=evidence_end.sentence_index,
            )
            per_sentence.setdefault(focus_end.sentence_index, []).append(snippet)

    highlights = []
    for idx in sorted(per_sentence):
        snippets = per_sentence[idx]
        snippets.sort(
            key=lambda s: (-s.confidence, s.source_article_id, s.source_sentence_index)
        )
        sentence = focus_article.sentences[idx]
        highlights.append(
            Highlight(
                sentence_index=idx,
                span_start=sentence.span_start,
                span_end=sentence.span_end,
                polarity=_polarity([s.label for s in snippets]),
                evidence=snippets,
            )
        )
    return AnnotatedArticle(
        article_id=focus_article.article_id,
        url=focus_article.url,
        venue=focus_article.venue,
        title=focus_article.title,
        body=focus_article.body,
        highlights=highlights,
    )
