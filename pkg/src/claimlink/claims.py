"""Atomic claim extraction: one sentence in, a list of subject-predicate-object
claims out, via a few-shot prompted completion backend with a passthrough
fallback."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .backends import CompletionBackend
from .corpus import ArticleCluster, Sentence
from .errors import BackendError

logger = logging.getLogger(__name__)

MAX_CLAIM_CHARS = 500
_SENTENCE_SLOT = "<INSERT SENTENCE HERE>"
_CLAIM_PREFIX = "Claim:"


@dataclass(frozen=True)
class Claim:
    claim_id: str
    article_id: str
    sentence_index: int
    text: str
    extraction_method: str  # "llm" | "passthrough"

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "article_id": self.article_id,
            "sentence_index": self.sentence_index,
            "text": self.text,
            "extraction_method": self.extraction_method,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Claim":
        return cls(
            claim_id=d["claim_id"],
            article_id=d["article_id"],
            sentence_index=d["sentence_index"],
            text=d["text"],
            extraction_method=d["extraction_method"],
        )


@lru_cache(maxsize=1)
def claim_prompt_template() -> str:
    """The versioned few-shot prompt asset; only the final Sentence slot varies."""
    return resources.files("claimlink").joinpath("assets/claim_prompt.txt").read_text("utf-8")


def build_prompt(sentence_text: str) -> str:
    return claim_prompt_template().replace(_SENTENCE_SLOT, f'"{sentence_text}"')


def parse_claim_list(completion: str) -> list[str]:
    """Pull the text after each "Claim:" line, in order, de-duplicated
    case-insensitively. Lines without the prefix are ignored."""
    seen: set[str] = set()
    out: list[str] = []
    for line in completion.splitlines():
        stripped = line.strip()
        if not stripped.startswith(_CLAIM_PREFIX):
            continue
        text = stripped[len(_CLAIM_PREFIX):].strip()
        if not text:
            continue
        key = text.lower()
        if key in seen:
            continue
        seen.add(key)
        out.append(text)
    return out


def _truncate(text: str) -> str:
    if len(text) <= MAX_CLAIM_CHARS:
        return text
    cut = text.rfind(" ", 0, MAX_CLAIM_CHARS)
    if cut <= 0:
        cut = MAX_CLAIM_CHARS
    logger.warning("truncating %d-char claim at a word boundary", len(text))
    return text[:cut]


def extract_claims(
    sentence: Sentence, backend: CompletionBackend, *, article_id: str
) -> list[Claim]:
    """Extract claims for one sentence; falls back to a single passthrough
    claim (the sentence itself) on backend failure or an unparseable
    completion."""
    texts: list[str] = []
    method = "llm"
    try:
        completion = backend.complete(build_prompt(sentence.text))
        texts = parse_claim_list(completion)
    except BackendError as e:
        logger.warning(
            "claim extraction failed for %s sentence %d (%s); using passthrough",
            article_id,
            sentence.sentence_index,
            e,
        )
    if not texts:
        texts = [sentence.text]
        method = "passthrough"
    return [
        Claim(
            claim_id=f"{article_id}-s{sentence.sentence_index:04d}-k{j:02d}",
            article_id=article_id,
            sentence_index=sentence.sentence_index,
            text=_truncate(text),
            extraction_method=method,
        )
        for j, text in enumerate(texts)
    ]


def extract_cluster_claims(
    cluster: ArticleCluster, backend: CompletionBackend, parallelism: int = 1
) -> list[Claim]:
    """Per-sentence extraction over the whole cluster, in deterministic
    article/sentence/claim order regardless of completion order."""
    jobs = [
        (article.article_id, sentence)
        for article in cluster.articles
        for sentence in article.sentences
    ]
    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(
                pool.map(lambda j: extract_claims(j[1], backend, article_id=j[0]), jobs)
            )
    else:
        results = [extract_claims(s, backend, article_id=aid) for aid, s in jobs]
    return [claim for group in results for claim in group]
