"""Candidate-pair filtering: cut the cross-article claim-pair space down
before NLI, by embedding-similarity top-k or lexical-overlap (Jaccard)."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .backends import EmbeddingBackend
from .claims import Claim
from .errors import BackendProtocolError
from .textnorm import content_tokens

logger = logging.getLogger(__name__)

EMBEDDING_SIMILARITY = "embedding_similarity"
LEXICAL_OVERLAP = "lexical_overlap"


@dataclass(frozen=True)
class FilterConfig:
    method: str = EMBEDDING_SIMILARITY
    cosine_threshold: float = 0.3
    top_k: int = 16
    jaccard_threshold: float = 0.1

    def __post_init__(self):
        if self.method not in (EMBEDDING_SIMILARITY, LEXICAL_OVERLAP):
            raise ValueError(f"unknown filter method: {self.method}")
        if not 0.0 <= self.cosine_threshold <= 1.0:
            raise ValueError("cosine_threshold must be in [0, 1]")
        if not 0.0 <= self.jaccard_threshold <= 1.0:
            raise ValueError("jaccard_threshold must be in [0, 1]")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class CandidatePair:
    """Unordered cross-article claim pair; claim_a is the smaller claim id."""

    claim_a: str
    claim_b: str
    score: float
    method: str

    def to_dict(self) -> dict:
        return {
            "claim_a": self.claim_a,
            "claim_b": self.claim_b,
            "score": self.score,
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CandidatePair":
        return cls(d["claim_a"], d["claim_b"], d["score"], d["method"])


class FilterStats(NamedTuple):
    pre_dedup_candidates: int
    pairs_retained: int


def lexical_overlap_score(a: str, b: str) -> float:
    """Jaccard index over stemmed, stopword-free token sets; 0.0 when both
    sets are empty."""
    sa = set(content_tokens(a))
    sb = set(content_tokens(b))
    if not sa and not sb:
        return 0.0
    union = len(sa | sb)
    if union == 0:
        return 0.0
    return len(sa & sb) / union


def _jaccard(sa: frozenset[str], sb: frozenset[str]) -> float:
    if not sa and not sb:
        return 0.0
    return len(sa & sb) / len(sa | sb)


def lexical_filter(claims: Sequence[Claim], cfg: FilterConfig) -> list[CandidatePair]:
    """All cross-article pairs with Jaccard overlap >= the threshold.

    An inverted index from stemmed token to claims skips token-disjoint
    pairs entirely, so only pairs that share at least one token are scored.
    """
    token_sets = [frozenset(content_tokens(c.text)) for c in claims]
    index: dict[str, list[int]] = defaultdict(list)
    for i, tokens in enumerate(token_sets):
        for token in tokens:
            index[token].append(i)

    seen: set[tuple[int, int]] = set()
    retained: dict[tuple[str, str], CandidatePair] = {}
    for bucket in index.values():
        for pos, i in enumerate(bucket):
            for j in bucket[pos + 1 :]:
                if claims[i].article_id == claims[j].article_id:
                    continue
                key = (i, j) if i < j else (j, i)
                if key in seen:
                    continue
                seen.add(key)
                score = _jaccard(token_sets[i], token_sets[j])
                if score >= cfg.jaccard_threshold:
                    a, b = sorted((claims[i].claim_id, claims[j].claim_id))
                    retained[(a, b)] = CandidatePair(a, b, score, LEXICAL_OVERLAP)
    return [retained[k] for k in sorted(retained)]


def _similarity_matrix(embeddings: np.ndarray, normalized: bool) -> np.ndarray:
    if normalized:
        return embeddings @ embeddings.T
    norms = np.linalg.norm(embeddings, axis=1)
    zero = norms == 0.0
    if zero.any():
        logger.warning("%d zero-vector embeddings; their similarity is 0", int(zero.sum()))
    safe = np.where(zero, 1.0, norms)
    unit = embeddings / safe[:, None]
    unit[zero] = 0.0
    return unit @ unit.T


def embed_filter_with_stats(
    claims: Sequence[Claim], backend: EmbeddingBackend, cfg: FilterConfig
) -> tuple[list[CandidatePair], FilterStats]:
    """Embedding-similarity filtering with candidate-count accounting.

    For each claim the k most similar cross-article claims are considered
    (ties broken by higher score, then lexicographic claim id), and of those
    the pairs at or above the cosine threshold are retained; the union is
    deduplicated as unordered pairs.
    """
    n = len(claims)
    if n < 2 or len({c.article_id for c in claims}) < 2:
        return [], FilterStats(0, 0)

    embeddings = np.asarray(backend.embed([c.text for c in claims]), dtype=np.float64)
    if embeddings.shape != (n, backend.dimension):
        raise BackendProtocolError(
            f"embedding shape {embeddings.shape} != ({n}, {backend.dimension})"
        )
    sims = _similarity_matrix(embeddings, backend.normalized)

    ids = [c.claim_id for c in claims]
    id_rank = np.argsort(np.argsort(np.array(ids)))  # lexicographic rank per claim
    articles = np.array([c.article_id for c in claims])

    pre_dedup = 0
    retained: dict[tuple[str, str], CandidatePair] = {}
    for i in range(n):
        eligible = np.flatnonzero(articles != articles[i])
        if eligible.size == 0:
            continue
        # primary: higher similarity; secondary: smaller claim-id rank
        order = eligible[np.lexsort((id_rank[eligible], -sims[i, eligible]))]
        for j in order[: cfg.top_k]:
            score = float(sims[i, j]) if ids[i] < ids[j] else float(sims[j, i])
            if score < cfg.cosine_threshold:
                continue
            pre_dedup += 1
            a, b = sorted((ids[i], ids[j]))
            if (a, b) not in retained:
                retained[(a, b)] = CandidatePair(a, b, score, EMBEDDING_SIMILARITY)
    pairs = [retained[k] for k in sorted(retained)]
    return pairs, FilterStats(pre_dedup, len(pairs))


def embed_filter(
    claims: Sequence[Claim], backend: EmbeddingBackend, cfg: FilterConfig
) -> list[CandidatePair]:
    return embed_filter_with_stats(claims, backend, cfg)[0]


def run_filter(
    claims: Sequence[Claim], cfg: FilterConfig, backend: EmbeddingBackend | None = None
) -> list[CandidatePair]:
    """Dispatch on the configured method."""
    if cfg.method == LEXICAL_OVERLAP:
        return lexical_filter(claims, cfg)
    if backend is None:
        raise ValueError("embedding_similarity filtering needs an embedding backend")
    return embed_filter(claims, backend, cfg)
