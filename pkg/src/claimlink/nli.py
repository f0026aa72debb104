"""NLI-based claim linking: classify candidate pairs, keep the most
confident entailment/contradiction links per class, and project claim
links onto their source sentences."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .backends import NLI_LABELS, NliBackend
from .claims import Claim
from .errors import BackendError, BackendProtocolError, DanglingClaimError
from .pairfilter import CandidatePair

logger = logging.getLogger(__name__)

DEFAULT_CAP = 100
POSITIVE_LABELS = ("entailment", "contradiction")
_SIMPLEX_TOL = 1e-6
# on exact probability ties the less committal label wins
_TIE_PREFERENCE = {"neutral": 2, "entailment": 1, "contradiction": 0}


@dataclass(frozen=True)
class NliVerdict:
    label: str
    probabilities: dict[str, float]

    @classmethod
    def from_probabilities(cls, probs: dict[str, float]) -> "NliVerdict":
        missing = [l for l in NLI_LABELS if l not in probs]
        if missing:
            raise BackendProtocolError(f"missing probabilities for {missing}")
        values = {l: float(probs[l]) for l in NLI_LABELS}
        if any(v < 0 for v in values.values()):
            raise BackendProtocolError("negative probability")
        if abs(sum(values.values()) - 1.0) > _SIMPLEX_TOL:
            raise BackendProtocolError(
                f"probabilities sum to {sum(values.values())}, not 1"
            )
        label = max(NLI_LABELS, key=lambda l: (values[l], _TIE_PREFERENCE[l]))
        return cls(label=label, probabilities=values)

    @property
    def confidence(self) -> float:
        return self.probabilities[self.label]


@dataclass(frozen=True)
class ClaimLink:
    premise_claim: str
    hypothesis_claim: str
    label: str  # entailment | contradiction, never neutral
    confidence: float

    def to_dict(self) -> dict:
        return {
            "premise_claim": self.premise_claim,
            "hypothesis_claim": self.hypothesis_claim,
            "label": self.label,
            "confidence": self.confidence,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimLink":
        return cls(d["premise_claim"], d["hypothesis_claim"], d["label"], d["confidence"])


@dataclass(frozen=True)
class SentenceRef:
    article_id: str
    sentence_index: int

    def to_dict(self) -> dict:
        return {"article_id": self.article_id, "sentence_index": self.sentence_index}

    @classmethod
    def from_dict(cls, d: dict) -> "SentenceRef":
        return cls(d["article_id"], d["sentence_index"])


@dataclass(frozen=True)
class SentenceLink:
    focus: SentenceRef
    evidence: SentenceRef
    label: str
    confidence: float
    evidence_claim_text: str

    def to_dict(self) -> dict:
        return {
            "focus": self.focus.to_dict(),
            "evidence": self.evidence.to_dict(),
            "label": self.label,
            "confidence": self.confidence,
            "evidence_claim_text": self.evidence_claim_text,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SentenceLink":
        return cls(
            focus=SentenceRef.from_dict(d["focus"]),
            evidence=SentenceRef.from_dict(d["evidence"]),
            label=d["label"],
            confidence=d["confidence"],
            evidence_claim_text=d["evidence_claim_text"],
        )


def classify_pair(premise: str, hypothesis: str, backend: NliBackend) -> NliVerdict:
    """One ordered classification with simplex validation."""
    if not premise or not hypothesis:
        raise ValueError("premise and hypothesis must be non-empty")
    return NliVerdict.from_probabilities(backend.classify(premise, hypothesis))


def _link_for_pair(
    lo: Claim, hi: Claim, backend: NliBackend
) -> ClaimLink | None:
    """Classify both directions of an unordered pair; the higher-confidence
    non-neutral verdict wins, ties going to the lower-claim-id premise."""
    forward = classify_pair(lo.text, hi.text, backend)
    backward = classify_pair(hi.text, lo.text, backend)
    best: ClaimLink | None = None
    for verdict, premise, hypothesis in (
        (forward, lo, hi),
        (backward, hi, lo),
    ):
        if verdict.label == "neutral":
            continue
        if best is None or verdict.confidence > best.confidence:
            best = ClaimLink(
                premise_claim=premise.claim_id,
                hypothesis_claim=hypothesis.claim_id,
                label=verdict.label,
                confidence=verdict.confidence,
            )
    return best


def link_candidates(
    candidates: Sequence[CandidatePair],
    claims: Sequence[Claim],
    backend: NliBackend,
    cap: int = DEFAULT_CAP,
    parallelism: int = 1,
) -> list[ClaimLink]:
    """Classify every candidate pair and keep the `cap` most confident links
    per positive class (ties broken by claim-id pair). Backend failures skip
    the pair with a warning; neutral verdicts never produce links. Pair
    classification may run concurrently; selection stays deterministic."""
    by_id = {c.claim_id: c for c in claims}

    def classify(pair: CandidatePair) -> ClaimLink | None:
        try:
            lo = by_id[pair.claim_a]
            hi = by_id[pair.claim_b]
        except KeyError as e:
            raise DanglingClaimError(f"candidate references unknown claim {e}") from e
        try:
            return _link_for_pair(lo, hi, backend)
        except BackendError as e:
            logger.warning("skipping pair (%s, %s): %s", pair.claim_a, pair.claim_b, e)
            return None

    if parallelism > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(classify, candidates))
    else:
        results = [classify(p) for p in candidates]
    links = [l for l in results if l is not None]

    kept: list[ClaimLink] = []
    for label in POSITIVE_LABELS:
        of_class = [l for l in links if l.label == label]
        of_class.sort(key=lambda l: (-l.confidence, l.premise_claim, l.hypothesis_claim))
        kept.extend(of_class[:cap])
    return kept


def project_links(links: Sequence[ClaimLink], claims: Sequence[Claim]) -> list[SentenceLink]:
    """Map claim links back to their source sentences.

    Links between the same unordered sentence pair with the same label
    collapse to the max-confidence one (ties keep the orientation with the
    lexicographically smaller endpoints)."""
    by_id = {c.claim_id: c for c in claims}
    collapsed: dict[tuple, SentenceLink] = {}
    for link in links:
        premise = by_id.get(link.premise_claim)
        hypothesis = by_id.get(link.hypothesis_claim)
        if premise is None or hypothesis is None:
            raise DanglingClaimError(
                f"link references missing claim "
                f"({link.premise_claim}, {link.hypothesis_claim})"
            )
        focus = SentenceRef(premise.article_id, premise.sentence_index)
        evidence = SentenceRef(hypothesis.article_id, hypothesis.sentence_index)
        candidate = SentenceLink(
            focus=focus,
            evidence=evidence,
            label=link.label,
            confidence=link.confidence,
            evidence_claim_text=hypothesis.text,
        )
        pair_key = tuple(
            sorted(
                [
                    (focus.article_id, focus.sentence_index),
                    (evidence.article_id, evidence.sentence_index),
                ]
            )
        )
        key = (pair_key, link.label)
        existing = collapsed.get(key)
        if existing is None or _beats(candidate, existing):
            collapsed[key] = candidate
    return sorted(
        collapsed.values(),
        key=lambda s: (
            s.focus.article_id,
            s.focus.sentence_index,
            s.evidence.article_id,
            s.evidence.sentence_index,
            s.label,
        ),
    )


def _beats(challenger: SentenceLink, incumbent: SentenceLink) -> bool:
    ck = (
        -challenger.confidence,
        challenger.focus.article_id,
        challenger.focus.sentence_index,
        challenger.evidence.article_id,
        challenger.evidence.sentence_index,
    )
    ik = (
        -incumbent.confidence,
        incumbent.focus.article_id,
        incumbent.focus.sentence_index,
        incumbent.evidence.article_id,
        incumbent.evidence.sentence_index,
    )
    return ck < ik
