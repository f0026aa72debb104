"""Filtering evaluation: build positive/negative pair sets from NLI-format
data and score a filter's retain/discard decisions."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .backends import EmbeddingBackend, cosine_similarity
from .pairfilter import EMBEDDING_SIMILARITY, LEXICAL_OVERLAP, FilterConfig, lexical_overlap_score

POSITIVE = "positive"
NEGATIVE = "negative"
_POSITIVE_NLI_LABELS = {"entailment", "contradiction"}

_PREMISE_KEYS = ("premise", "sentence1", "text_a")
_HYPOTHESIS_KEYS = ("hypothesis", "sentence2", "text_b")
_LABEL_KEYS = ("label", "gold_label")


@dataclass(frozen=True)
class EvalPair:
    text_a: str
    text_b: str
    gold: str  # positive | negative


@dataclass(frozen=True)
class FilterMetrics:
    precision: float
    recall: float
    macro_f1: float
    tnr: float
    tp: int
    fp: int
    tn: int
    fn: int

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "macro_f1": self.macro_f1,
            "tnr": self.tnr,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
        }


def _first_key(row: dict, keys: Sequence[str], path, line_no: int):
    for key in keys:
        if key in row:
            return row[key]
    raise ValueError(f"{path}:{line_no}: none of {keys} present")


def load_nli_pairs(path: str | Path) -> list[tuple[str, str, str]]:
    """Read (premise, hypothesis, label) rows from JSONL or TSV."""
    path = Path(path)
    rows: list[tuple[str, str, str]] = []
    if path.suffix.lower() in (".tsv", ".txt"):
        for i, line in enumerate(path.read_text("utf-8").splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise ValueError(f"{path}:{i}: expected 3 tab-separated fields")
            rows.append((parts[0], parts[1], parts[2].strip().lower()))
    else:
        for i, line in enumerate(path.read_text("utf-8").splitlines(), 1):
            if not line.strip():
                continue
            row = json.loads(line)
            rows.append(
                (
                    _first_key(row, _PREMISE_KEYS, path, i),
                    _first_key(row, _HYPOTHESIS_KEYS, path, i),
                    str(_first_key(row, _LABEL_KEYS, path, i)).strip().lower(),
                )
            )
    return rows


def build_eval_set(
    nli_pairs_file: str | Path, n_negatives: int, seed: int
) -> list[EvalPair]:
    """Positives are every entailment/contradiction pair in the file;
    negatives pair premises sampled (seeded) from distinct examples."""
    rows = load_nli_pairs(nli_pairs_file)
    positives = [
        EvalPair(premise, hypothesis, POSITIVE)
        for premise, hypothesis, label in rows
        if label in _POSITIVE_NLI_LABELS
    ]
    rng = random.Random(seed)
    negatives = []
    if n_negatives:
        if len(rows) < 2:
            raise ValueError("need at least 2 examples to sample negative pairs")
        for _ in range(n_negatives):
            i, j = rng.sample(range(len(rows)), 2)
            negatives.append(EvalPair(rows[i][0], rows[j][0], NEGATIVE))
    return positives + negatives


def predicted_positive(
    pair: EvalPair,
    cfg: FilterConfig,
    embedding_backend: EmbeddingBackend | None = None,
) -> bool:
    """Would the configured filter retain this pair at its threshold?"""
    if cfg.method == LEXICAL_OVERLAP:
        return lexical_overlap_score(pair.text_a, pair.text_b) >= cfg.jaccard_threshold
    if embedding_backend is None:
        raise ValueError("embedding_similarity evaluation needs an embedding backend")
    vectors = embedding_backend.embed([pair.text_a, pair.text_b])
    return cosine_similarity(vectors[0], vectors[1]) >= cfg.cosine_threshold


def evaluate_filter(
    eval_set: Sequence[EvalPair],
    cfg: FilterConfig,
    embedding_backend: EmbeddingBackend | None = None,
) -> FilterMetrics:
    """Confusion counts and the Table-style metrics for a retain/discard run.

    Undefined ratios (zero denominators) come back as 0; macro-F1 averages
    the F1 of the positive (retain) and negative (discard) classes."""
    tp = fp = tn = fn = 0
    predictions: list[bool] = []
    if cfg.method == EMBEDDING_SIMILARITY:
        if embedding_backend is None:
            raise ValueError("embedding_similarity evaluation needs an embedding backend")
        texts: list[str] = []
        for pair in eval_set:
            texts.append(pair.text_a)
            texts.append(pair.text_b)
        vectors = embedding_backend.embed(texts)
        for i, pair in enumerate(eval_set):
            sim = cosine_similarity(vectors[2 * i], vectors[2 * i + 1])
            predictions.append(sim >= cfg.cosine_threshold)
    else:
        predictions = [predicted_positive(p, cfg) for p in eval_set]

    for pair, pred in zip(eval_set, predictions):
        if pair.gold == POSITIVE:
            if pred:
                tp += 1
            else:
                fn += 1
        else:
            if pred:
                fp += 1
            else:
                tn += 1

    return metrics_from_counts(tp, fp, tn, fn)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def metrics_from_counts(tp: int, fp: int, tn: int, fn: int) -> FilterMetrics:
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    tnr = _ratio(tn, tn + fp)
    npv = _ratio(tn, tn + fn)  # negative-class precision
    macro_f1 = (_f1(precision, recall) + _f1(npv, tnr)) / 2
    return FilterMetrics(
        precision=precision,
        recall=recall,
        macro_f1=macro_f1,
        tnr=tnr,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
    )


def metrics_table(metrics: FilterMetrics, method: str) -> str:
    rows = [
        ("method", method),
        ("precision", f"{metrics.precision:.4f}"),
        ("recall", f"{metrics.recall:.4f}"),
        ("macro_f1", f"{metrics.macro_f1:.4f}"),
        ("tnr", f"{metrics.tnr:.4f}"),
        ("tp/fp/tn/fn", f"{metrics.tp}/{metrics.fp}/{metrics.tn}/{metrics.fn}"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
