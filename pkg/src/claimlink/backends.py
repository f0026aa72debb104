"""Model-backend contracts plus deterministic stub implementations.

Three contracts: sentence embedding, NLI classification, and text
completion. Every stub is a pure function of its inputs so the whole
pipeline runs offline and reproducibly; HTTP adapters cover hosted models.
"""

from __future__ import annotations

import hashlib
import logging
import os
import re
import time
from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np
import requests

from .errors import BackendError, BackendHTTPError, BackendProtocolError, BackendTimeout
from .textnorm import content_tokens

logger = logging.getLogger(__name__)

NLI_LABELS = ("entailment", "contradiction", "neutral")


class EmbeddingBackend(ABC):
    """Maps texts to fixed-dimension vectors; identical text, identical vector."""

    dimension: int
    normalized: bool

    @abstractmethod
    def embed(self, texts: Sequence[str]) -> np.ndarray:
        """Return an array of shape (len(texts), dimension)."""


class NliBackend(ABC):
    """Classifies an ordered (premise, hypothesis) pair over the three labels."""

    @abstractmethod
    def classify(self, premise: str, hypothesis: str) -> dict[str, float]:
        """Return {entailment, contradiction, neutral} probabilities summing to 1."""


class CompletionBackend(ABC):
    @abstractmethod
    def complete(self, prompt: str) -> str:
        """Return the completion text for a prompt."""


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of the angle between two vectors; 0.0 for a zero vector."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        logger.warning("cosine_similarity on zero vector; returning 0.0")
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


# --- stubs -------------------------------------------------------------------


class HashEmbeddingBackend(EmbeddingBackend):
    """Feature-hashed bag of stemmed, stopword-free tokens, L2-normalized.

    Each token contributes a signed, hash-derived weight to one bucket; the
    weights keep distinct token multisets from colliding on exactly equal
    cosine values. Equal token multisets embed identically; texts with no
    content tokens embed to the zero vector (cosine treats those as
    similarity 0).
    """

    def __init__(self, dimension: int = 256):
        self.dimension = dimension
        self.normalized = True

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dimension), dtype=np.float64)
        for row, text in enumerate(texts):
            for token in content_tokens(text):
                digest = hashlib.sha256(token.encode("utf-8")).digest()
                bucket = int.from_bytes(digest[:8], "big") % self.dimension
                sign = 1.0 if digest[8] & 1 else -1.0
                weight = 0.5 + int.from_bytes(digest[9:17], "big") / 2**64
                out[row, bucket] += sign * weight
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out


def stub_embed(texts: Sequence[str], dimension: int = 256) -> np.ndarray:
    """One-shot hashing-stub embedding (see HashEmbeddingBackend)."""
    return HashEmbeddingBackend(dimension).embed(texts)


_NEGATION_TOKENS = frozenset({"not", "no", "never", "nt"})
_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def _nli_tokens(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class RuleNliBackend(NliBackend):
    """Deterministic test double: exact token match means entailment, a
    single inserted negation token means contradiction, anything else is
    neutral."""

    def classify(self, premise: str, hypothesis: str) -> dict[str, float]:
        p = _nli_tokens(premise)
        h = _nli_tokens(hypothesis)
        if p == h and p:
            return {"entailment": 1.0, "contradiction": 0.0, "neutral": 0.0}
        if self._single_negation_apart(p, h):
            return {"entailment": 0.0, "contradiction": 1.0, "neutral": 0.0}
        return {"entailment": 0.0, "contradiction": 0.0, "neutral": 1.0}

    @staticmethod
    def _single_negation_apart(p: list[str], h: list[str]) -> bool:
        longer, shorter = (p, h) if len(p) > len(h) else (h, p)
        if len(longer) != len(shorter) + 1:
            return False
        for i, tok in enumerate(longer):
            if tok in _NEGATION_TOKENS and longer[:i] + longer[i + 1 :] == shorter:
                return True
        return False


class ScriptedNliBackend(NliBackend):
    """Returns canned probabilities per ordered text pair; neutral otherwise."""

    def __init__(self, table: dict[tuple[str, str], dict[str, float]]):
        self.table = dict(table)

    def classify(self, premise: str, hypothesis: str) -> dict[str, float]:
        probs = self.table.get((premise, hypothesis))
        if probs is None:
            return {"entailment": 0.0, "contradiction": 0.0, "neutral": 1.0}
        return dict(probs)


_SENTENCE_SLOT_RE = re.compile(r"Sentence:\s*\"?(.*?)\"?\s*$", re.DOTALL)


def sentence_from_prompt(prompt: str) -> str:
    """Recover the text substituted into the final Sentence: slot of a prompt."""
    tail = prompt.rsplit("Sentence:", 1)
    if len(tail) < 2:
        return prompt.strip()
    m = _SENTENCE_SLOT_RE.search("Sentence:" + tail[1])
    return m.group(1).strip() if m else tail[1].strip()


class EchoCompletionBackend(CompletionBackend):
    """Echoes the prompt's final sentence back with no claim lines, which
    drives extraction into its passthrough fallback (one claim per sentence)."""

    def complete(self, prompt: str) -> str:
        return sentence_from_prompt(prompt)


class ScriptedCompletionBackend(CompletionBackend):
    """Maps the prompt's final sentence to a canned completion; empty string
    (passthrough trigger) when the sentence is not scripted."""

    def __init__(self, table: dict[str, str]):
        self.table = dict(table)

    def complete(self, prompt: str) -> str:
        return self.table.get(sentence_from_prompt(prompt), "")


class FailingBackend(EmbeddingBackend, NliBackend, CompletionBackend):
    """Raises on every call; for exercising failure paths in tests."""

    dimension = 0
    normalized = False

    def embed(self, texts):
        raise BackendError("embedding backend unavailable")

    def classify(self, premise, hypothesis):
        raise BackendError("nli backend unavailable")

    def complete(self, prompt):
        raise BackendError("completion backend unavailable")


# --- HTTP adapters -----------------------------------------------------------


def http_backend_call(
    url: str,
    payload: dict,
    *,
    timeout: float = 10.0,
    max_retries: int = 2,
    api_key_env: str | None = None,
    backoff: float = 0.5,
) -> dict:
    """POST JSON to a backend with bounded exponential-backoff retries.

    Timeouts, connection errors and 5xx responses are retried; 4xx and
    malformed payloads are not. The API key is read from the environment and
    never logged.
    """
    headers = {"Content-Type": "application/json"}
    if api_key_env:
        key = os.environ.get(api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"

    last_error: BackendError | None = None
    for attempt in range(max_retries + 1):
        if attempt:
            time.sleep(backoff * (2 ** (attempt - 1)))
        try:
            resp = requests.post(url, json=payload, timeout=timeout, headers=headers)
        except requests.Timeout:
            last_error = BackendTimeout(f"no response from {url} within {timeout}s")
            continue
        except requests.RequestException as e:
            last_error = BackendError(f"request to {url} failed: {e}")
            continue
        if resp.status_code >= 500:
            last_error = BackendHTTPError(resp.status_code, resp.text[:200])
            continue
        if not 200 <= resp.status_code < 300:
            raise BackendHTTPError(resp.status_code, resp.text[:200])
        try:
            body = resp.json()
        except ValueError as e:
            raise BackendProtocolError(f"non-JSON response from {url}: {e}") from e
        if not isinstance(body, dict):
            raise BackendProtocolError(f"expected JSON object from {url}")
        return body
    assert last_error is not None
    raise last_error


class HttpEmbeddingBackend(EmbeddingBackend):
    """POST {texts: [...]} -> {embeddings: [[...], ...]}."""

    def __init__(self, url, dimension, normalized=False, api_key_env=None,
                 timeout=10.0, max_retries=2):
        self.url = url
        self.dimension = dimension
        self.normalized = normalized
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.max_retries = max_retries

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        body = http_backend_call(
            self.url,
            {"texts": list(texts)},
            timeout=self.timeout,
            max_retries=self.max_retries,
            api_key_env=self.api_key_env,
        )
        vectors = body.get("embeddings")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise BackendProtocolError("embedding response shape mismatch")
        arr = np.asarray(vectors, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != self.dimension:
            raise BackendProtocolError(
                f"expected dimension {self.dimension}, got {arr.shape}"
            )
        return arr


class HttpNliBackend(NliBackend):
    """POST {premise, hypothesis} -> {entailment, contradiction, neutral}."""

    def __init__(self, url, api_key_env=None, timeout=10.0, max_retries=2):
        self.url = url
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.max_retries = max_retries

    def classify(self, premise: str, hypothesis: str) -> dict[str, float]:
        body = http_backend_call(
            self.url,
            {"premise": premise, "hypothesis": hypothesis},
            timeout=self.timeout,
            max_retries=self.max_retries,
            api_key_env=self.api_key_env,
        )
        try:
            return {label: float(body[label]) for label in NLI_LABELS}
        except (KeyError, TypeError, ValueError) as e:
            raise BackendProtocolError(f"nli response missing labels: {e}") from e


class HttpCompletionBackend(CompletionBackend):
    """POST {prompt, max_tokens, temperature} -> {text}."""

    def __init__(self, url, api_key_env=None, model_name=None, max_tokens=256,
                 timeout=30.0, max_retries=2):
        self.url = url
        self.api_key_env = api_key_env
        self.model_name = model_name
        self.max_tokens = max_tokens
        self.timeout = timeout
        self.max_retries = max_retries

    def complete(self, prompt: str) -> str:
        payload = {"prompt": prompt, "max_tokens": self.max_tokens, "temperature": 0}
        if self.model_name:
            payload["model"] = self.model_name
        body = http_backend_call(
            self.url,
            payload,
            timeout=self.timeout,
            max_retries=self.max_retries,
            api_key_env=self.api_key_env,
        )
        text = body.get("text")
        if not isinstance(text, str):
            raise BackendProtocolError("completion response has no 'text' field")
        return text


class SentenceEncoderBackend(EmbeddingBackend):
    """In-process transformer sentence encoder (live profile only)."""

    def __init__(self, model_name: str = "sentence-transformers/all-MiniLM-L6-v2"):
        from sentence_transformers import SentenceTransformer  # lazy, heavy

        self._model = SentenceTransformer(model_name)
        self.dimension = int(self._model.get_sentence_embedding_dimension())
        self.normalized = True

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        return np.asarray(
            self._model.encode(list(texts), normalize_embeddings=True),
            dtype=np.float64,
        )


class LocalNliBackend(NliBackend):
    """In-process NLI classifier from a hub checkpoint (live profile only)."""

    def __init__(self, model_name: str = "roberta-large-mnli"):
        from transformers import pipeline  # lazy, heavy

        self._pipe = pipeline("text-classification", model=model_name, top_k=None)

    def classify(self, premise: str, hypothesis: str) -> dict[str, float]:
        scores = self._pipe({"text": premise, "text_pair": hypothesis})
        out = {label: 0.0 for label in NLI_LABELS}
        for item in scores:
            out[item["label"].lower()] = float(item["score"])
        return out
