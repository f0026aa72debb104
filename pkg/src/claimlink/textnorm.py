"""Tokenization and stopword handling shared by the filters and stub encoder."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from .porter import stem

_WORD_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; pure punctuation dropped, numerals kept."""
    return [t for t in _WORD_RE.findall(text.lower()) if not all(c == "_" for c in t)]


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The fixed English stopword list shipped as a package asset."""
    data = resources.files("claimlink").joinpath("assets/stopwords.txt").read_text("utf-8")
    return frozenset(w.strip() for w in data.splitlines() if w.strip())


def content_tokens(text: str) -> list[str]:
    """Tokenize, drop stopwords, stem. The shared preprocessing for overlap
    scoring and the hashing stub encoder."""
    stop = stopwords()
    return [stem(t) for t in tokenize(text) if t not in stop]
