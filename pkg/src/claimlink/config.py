"""Pipeline configuration: dataclass-backed, JSON file plus flag overrides,
unknown keys rejected."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field, fields
from pathlib import Path

from .backends import (
    CompletionBackend,
    EchoCompletionBackend,
    EmbeddingBackend,
    HashEmbeddingBackend,
    HttpCompletionBackend,
    HttpEmbeddingBackend,
    HttpNliBackend,
    LocalNliBackend,
    NliBackend,
    RuleNliBackend,
    SentenceEncoderBackend,
)
from .errors import ConfigError
from .pairfilter import FilterConfig

PROFILES = ("stub", "live")


@dataclass
class BackendConfig:
    kind: str = "stub"  # stub | http | local
    url: str | None = None
    api_key_env: str | None = None
    model_name: str | None = None
    dimension: int = 256
    normalized: bool = True
    timeout: float = 10.0
    max_retries: int = 2


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8100
    cors_origins: list[str] = field(default_factory=lambda: ["*"])


@dataclass
class PipelineConfig:
    data_dir: str | None = None
    profile: str = "stub"
    seed: int = 13
    parallelism: int = 4
    link_cap: int = 100
    filter: FilterConfig = field(default_factory=FilterConfig)
    embedding: BackendConfig = field(default_factory=BackendConfig)
    nli: BackendConfig = field(default_factory=BackendConfig)
    completion: BackendConfig = field(default_factory=BackendConfig)
    server: ServerConfig = field(default_factory=ServerConfig)


_NESTED_SECTIONS = {
    "filter": FilterConfig,
    "embedding": BackendConfig,
    "nli": BackendConfig,
    "completion": BackendConfig,
    "server": ServerConfig,
}


def _build_dataclass(cls, raw: dict, path: str):
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: expected an object")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}")
    kwargs = {}
    for name, value in raw.items():
        if cls is PipelineConfig and name in _NESTED_SECTIONS:
            kwargs[name] = _build_dataclass(_NESTED_SECTIONS[name], value, f"{path}.{name}")
        else:
            kwargs[name] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{path}: {e}") from e


def load_config(path: str | Path | None = None) -> PipelineConfig:
    """Load a JSON config document; defaults when no file is given."""
    if path is None:
        return PipelineConfig()
    path = Path(path)
    try:
        raw = json.loads(path.read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    cfg = _build_dataclass(PipelineConfig, raw, "config")
    if cfg.profile not in PROFILES:
        raise ConfigError(f"config.profile must be one of {PROFILES}")
    return cfg


def apply_profile(cfg: PipelineConfig) -> PipelineConfig:
    """The live profile swaps stub backends for real ones unless the config
    already names a specific backend kind."""
    if cfg.profile == "live":
        if cfg.embedding.kind == "stub":
            cfg.embedding = dataclasses.replace(
                cfg.embedding,
                kind="local",
                model_name=cfg.embedding.model_name
                or "sentence-transformers/all-MiniLM-L6-v2",
            )
        if cfg.nli.kind == "stub":
            cfg.nli = dataclasses.replace(
                cfg.nli, kind="local", model_name=cfg.nli.model_name or "roberta-large-mnli"
            )
    return cfg


def build_embedding_backend(bc: BackendConfig) -> EmbeddingBackend:
    if bc.kind == "stub":
        return HashEmbeddingBackend(dimension=bc.dimension)
    if bc.kind == "http":
        if not bc.url:
            raise ConfigError("http embedding backend needs a url")
        return HttpEmbeddingBackend(
            bc.url,
            dimension=bc.dimension,
            normalized=bc.normalized,
            api_key_env=bc.api_key_env,
            timeout=bc.timeout,
            max_retries=bc.max_retries,
        )
    if bc.kind == "local":
        return SentenceEncoderBackend(bc.model_name or "sentence-transformers/all-MiniLM-L6-v2")
    raise ConfigError(f"unknown embedding backend kind: {bc.kind}")


def build_nli_backend(bc: BackendConfig) -> NliBackend:
    if bc.kind == "stub":
        return RuleNliBackend()
    if bc.kind == "http":
        if not bc.url:
            raise ConfigError("http nli backend needs a url")
        return HttpNliBackend(
            bc.url, api_key_env=bc.api_key_env, timeout=bc.timeout, max_retries=bc.max_retries
        )
    if bc.kind == "local":
        return LocalNliBackend(bc.model_name or "roberta-large-mnli")
    raise ConfigError(f"unknown nli backend kind: {bc.kind}")


def build_completion_backend(bc: BackendConfig) -> CompletionBackend:
    if bc.kind == "stub":
        return EchoCompletionBackend()
    if bc.kind == "http":
        if not bc.url:
            raise ConfigError("http completion backend needs a url")
        return HttpCompletionBackend(
            bc.url,
            api_key_env=bc.api_key_env,
            model_name=bc.model_name,
            timeout=bc.timeout,
            max_retries=bc.max_retries,
        )
    raise ConfigError(f"unknown completion backend kind: {bc.kind}")
