"""Command-line pipeline driver: ingest -> extract -> filter -> link ->
annotate, plus eval and serve."""

from __future__ import annotations

import dataclasses
import json
import logging
import sys
from pathlib import Path

import click

from . import __version__
from .annotate import annotate_article
from .claims import extract_cluster_claims
from .config import (
    PipelineConfig,
    apply_profile,
    build_completion_backend,
    build_embedding_backend,
    build_nli_backend,
    load_config,
)
from .corpus import fetch_cluster
from .errors import ClaimlinkError, StageMissingError
from .evalharness import build_eval_set, evaluate_filter, metrics_table
from .nli import link_candidates, project_links
from .pairfilter import EMBEDDING_SIMILARITY, LEXICAL_OVERLAP, run_filter
from .store import ClusterDocument, ClusterStore, resolve_data_dir

logger = logging.getLogger(__name__)

_METHOD_ALIASES = {"es": EMBEDDING_SIMILARITY, "leo": LEXICAL_OVERLAP}


def _method_name(value: str) -> str:
    return _METHOD_ALIASES.get(value, value)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON config file.")
@click.option("--data-dir", default=None, help="Cluster store directory "
              "(overrides CLAIMLINK_DATA_DIR).")
@click.option("--profile", type=click.Choice(["stub", "live"]), default=None,
              help="Backend profile; stub is fully offline.")
@click.option("--seed", type=int, default=None, help="Seed for all randomness.")
@click.option("--method", "method_opt", type=click.Choice(["es", "leo"]), default=None,
              help="Candidate filter method.")
@click.option("--k", "top_k", type=int, default=None, help="Top-k neighbors for es.")
@click.option("--cosine-threshold", type=float, default=None)
@click.option("--jaccard-threshold", type=float, default=None)
@click.option("--cap", type=int, default=None, help="Max links kept per class.")
@click.option("--port", type=int, default=None, help="Server port.")
@click.version_option(version=__version__, prog_name="claimlink")
@click.pass_context
def main(ctx, config_path, data_dir, profile, seed, method_opt, top_k,
         cosine_threshold, jaccard_threshold, cap, port):
    """Cross-source claim linking over news article clusters."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(config_path)
    except ClaimlinkError as e:
        raise click.ClickException(str(e))
    if data_dir:
        cfg.data_dir = data_dir
    if profile:
        cfg.profile = profile
    if seed is not None:
        cfg.seed = seed
    if cap is not None:
        cfg.link_cap = cap
    if port is not None:
        cfg.server.port = port
    filter_updates = {}
    if method_opt:
        filter_updates["method"] = _method_name(method_opt)
    if top_k is not None:
        filter_updates["top_k"] = top_k
    if cosine_threshold is not None:
        filter_updates["cosine_threshold"] = cosine_threshold
    if jaccard_threshold is not None:
        filter_updates["jaccard_threshold"] = jaccard_threshold
    if filter_updates:
        try:
            cfg.filter = dataclasses.replace(cfg.filter, **filter_updates)
        except ValueError as e:
            raise click.ClickException(str(e))
    apply_profile(cfg)
    ctx.obj = cfg


def _store(cfg: PipelineConfig) -> ClusterStore:
    return ClusterStore(resolve_data_dir(cfg.data_dir))


def _load_doc(cfg: PipelineConfig, cluster_id: str) -> ClusterDocument:
    store = _store(cfg)
    if not store.exists(cluster_id):
        raise click.ClickException(
            f"cluster '{cluster_id}' not found in {store.clusters_dir}; run ingest first"
        )
    return store.load(cluster_id)


def _require_stage(doc: ClusterDocument, stage: str):
    messages = {
        "claims": "claims missing; run extract",
        "candidates": "candidates missing; run filter",
        "sentence_links": "links missing; run link",
    }
    if getattr(doc, stage) is None:
        raise StageMissingError(messages[stage])


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.pass_obj
def ingest(cfg: PipelineConfig, manifest):
    """Fetch a story manifest into a stored cluster."""
    cluster_id = _run_ingest(cfg, manifest)
    click.echo(f"ingested cluster '{cluster_id}'")


def _run_ingest(cfg: PipelineConfig, manifest) -> str:
    try:
        cluster, failures = fetch_cluster(manifest, parallelism=cfg.parallelism)
    except ClaimlinkError as e:
        raise click.ClickException(str(e))
    for failure in failures:
        logger.warning("failed source %s: %s", failure.url, failure.reason)
    doc = ClusterDocument(cluster=cluster, fetch_failures=failures)
    _store(cfg).save(doc)
    return cluster.cluster_id


@main.command()
@click.argument("cluster_id")
@click.pass_obj
def extract(cfg: PipelineConfig, cluster_id):
    """Extract claims for every sentence of a stored cluster."""
    _run_extract(cfg, cluster_id)
    click.echo(f"extracted claims for '{cluster_id}'")


def _run_extract(cfg: PipelineConfig, cluster_id):
    doc = _load_doc(cfg, cluster_id)
    backend = build_completion_backend(cfg.completion)
    doc.claims = extract_cluster_claims(doc.cluster, backend, parallelism=cfg.parallelism)
    _store(cfg).save(doc)


@main.command(name="filter")
@click.argument("cluster_id")
@click.pass_obj
def filter_cmd(cfg: PipelineConfig, cluster_id):
    """Reduce the cross-article claim-pair space to candidates."""
    _run_filter(cfg, cluster_id)
    click.echo(f"filtered candidates for '{cluster_id}'")


def _run_filter(cfg: PipelineConfig, cluster_id):
    doc = _load_doc(cfg, cluster_id)
    try:
        _require_stage(doc, "claims")
    except StageMissingError as e:
        raise click.ClickException(str(e))
    backend = None
    if cfg.filter.method == EMBEDDING_SIMILARITY:
        backend = build_embedding_backend(cfg.embedding)
    doc.candidates = run_filter(doc.claims, cfg.filter, backend)
    doc.links = None
    doc.sentence_links = None
    doc.annotations = None
    _store(cfg).save(doc)


@main.command()
@click.argument("cluster_id")
@click.pass_obj
def link(cfg: PipelineConfig, cluster_id):
    """Classify candidates and keep the most confident links per class."""
    _run_link(cfg, cluster_id)
    click.echo(f"linked claims for '{cluster_id}'")


def _run_link(cfg: PipelineConfig, cluster_id):
    doc = _load_doc(cfg, cluster_id)
    try:
        _require_stage(doc, "claims")
        _require_stage(doc, "candidates")
    except StageMissingError as e:
        raise click.ClickException(str(e))
    backend = build_nli_backend(cfg.nli)
    doc.links = link_candidates(
        doc.candidates, doc.claims, backend, cap=cfg.link_cap, parallelism=cfg.parallelism
    )
    doc.sentence_links = project_links(doc.links, doc.claims)
    doc.annotations = None
    _store(cfg).save(doc)


@main.command()
@click.argument("cluster_id")
@click.pass_obj
def annotate(cfg: PipelineConfig, cluster_id):
    """Precompute reading annotations for every article as focus."""
    _run_annotate(cfg, cluster_id)
    click.echo(f"annotated '{cluster_id}'")


def _run_annotate(cfg: PipelineConfig, cluster_id):
    doc = _load_doc(cfg, cluster_id)
    try:
        _require_stage(doc, "sentence_links")
    except StageMissingError as e:
        raise click.ClickException(str(e))
    annotations = {}
    for article in doc.cluster.articles:
        annotated = annotate_article(doc.cluster, doc.sentence_links, article.article_id)
        annotations[article.article_id] = annotated.to_dict()
    doc.annotations = annotations
    _store(cfg).save(doc)


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.pass_obj
def run(cfg: PipelineConfig, manifest):
    """Full pipeline: ingest, extract, filter, link, annotate."""
    cluster_id = _run_ingest(cfg, manifest)
    _run_extract(cfg, cluster_id)
    _run_filter(cfg, cluster_id)
    _run_link(cfg, cluster_id)
    _run_annotate(cfg, cluster_id)
    click.echo(f"pipeline complete for '{cluster_id}'")


@main.command()
@click.option("--method", type=click.Choice(["es", "leo"]), required=True)
@click.option("--threshold", type=float, default=None,
              help="Override the method's retain threshold.")
@click.option("--input", "input_file", type=click.Path(exists=True), required=True,
              help="NLI pairs file (JSONL or TSV of premise/hypothesis/label).")
@click.option("--negatives", type=int, default=500, show_default=True,
              help="Random negative pairs to sample.")
@click.option("--seed", type=int, default=None, help="Sampling seed (defaults to config seed).")
@click.option("--output", type=click.Path(), default=None, help="Write metrics JSON here.")
@click.pass_obj
def eval(cfg: PipelineConfig, method, threshold, input_file, negatives, seed, output):
    """Score a filtering method against an NLI-derived eval set."""
    method_name = _method_name(method)
    updates = {"method": method_name}
    if threshold is not None:
        key = "cosine_threshold" if method_name == EMBEDDING_SIMILARITY else "jaccard_threshold"
        updates[key] = threshold
    fcfg = dataclasses.replace(cfg.filter, **updates)
    eval_seed = cfg.seed if seed is None else seed
    eval_set = build_eval_set(input_file, n_negatives=negatives, seed=eval_seed)
    backend = None
    if method_name == EMBEDDING_SIMILARITY:
        backend = build_embedding_backend(cfg.embedding)
    metrics = evaluate_filter(eval_set, fcfg, backend)
    click.echo(metrics_table(metrics, method_name))
    payload = {"method": method_name, "pairs": len(eval_set), "seed": eval_seed}
    payload.update(metrics.to_dict())
    if output:
        Path(output).write_text(json.dumps(payload, indent=2) + "\n", "utf-8")
        click.echo(f"metrics written to {output}")
    else:
        click.echo(json.dumps(payload))


@main.command()
@click.pass_obj
def serve(cfg: PipelineConfig):
    """Serve cluster annotations over HTTP for the reader."""
    from .server import serve as run_server

    run_server(_store(cfg), cfg.server)


if __name__ == "__main__":
    sys.exit(main())
