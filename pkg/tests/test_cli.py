import json

import pytest
from click.testing import CliRunner

from claimlink.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, tmp_path, *args):
    return runner.invoke(main, ["--data-dir", str(tmp_path), *args])


def test_staged_pipeline(runner, tmp_path, story_manifest):
    assert _run(runner, tmp_path, "ingest", str(story_manifest)).exit_code == 0
    assert (tmp_path / "clusters" / "harbor-bridge.json").is_file()
    assert _run(runner, tmp_path, "extract", "harbor-bridge").exit_code == 0
    assert _run(runner, tmp_path, "filter", "harbor-bridge").exit_code == 0
    assert _run(runner, tmp_path, "link", "harbor-bridge").exit_code == 0
    assert _run(runner, tmp_path, "annotate", "harbor-bridge").exit_code == 0

    doc = json.loads((tmp_path / "clusters" / "harbor-bridge.json").read_text())
    assert {"claims", "candidates", "links", "sentence_links", "annotations"} <= set(doc)


def test_filter_before_extract_errors(runner, tmp_path, story_manifest):
    _run(runner, tmp_path, "ingest", str(story_manifest))
    result = _run(runner, tmp_path, "filter", "harbor-bridge")
    assert result.exit_code != 0
    assert "claims missing; run extract" in result.output


def test_link_before_filter_errors(runner, tmp_path, story_manifest):
    _run(runner, tmp_path, "ingest", str(story_manifest))
    _run(runner, tmp_path, "extract", "harbor-bridge")
    result = _run(runner, tmp_path, "link", "harbor-bridge")
    assert result.exit_code != 0
    assert "candidates missing; run filter" in result.output


def test_annotate_before_link_errors(runner, tmp_path, story_manifest):
    _run(runner, tmp_path, "ingest", str(story_manifest))
    result = _run(runner, tmp_path, "annotate", "harbor-bridge")
    assert result.exit_code != 0
    assert "links missing; run link" in result.output


def test_unknown_cluster_names_ingest(runner, tmp_path):
    result = _run(runner, tmp_path, "extract", "missing-cluster")
    assert result.exit_code != 0
    assert "run ingest first" in result.output


def test_run_produces_full_document(runner, tmp_path, story_manifest):
    result = _run(runner, tmp_path, "run", str(story_manifest))
    assert result.exit_code == 0
    doc = json.loads((tmp_path / "clusters" / "harbor-bridge.json").read_text())
    labels = [l["label"] for l in doc["links"]]
    assert labels.count("entailment") == 10
    assert labels.count("contradiction") == 10


def test_run_twice_identical_bytes(runner, tmp_path, story_manifest):
    _run(runner, tmp_path, "run", str(story_manifest))
    first = (tmp_path / "clusters" / "harbor-bridge.json").read_bytes()
    _run(runner, tmp_path, "run", str(story_manifest))
    second = (tmp_path / "clusters" / "harbor-bridge.json").read_bytes()
    assert first == second


def test_rerunning_a_stage_only_overwrites_downstream(runner, tmp_path, story_manifest):
    _run(runner, tmp_path, "run", str(story_manifest))
    # re-filtering invalidates links/annotations but keeps claims
    result = _run(runner, tmp_path, "filter", "harbor-bridge")
    assert result.exit_code == 0
    doc = json.loads((tmp_path / "clusters" / "harbor-bridge.json").read_text())
    assert "claims" in doc and "candidates" in doc
    assert "links" not in doc and "annotations" not in doc


def test_method_flag_switches_filter(runner, tmp_path, story_manifest):
    _run(runner, tmp_path, "run", str(story_manifest))
    doc = json.loads((tmp_path / "clusters" / "harbor-bridge.json").read_text())
    assert all(c["method"] == "embedding_similarity" for c in doc["candidates"])

    result = runner.invoke(
        main, ["--data-dir", str(tmp_path), "--method", "leo", "filter", "harbor-bridge"]
    )
    assert result.exit_code == 0
    doc = json.loads((tmp_path / "clusters" / "harbor-bridge.json").read_text())
    assert all(c["method"] == "lexical_overlap" for c in doc["candidates"])


def test_eval_command_writes_metrics(runner, tmp_path, data_dir):
    out = tmp_path / "metrics.json"
    result = runner.invoke(
        main,
        [
            "eval",
            "--method", "leo",
            "--input", str(data_dir / "nli_eval_small.jsonl"),
            "--negatives", "100",
            "--seed", "13",
            "--output", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    assert "precision" in result.output
    payload = json.loads(out.read_text())
    assert payload["method"] == "lexical_overlap"
    assert payload["pairs"] == 200
    assert 0.0 <= payload["recall"] <= 1.0


def test_eval_threshold_override(runner, tmp_path, data_dir):
    result = runner.invoke(
        main,
        [
            "eval",
            "--method", "leo",
            "--threshold", "1.0",
            "--input", str(data_dir / "nli_eval_small.jsonl"),
            "--negatives", "0",
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output.strip().splitlines()[-1])
    # threshold 1.0 only keeps exact-set matches, well below recall at 0.1
    assert payload["recall"] < 0.7


def test_bad_flag_value_fails_cleanly(runner, tmp_path, story_manifest):
    result = runner.invoke(
        main,
        ["--data-dir", str(tmp_path), "--cosine-threshold", "7", "run", str(story_manifest)],
    )
    assert result.exit_code != 0
    assert "cosine_threshold" in result.output


def test_env_var_data_dir(runner, tmp_path, story_manifest, monkeypatch):
    monkeypatch.setenv("CLAIMLINK_DATA_DIR", str(tmp_path / "from-env"))
    result = runner.invoke(main, ["ingest", str(story_manifest)])
    assert result.exit_code == 0
    assert (tmp_path / "from-env" / "clusters" / "harbor-bridge.json").is_file()
