#!/usr/bin/env python3
"""Regenerate the end-to-end golden outputs from the checked-in story
fixture using the all-stub profile:

  tests/data/golden_cluster.json          full pipeline cluster document
  frontend/tests/fixtures/annotated_article.json   focus-article annotation
  frontend/tests/fixtures/cluster_meta.json        cluster + article listings

Run from the repository root after any intentional pipeline change, then
review the diff before committing.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from click.testing import CliRunner  # noqa: E402

from claimlink.cli import main  # noqa: E402

MANIFEST = ROOT / "tests" / "data" / "story" / "manifest.json"
GOLDEN = ROOT / "tests" / "data" / "golden_cluster.json"
FRONTEND_FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def run_pipeline(data_dir: Path) -> Path:
    result = CliRunner().invoke(
        main, ["--data-dir", str(data_dir), "run", str(MANIFEST)]
    )
    if result.exit_code != 0:
        raise SystemExit(f"pipeline failed:\n{result.output}")
    return data_dir / "clusters" / "harbor-bridge.json"


def main_():
    with tempfile.TemporaryDirectory() as td1, tempfile.TemporaryDirectory() as td2:
        first = run_pipeline(Path(td1))
        second = run_pipeline(Path(td2))
        if first.read_bytes() != second.read_bytes():
            raise SystemExit("pipeline output is not byte-stable across runs")
        shutil.copyfile(first, GOLDEN)
        print(f"wrote {GOLDEN}")

        doc = json.loads(first.read_text("utf-8"))
        if FRONTEND_FIXTURES.parent.parent.is_dir():
            FRONTEND_FIXTURES.mkdir(parents=True, exist_ok=True)
            annotated = doc["annotations"]["a000"]
            (FRONTEND_FIXTURES / "annotated_article.json").write_text(
                json.dumps(annotated, indent=2, ensure_ascii=False) + "\n", "utf-8"
            )
            meta = {
                "clusters": [
                    {
                        "cluster_id": doc["cluster_id"],
                        "story_title": doc["story_title"],
                        "article_count": len(doc["articles"]),
                    }
                ],
                "articles": [
                    {
                        "article_id": a["article_id"],
                        "url": a["url"],
                        "venue": a["venue"],
                        "title": a["title"],
                        "sentence_count": len(a["sentences"]),
                    }
                    for a in doc["articles"]
                ],
                "annotations": doc["annotations"],
            }
            (FRONTEND_FIXTURES / "cluster_meta.json").write_text(
                json.dumps(meta, indent=2, ensure_ascii=False) + "\n", "utf-8"
            )
            print(f"wrote fixtures under {FRONTEND_FIXTURES}")


if __name__ == "__main__":
    main_()
