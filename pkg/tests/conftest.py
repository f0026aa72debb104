import random
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
DATA_DIR = TESTS_DIR / "data"
STORY_MANIFEST = DATA_DIR / "story" / "manifest.json"
GOLDEN_CLUSTER = DATA_DIR / "golden_cluster.json"

sys.path.insert(0, str(TESTS_DIR))


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def story_manifest() -> Path:
    return STORY_MANIFEST


@pytest.fixture
def rng() -> random.Random:
    return random.Random(13)
