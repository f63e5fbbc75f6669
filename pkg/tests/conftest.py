import sys
from pathlib import Path

import pytest

# Ensure project root is on sys.path to allow ``import src`` in tests without installation.
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.config import config  # noqa: E402
from src.schur.table import load_or_build_table  # noqa: E402


@pytest.fixture(scope="session", autouse=True)
def table_cache(tmp_path_factory):
    """Redirect the table cache and outputs to a temporary directory."""
    cache = tmp_path_factory.mktemp("cache")
    outputs = tmp_path_factory.mktemp("outputs")
    old_cache, old_outputs = config.cache_dir, config.outputs_dir
    config.cache_dir, config.outputs_dir = cache, outputs
    yield cache
    config.cache_dir, config.outputs_dir = old_cache, old_outputs


@pytest.fixture(scope="session")
def table_2_1(table_cache):
    return load_or_build_table(2, 1, progress=False)


@pytest.fixture(scope="session")
def table_2_2(table_cache):
    return load_or_build_table(2, 2, progress=False)


@pytest.fixture(scope="session")
def table_2_4(table_cache):
    return load_or_build_table(2, 4, progress=False)
