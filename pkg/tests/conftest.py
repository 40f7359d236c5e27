import glob
import os

import pytest

from namecast.ssa import load_ssa_corpus

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def ssa_paths():
    return sorted(glob.glob(os.path.join(FIXTURES, "ssa", "*.txt")))


@pytest.fixture(scope="session")
def ssa_stats(ssa_paths):
    return load_ssa_corpus(ssa_paths, min_year=1940)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
