import sys
from pathlib import Path

import pytest

from skewlat.search import enumerate_models

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture(scope="session")
def skew_catalogs():
    """Skew lattices of sizes 1..5 up to isomorphism, keyed by size."""
    return {n: enumerate_models(n, "SKEW") for n in range(1, 6)}


@pytest.fixture(scope="session")
def small_skew_lattices(skew_catalogs):
    return [a for n in sorted(skew_catalogs) for a in skew_catalogs[n].algebras]


@pytest.fixture(scope="session")
def fixture_dir():
    return ROOT / "fixtures"
