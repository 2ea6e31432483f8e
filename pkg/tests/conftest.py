import pytest

from qstarlike import schwarz_corpus


@pytest.fixture(scope="session")
def corpus():
    """The standard 200-polynomial oracle corpus (shared, deterministic)."""
    return schwarz_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return schwarz_corpus(ks=(1, 2, 3), seeds_per_k=6)
