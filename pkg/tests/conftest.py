import pytest

from cdposets.corpus import base_corpus, eulerian_corpus, join_pairs


@pytest.fixture(scope="session")
def corpus():
    return eulerian_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    # just the directly constructed posets, small enough for brute force
    return [(name, p) for name, p in base_corpus() if p.num_elements <= 60]


@pytest.fixture(scope="session")
def joins():
    return join_pairs()
