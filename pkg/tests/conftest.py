import pytest
from importlib import resources

from skrates.source import load_source


def _bundled(name: str):
    return load_source(resources.files("skrates.data").joinpath(f"{name}.json").read_text())


@pytest.fixture(scope="session")
def motivating():
    """Three-user PIN: a on {1,2} (1 bit), b and c parallel on {2,3}."""
    return _bundled("motivating")


@pytest.fixture(scope="session")
def triangle():
    """Unit-weight triangle PIN."""
    return _bundled("triangle")


@pytest.fixture(scope="session")
def three_user_hyper():
    """a={1,2}, b={2,3}, c={1,2,3}, unit entropies."""
    return _bundled("three_user_hyper")


@pytest.fixture(scope="session")
def six_user_hyper():
    """Six-user hypergraph on four overlapping hyperedges a,b,c,d."""
    return _bundled("six_user_hyper")


@pytest.fixture(scope="session")
def tree_pin_4():
    """Path 1-2-3-4 with weights 2,1,3."""
    return _bundled("tree_pin_4")
