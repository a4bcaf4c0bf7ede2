import pytest

from reslat.enumeration import enumerate_residuated
from reslat.io import FIXTURES, load_fixture


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in FIXTURES}


@pytest.fixture(scope="session")
def small_corpus():
    """Every residuated lattice of size 2..5, labelled rl{k}-{i}."""
    out = []
    for k in range(2, 6):
        for i, L in enumerate(enumerate_residuated(k)):
            out.append((f"rl{k}-{i:03d}", L))
    return out


def named(L, *names):
    return frozenset(L.index(n) for n in names)
