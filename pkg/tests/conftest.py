import pytest

from spin_epsilon import IsingParams, enumerate_ring


@pytest.fixture(scope="session")
def ring_cache():
    """Memoized ring enumerations shared across the whole test session."""
    cache = {}

    def get(J, B, T, n_half):
        key = (J, B, T, n_half)
        if key not in cache:
            cache[key] = enumerate_ring(IsingParams(J, B, T), n_half)
        return cache[key]

    return get
