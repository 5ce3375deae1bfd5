import pytest

import spanner1d as sp


@pytest.fixture(scope="session")
def instance():
    """Memoized (points, scheme, graph) triples shared across the session."""
    cache = {}

    def get(n, ell, model="uniform", seed=0):
        key = (n, ell, model, seed)
        if key not in cache:
            ps = sp.generate_points(n, model, seed)
            scheme = sp.build_scheme(n, ell)
            cache[key] = (ps, scheme, sp.build_spanner(ps, scheme))
        return cache[key]

    return get
