import itertools
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from volrig import from_facets

settings.register_profile("volrig", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("volrig")


def random_pure_complexes(count, d, n_range, seed, spread=2):
    """Deterministic sample of pure d-complexes with facet counts near the basis size."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        faces = list(itertools.combinations(range(1, n + 1), d + 1))
        req = d * n - (d * d + d - 1)
        k = rng.randint(max(1, req - spread), min(len(faces), req + spread + 1))
        out.append(from_facets(n, rng.sample(faces, k)))
    return out


@pytest.fixture
def bipyramid():
    return from_facets(5, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)])


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[k])
