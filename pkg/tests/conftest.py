import os
import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from coneval.exact_linalg import rank

settings.register_profile(
    "default", max_examples=int(os.environ.get("CONEVAL_EXAMPLES", "40")), deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def int_vectors(d, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=d, max_size=d).map(tuple).filter(any)


def whitney_subset_poly(normals, d):
    """Unsigned characteristic polynomial by Whitney's subset expansion."""
    coeffs = [0] * (d + 1)
    for m in range(len(normals) + 1):
        for s in combinations(normals, m):
            r = rank(list(s)) if s else 0
            coeffs[d - r] += (-1) ** (m - r)
    # signs alternate as (-1)^(d - k) in the signed polynomial
    return [abs(c) for c in coeffs]


@pytest.fixture
def rng():
    return random.Random(1234)
