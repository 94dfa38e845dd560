import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


def random_ternary(rng, rows, cols):
    """Random valid ternary matrix, returned as (codes array, matrix)."""
    from ternlight.ternary import TernaryMatrix, pack_trits

    codes = rng.integers(-1, 2, size=(rows, cols)).astype(np.int8)
    scale = float(rng.uniform(0.01, 3.0))
    return codes, TernaryMatrix(rows=rows, cols=cols, codes=pack_trits(codes), scale=scale)
