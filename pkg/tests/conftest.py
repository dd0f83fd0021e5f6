from functools import lru_cache
from fractions import Fraction

import pytest

from oddlib.formats import FPFormat, enumerate_finite, value_of
from oddlib.generator import GenerationConfig, generate


@lru_cache(maxsize=None)
def generated(func, n, ebits, max_degree=8, max_pieces=64):
    """Generation is deterministic, so one build per configuration is shared."""
    return generate(GenerationConfig(func, n, ebits, max_degree=max_degree,
                                     max_pieces=max_pieces))


@lru_cache(maxsize=None)
def sorted_values(fmt):
    """Finite values of fmt in increasing order, computed by decoding every pattern."""
    return tuple(sorted({value_of(b) for b in enumerate_finite(fmt)}))


def brute_neighbours(fmt, v):
    """(largest value <= v, smallest value >= v) among the finite values of fmt."""
    vals = sorted_values(fmt)
    below = max((w for w in vals if w <= v), default=None)
    above = min((w for w in vals if w >= v), default=None)
    return below, above


@pytest.fixture(scope="session")
def ln_small():
    return generated("ln", 5, 2, max_degree=4, max_pieces=1)


F52 = FPFormat(5, 2)
F72 = FPFormat(7, 2)
HALF = Fraction(1, 2)
