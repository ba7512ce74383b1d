import itertools
import random

import pytest

from digifix import SelfMap, build_image, explicit
from digifix.acceptance import _small_pool


@pytest.fixture(scope="session")
def pool6():
    return _small_pool(6)


@pytest.fixture(scope="session")
def pool7():
    return _small_pool(7)


def brute_continuous_maps(image):
    """Oracle: every function checked with the edge characterization."""
    n = image.n
    return [f for f in itertools.product(range(n), repeat=n)
            if SelfMap(image, f).is_continuous()]


def random_image(rng: random.Random, max_n=7, p=None, connected=False):
    from digifix import is_connected
    while True:
        n = rng.randint(2, max_n)
        prob = p if p is not None else rng.uniform(0.25, 0.7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < prob]
        img = build_image(n, explicit(edges), name=f"rand{n}")
        if not connected or is_connected(img):
            return img
