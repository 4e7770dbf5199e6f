import random

import pytest

from coxspec import Graph


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform-ish random labeled tree: each new vertex attaches to a
    uniformly chosen earlier one."""
    vertices = [f"t{i}" for i in range(n)]
    edges = [(vertices[rng.randrange(i)], vertices[i]) for i in range(1, n)]
    return Graph(vertices, edges)


@pytest.fixture
def rng():
    return random.Random(20240811)
