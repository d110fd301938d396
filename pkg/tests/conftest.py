import random

import pytest

from hnzz.linalg import GF, QQ, Matrix, random_invertible_rng
from hnzz.quiver import Quiver, Representation


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_path_quiver(n: int, rng: random.Random) -> Quiver:
    """Path on 0..n-1 with random edge orientations."""
    edges = []
    for k in range(n - 1):
        edges.append((k, k + 1) if rng.random() < 0.5 else (k + 1, k))
    return Quiver(n, tuple(edges))


def random_zigzag_rep(rng: random.Random, max_n=4, max_dim=3, fields=(2, 3, 5)) -> Representation:
    """Random representation of a random-orientation path quiver."""
    n = rng.randint(1, max_n)
    p = rng.choice(fields)
    fld = GF(p) if p else QQ
    q = random_path_quiver(n, rng)
    dims = tuple(rng.randint(0, max_dim) for _ in range(n))
    mats = []
    for src, dst in q.edges:
        mats.append(
            Matrix(
                fld,
                [[rng.randrange(p) for _ in range(dims[src])] for _ in range(dims[dst])],
                dims[src],
            )
        )
    return Representation(q, fld, dims, tuple(mats))


def conjugating_bases(rep: Representation, rng: random.Random):
    return [random_invertible_rng(d, rep.field, rng) for d in rep.dims]
