import random

import pytest

from k3lat.isometry import compose, identity_isometry, reflection_isometry
from k3lat.lattice import build_named, direct_sum, enumerate_vectors_of_norm, parse_construct, twist


@pytest.fixture(scope="session")
def U():
    return build_named("U")


@pytest.fixture(scope="session")
def U2E8():
    """U + U + E8(-1): rank 12, even, unimodular, Witt index 2."""
    return parse_construct("U+U+E8(-1)")


@pytest.fixture(scope="session")
def U2E8_roots(U2E8):
    return enumerate_vectors_of_norm(U2E8, -2, 1)


@pytest.fixture(scope="session")
def k3_lattice():
    return parse_construct("U+U+U+E8(-1)+E8(-1)")


def e8m2_ns(l_square):
    """Z l + E8(-2)."""
    from k3lat.lattice import IntegerLattice

    return direct_sum(IntegerLattice(((l_square,),)), twist(build_named("E8_MINUS"), 2))


def random_word_isometry(lat, pool, rng, max_len):
    g = identity_isometry(lat)
    word = [rng.choice(pool) for _ in range(rng.randint(1, max_len))]
    for d in word:
        g = compose(g, reflection_isometry(lat, d))
    return g, word


@pytest.fixture
def rng():
    return random.Random(20261015)
