import random

import pytest

from twhier.errors import SizeCapExceeded
from twhier.monoid import make_monoid, transition_monoid

CORPUS_SEED = 20260809


def standard_monoids():
    """Small named monoids used across the suite."""
    trivial = make_monoid([[0]], 0, labels=["1"])
    # identity plus two right-zero elements: x*y = y on {a, b}
    right_zero = make_monoid([[0, 1, 2], [1, 1, 2], [2, 1, 2]], 0,
                             labels=["1", "a", "b"])
    # identity plus two left-zero elements: x*y = x on {a, b}
    left_zero = make_monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0,
                            labels=["1", "a", "b"])
    z2 = make_monoid([[0, 1], [1, 0]], 0, labels=["0", "1"])
    z3 = make_monoid([[0, 1, 2], [1, 2, 0], [2, 0, 1]], 0)
    return {
        "trivial": trivial,
        "right_zero": right_zero,
        "left_zero": left_zero,
        "z2": z2,
        "z3": z3,
    }


def random_transition_monoids(count, seed=CORPUS_SEED, max_points=5,
                              max_gens=3, size_cap=60):
    """Deterministic corpus of transition monoids within the size cap."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        points = rng.randint(2, max_points)
        n_gens = rng.randint(1, max_gens)
        gens = [tuple(rng.randrange(points) for _ in range(points))
                for _ in range(n_gens)]
        try:
            monoid, _ = transition_monoid(points, gens, cap=size_cap)
        except SizeCapExceeded:
            continue
        out.append(monoid)
    return out


@pytest.fixture(scope="session")
def named():
    return standard_monoids()


@pytest.fixture(scope="session")
def corpus():
    """The full acceptance corpus: 200 monoids, size <= 60."""
    return random_transition_monoids(200)


@pytest.fixture(scope="session")
def quick_corpus():
    return random_transition_monoids(40, seed=CORPUS_SEED + 1)
