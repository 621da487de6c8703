import functools
import random

import pytest
from hypothesis import strategies as st

from monoidtopos import actions as A
from monoidtopos.monoid import enumerate_monoids


@functools.lru_cache(maxsize=None)
def monoids_of_order(n):
    return tuple(enumerate_monoids(n))


def small_monoids(max_order=4):
    return [M for n in range(1, max_order + 1) for M in monoids_of_order(n)]


def random_mset(M, rng, max_size=5):
    """A random M-set: the equivariant quotient of a random free M-set on 1 or 2 generators."""
    gens = rng.randint(1, 2)
    F = A.regular(M)
    for _ in range(gens - 1):
        F, _, _ = A.coproduct(F, A.regular(M))
    while True:
        pairs = [(rng.randrange(F.size), rng.randrange(F.size)) for _ in range(rng.randint(0, 3))]
        labels = A.equivariant_closure(F, pairs)
        X, _ = A.quotient_by_labels(F, labels)
        if X.size <= max_size:
            return X
        # collapse more until the quotient is small enough
        F = X


def monoid_ids(ms):
    return [f"n{M.size}_{i}" for i, M in enumerate(ms)]


@pytest.fixture(scope="session")
def order4():
    return small_monoids(4)


monoid_strategy = st.sampled_from(small_monoids(3) + list(monoids_of_order(4)))
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_from(seed):
    return random.Random(seed)


# ---------------------------------------------------------------- acceptance reporting

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
