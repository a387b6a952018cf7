"""Shared corpora for the heavier end-to-end suites."""

import pytest

from blockinv.generators import GenSpec, gen_cactoid, gen_tree


@pytest.fixture(scope="session")
def cactoid_corpus():
    """200 positive-weight cactoids of varied block structure."""
    out = []
    for seed in range(200):
        spec = GenSpec(
            seed=seed,
            block_count=1 + seed % 5,
            cycle_length_range=(2, 6),
            weight_kind="positive",
            bound=10,
        )
        out.append((spec, gen_cactoid(spec)))
    return out


@pytest.fixture(scope="session")
def tree_corpus():
    """Ten random trees for every order from 2 to 10."""
    return [
        (n, seed, gen_tree(n, seed=seed))
        for n in range(2, 11)
        for seed in range(10)
    ]
