import json
from pathlib import Path

import pytest

from stablepoly.instances import Instance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def single_edge():
    """One man, one woman, one edge. The region is the point {1}."""
    return Instance(1, 1, ((0,),), ((0,),))


@pytest.fixture
def opposed2():
    """2x2 where each side's favourites disagree: two stable matchings."""
    return Instance(2, 2, ((0, 1), (1, 0)), ((1, 0), (0, 1)))


@pytest.fixture
def opposed4():
    """Two opposed 2x2 blocks side by side: four stable matchings.

    Picking the A-best half of one block and the B-best half of the
    other gives a stable pair whose difference components lean opposite
    ways, which is what the non-adjacency tests need.
    """
    return Instance(
        4,
        4,
        ((0, 1), (1, 0), (2, 3), (3, 2)),
        ((1, 0), (0, 1), (3, 2), (2, 3)),
    )


@pytest.fixture
def witness_fixture():
    with open(FIXTURES / "witness_pair.json") as fh:
        return json.load(fh)
