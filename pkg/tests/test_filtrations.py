"""
Tests for telescope and nice filtrations.
"""

import numpy as np
import pytest

from nilop.errors import InvalidObjectError
from nilop.modules.comb import extended_picket
from nilop.modules.filtrations import (
    is_extended_picket,
    is_pure,
    nice_decomposition,
    nice_steps,
    split_zero_pickets,
    telescope,
)
from nilop.modules.pair import PartitionTriple, direct_sum, picket, random_pair, zero_pair
from nilop.modules.partition import Partition


def test_telescope_of_extended_picket():
    """E_2^2 filtered by its blocks: ([1],[3],[2]) then ([1],[1],[])."""
    steps = telescope(extended_picket(2, 2, 2))
    assert [step.index for step in steps] == [1, 2]
    assert [step.factor for step in steps] == [
        PartitionTriple.of([1], [3], [2]),
        PartitionTriple.of([1], [1], []),
    ]


def test_telescope_factors_add_up():
    """Factor sizes add up to |U| and the blocks of V in order."""
    for seed in range(10):
        X = random_pair(4, Partition.of([4, 3, 1]), 4, seed, 3)
        steps = telescope(X)
        assert sum(step.factor.uwb[0] for step in steps) == X.u_dim
        assert [step.factor.v_part[0] for step in steps] == list(X.lam)


def test_telescope_of_zero_object():
    """There is nothing to filter."""
    with pytest.raises(InvalidObjectError):
        telescope(zero_pair(3, 2))


def test_is_pure():
    """A block is a summand of V; the radical of a block is not."""
    X = picket(0, 3, 3, 2)
    Y = direct_sum(X, picket(0, 1, 3, 2))
    block = np.eye(4, dtype=np.int64)[:3]
    assert is_pure(Y, block)
    assert not is_pure(Y, np.eye(4, dtype=np.int64)[1:3])


def test_is_extended_picket():
    """([u],[u+w-1,1],[w]) and nothing else."""
    assert is_extended_picket(PartitionTriple.of([2], [3, 1], [2]))
    assert is_extended_picket(PartitionTriple.of([1], [3, 1], [3]))
    assert not is_extended_picket(PartitionTriple.of([2], [4, 2], [4]))
    assert not is_extended_picket(PartitionTriple.of([1], [2], [1]))


def test_split_zero_pickets():
    """Summands (0,[m]) are counted by their lengths."""
    X = direct_sum(picket(1, 2, 3, 2), picket(0, 3, 3, 2), picket(0, 1, 3, 2))
    core, zeros = split_zero_pickets(X)
    assert zeros == Partition.of([3, 1])
    assert core.dim == 2


def test_nice_decomposition_separates_height_one():
    """Summands of height one go to the second part."""
    X = direct_sum(picket(1, 3, 3, 2), picket(1, 1, 3, 2))
    decomposition = nice_decomposition(X)
    assert decomposition.height_one.dim == 1
    assert decomposition.factors == [PartitionTriple.of([1], [3], [2])]
    assert [step.factor for step in nice_steps(decomposition)] == decomposition.factors


def test_nice_filtration_keeps_extended_pickets():
    """E_2^2 has no filtration by pickets of height >= 2, so it is its own factor."""
    decomposition = nice_decomposition(extended_picket(2, 2, 2))
    assert decomposition.factors == [PartitionTriple.of([2], [3, 1], [2])]
    assert decomposition.height_one.is_zero()
