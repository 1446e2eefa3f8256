"""
Tests for partitions, the Jordan types of nilpotent operators.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilop.errors import InvalidObjectError
from nilop.modules.partition import Partition, jordan_type_from_dims, partition_count, partitions

parts = st.lists(st.integers(1, 8), max_size=6).map(Partition.of)


@given(parts)
def test_conjugate_is_an_involution(lam):
    """Transposing the Young diagram twice gives it back."""
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(parts, st.integers(8, 10))
def test_syzygy_size(lam, n):
    """|Ω M| = n·b(M) - |M|."""
    assert lam.syzygy(n).size == n * lam.width - lam.size


def test_syzygy_drops_projective_parts():
    """Ω[n] = 0 and Ω[m] = [n - m]."""
    assert Partition.of([5, 3, 1]).syzygy(5) == Partition.of([4, 2])


def test_remove_drops_single_parts():
    """remove takes out copies one at a time; without takes out all of them."""
    lam = Partition.of([3, 3, 3, 1])
    assert lam.remove(3, 2) == Partition.of([3, 1])
    assert lam.without(3) == Partition.of([1])
    with pytest.raises(InvalidObjectError):
        lam.remove(1, 2)


def test_rejects_unsorted_parts():
    """Parts must be positive and weakly decreasing."""
    with pytest.raises(InvalidObjectError):
        Partition((1, 2))
    with pytest.raises(InvalidObjectError):
        Partition((2, 0))


def test_jordan_type_from_image_dims():
    """[3, 1] has rank sequence 4, 2, 1, 0."""
    assert jordan_type_from_dims([4, 2, 1, 0]) == Partition.of([3, 1])
    assert jordan_type_from_dims([0]) == Partition()


def test_partition_enumeration():
    """p(5) = 7, and bounded parts cut the list down."""
    assert partition_count(5) == 7
    assert len(list(partitions(5))) == 7
    assert [str(lam) for lam in partitions(4, 2)] == ["[2,2]", "[2,1,1]", "[1,1,1,1]"]


def test_durfee_rank_and_strong_decrease():
    """(5,5,4,3,1) has a 3 x 3 Durfee square; (7,4,1) is strongly decreasing."""
    assert Partition.of([5, 5, 4, 3, 1]).durfee_rank() == 3
    assert Partition.of([7, 4, 1]).is_strongly_decreasing()
    assert not Partition.of([7, 6]).is_strongly_decreasing()
