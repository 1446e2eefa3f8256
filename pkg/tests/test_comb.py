"""
Tests for picket and bipicket codes, cyclic-subspace objects and the counting formulas.
"""

import itertools
import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilop.errors import InvalidObjectError
from nilop.modules.artrans import tau
from nilop.modules.comb import (
    BipicketCode,
    PicketCode,
    SubsetCode,
    bipicket_codes,
    count,
    dense_orbit_summands,
    enumerate_count,
    extended_picket,
    fibonacci,
    is_picket_or_thin_bipicket,
    make_bipicket,
    make_C_lambda,
    make_cyclic_sub,
    make_picket,
    object_count,
    picket_codes,
    picket_tau_triple,
    strongly_decreasing,
    subset_from_heights,
    subset_lambda_bijection,
    t_height_map,
    t_height_sequence,
)
from nilop.modules.homs import enumerate_indecomposables, is_indecomposable, is_isomorphic
from nilop.modules.pair import PartitionTriple, partition_triple
from nilop.modules.partition import Partition
from nilop.ops import rank_mod
from nilop.output import CountKind

slow = pytest.mark.skipif(not os.environ.get("NILOP_SLOW"), reason="set NILOP_SLOW=1 for slow checks")

WORKED = SubsetCode.of([2, 3, 5, 6, 8, 9])

subsets = st.sets(st.integers(1, 8), min_size=1).map(SubsetCode.of)


def test_worked_subset_code():
    """E = {2,3,5,6,8,9}: e = (2,3,5), d = (1,3,4), λ = (5,5,4,3,1), H = (1,2,5,7,8)."""
    assert WORKED.e == (2, 3, 5)
    assert WORKED.d == (1, 3, 4)
    assert WORKED.is_radical()
    assert subset_lambda_bijection(WORKED) == Partition.of([5, 5, 4, 3, 1])
    assert t_height_map(WORKED) == (1, 2, 5, 7, 8)


@given(subsets)
def test_subset_bijections_invert(E):
    """E -> λ(E) -> E and E -> H(E) -> E."""
    assert subset_lambda_bijection(subset_lambda_bijection(E)) == E
    assert subset_from_heights(t_height_map(E)) == E


def test_perimeter_bound():
    """λ = (5,5,4,3,1) has perimeter 9."""
    lam = Partition.of([5, 5, 4, 3, 1])
    assert subset_lambda_bijection(lam, 9) == WORKED
    with pytest.raises(InvalidObjectError):
        subset_lambda_bijection(lam, 8)


def test_cyclic_sub_heights():
    """The generator of M(E) has T-height sequence H(E)."""
    X = make_cyclic_sub(WORKED, 9, 2)
    assert X.lam == Partition.of([9, 6, 3])
    assert t_height_sequence(X, X.gens[0]) == t_height_map(WORKED)


def test_picket_codes():
    """Codes of S(n) are the pickets; rotation has order three."""
    codes = picket_codes(3)
    assert len(codes) == count(CountKind.PICKETS, n=3) == 9
    code = PicketCode(1, 2, 0)
    assert code.rotate().rotate().rotate() == code
    assert partition_triple(make_picket(code, 2)) == code.par == PartitionTriple.of([2], [2], [])
    assert str(code) == "1\\2\\0"


def test_picket_tau_on_interior_codes():
    """τ of a picket with all three entries positive agrees with its code formula."""
    for code in picket_codes(4):
        if code.is_boundary():
            continue
        X = make_picket(code, 2)
        assert partition_triple(tau(X)) == picket_tau_triple(code)


def test_bipickets():
    """B(1,0,1,0,1) is E_2^2; every bipicket realizes its triple and is indecomposable."""
    code = BipicketCode(1, 0, 1, 0, 1)
    assert code.par == PartitionTriple.of([2], [3, 1], [2])
    assert partition_triple(extended_picket(2, 2, 2)) == code.par
    assert bipicket_codes(3) == [code]
    for code in bipicket_codes(5):
        X = make_bipicket(code, 2)
        assert partition_triple(X) == code.par
        assert is_indecomposable(X)
    with pytest.raises(InvalidObjectError):
        BipicketCode(0, 1, 1, 1, 1)


def test_thin_bipickets():
    """B(c1,0,c3,0,c5) is thin; B(1,1,1,0,1) is not."""
    assert is_picket_or_thin_bipicket(PartitionTriple.of([2], [3, 1], [2]))
    assert is_picket_or_thin_bipicket(PartitionTriple.of([1], [2], [1]))
    assert not is_picket_or_thin_bipicket(BipicketCode(1, 1, 1, 0, 1).par)


def test_c_lambda():
    """C_(5,3,1) has a cyclic U of dimension 3."""
    X = make_C_lambda(Partition.of([5, 3, 1]), 5, 2)
    assert X.u_dim == 3
    with pytest.raises(InvalidObjectError):
        make_C_lambda(Partition.of([5, 4]), 5, 2)


def test_strongly_decreasing_partitions_are_counted_by_fibonacci():
    """F_(n+2) - 1 strongly decreasing partitions are bounded by n."""
    assert [fibonacci(k) for k in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    for n in range(1, 9):
        assert len(strongly_decreasing(n)) == fibonacci(n + 2) - 1
    assert strongly_decreasing(3) == [Partition.of([1]), Partition.of([2]), Partition.of([3, 1]), Partition.of([3])]


@pytest.mark.parametrize(
    "kind,params",
    [
        (CountKind.PICKETS, {"n": 5}),
        (CountKind.PICKETS_HEIGHT_N, {"n": 5}),
        (CountKind.BIPICKETS, {"n": 6}),
        (CountKind.BIPICKETS_HEIGHT_N, {"n": 6}),
        (CountKind.CYCLIC_BY_HEIGHT, {"n": 6}),
        (CountKind.CYCLIC_TOTAL, {"n": 6}),
        (CountKind.CYCLIC_HW, {"n": 7, "b": 2}),
        (CountKind.CYCLIC_HW_RADICAL, {"n": 7, "b": 2}),
        (CountKind.CYCLIC_HW_NONRADICAL, {"n": 7, "b": 2}),
        (CountKind.CYCLIC_U_HEIGHT, {"n": 7, "u": 3}),
        (CountKind.CYCLIC_U_HEIGHT_TOTAL, {"n": 7, "u": 3}),
        (CountKind.CYCLIC_UB, {"n": 7, "u": 4, "b": 2}),
        (CountKind.CYCLIC_BY_DIM, {"v": 7}),
        (CountKind.FIBONACCI_P1, {"n": 7}),
        (CountKind.GRID_PATHS, {"a": 3, "c": 4}),
        (CountKind.GRID_PATHS_VIA, {"a": 4, "c": 4, "b": 2}),
    ],
)
def test_closed_forms_match_enumeration(kind, params):
    """Each closed form agrees with a direct count."""
    assert count(kind, **params) == enumerate_count(kind, **params)


def test_count_errors():
    """Unknown kinds and missing parameters are reported."""
    with pytest.raises(ValueError, match="Unknown count kind"):
        count("triangles", n=3)
    with pytest.raises(InvalidObjectError):
        count(CountKind.CYCLIC_HW, n=3)


def test_dense_orbit_summands():
    """The generic (2, 4) embedding in S(3) is E_2^2."""
    assert dense_orbit_summands(3, 2, 4) == [(PartitionTriple.of([2], [3, 1], [2]), 1)]
    assert dense_orbit_summands(3, 3, 6) == [
        (PartitionTriple.of([3], [3], []), 1),
        (PartitionTriple.of([], [3], [3]), 1),
    ]


def object_cases(n: int) -> list[tuple[str, dict[str, int]]]:
    widths = range(1, (n + 3) // 2)
    heights = range(1, n + 1)
    cases = [(CountKind.CYCLIC_TOTAL, {"n": n}), (CountKind.CYCLIC_BY_HEIGHT, {"n": n})]
    for kind in (CountKind.CYCLIC_HW, CountKind.CYCLIC_HW_RADICAL, CountKind.CYCLIC_HW_NONRADICAL):
        cases += [(kind, {"n": n, "b": b}) for b in widths]
    for kind in (CountKind.CYCLIC_U_HEIGHT, CountKind.CYCLIC_U_HEIGHT_TOTAL):
        cases += [(kind, {"n": n, "u": u}) for u in heights]
    cases += [(CountKind.CYCLIC_UB, {"n": n, "u": u, "b": b}) for u in heights for b in widths]
    return cases


@pytest.mark.parametrize("n,vmax", [(2, 2), (3, 4)])
def test_cyclic_counts_match_enumerated_objects(n, vmax):
    """The cyclic counts agree with the classes found by brute-force enumeration."""
    objects = enumerate_indecomposables(n, vmax, 2, cyclic_only=True)
    for kind, params in object_cases(n):
        assert object_count(kind, objects, **params) == count(kind, **params), (kind, params)


def test_cyclic_counts_in_s3_by_hand():
    """Radical and non-radical objects of height 3: ([1],[3]), ([2],[3]) against ([3],[3]), E_2^2."""
    objects = enumerate_indecomposables(3, 4, 2, cyclic_only=True)
    assert object_count(CountKind.CYCLIC_HW_RADICAL, objects, n=3, b=1) == 2
    assert object_count(CountKind.CYCLIC_HW_NONRADICAL, objects, n=3, b=1) == 1
    assert object_count(CountKind.CYCLIC_HW_NONRADICAL, objects, n=3, b=2) == 1
    assert object_count(CountKind.CYCLIC_U_HEIGHT_TOTAL, objects, n=3, u=2) == 3
    with pytest.raises(ValueError, match="Unknown cyclic count kind"):
        object_count(CountKind.PICKETS, objects, n=3)


@slow
def test_cyclic_counts_match_enumerated_objects_in_s4():
    """The same comparison in S(4), where the largest cyclic object has |V| = 6."""
    objects = enumerate_indecomposables(4, 6, 2, cyclic_only=True)
    for kind, params in object_cases(4):
        assert object_count(kind, objects, **params) == count(kind, **params), (kind, params)


def test_cyclic_subspace_objects_are_distinct():
    """M(E) for the fifteen E in {1..4}: indecomposable, cyclic U, pairwise non-isomorphic."""
    objects = [make_cyclic_sub(E, 4, 2) for E in _subsets_of(4)]
    assert len(objects) == count(CountKind.CYCLIC_TOTAL, n=4)
    for X in objects:
        assert is_indecomposable(X)
        assert X.u_dim - rank_mod(X.u_basis @ X.operator, 2) == 1
    for X, Y in itertools.combinations(objects, 2):
        assert not is_isomorphic(X, Y)


def _subsets_of(n: int) -> list[SubsetCode]:
    return [SubsetCode.of(E) for r in range(1, n + 1) for E in itertools.combinations(range(1, n + 1), r)]
