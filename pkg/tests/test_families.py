"""
Tests for the named families of S(n).
"""

import os

import pytest

from nilop.errors import InvalidObjectError
from nilop.modules.artrans import central_object
from nilop.modules.families import (
    PARAM_ARITY,
    check_parameter,
    family,
    graded_family,
    interpolate_s7,
    interpolate_trapezoid,
    jordan_extension_standard,
)
from nilop.modules.homs import is_indecomposable, is_isomorphic
from nilop.modules.pair import partition_triple, uwb
from nilop.output import FamilyName

slow = pytest.mark.skipif(not os.environ.get("NILOP_SLOW"), reason="set NILOP_SLOW=1 for slow checks")


@pytest.mark.parametrize(
    "name,expected",
    [
        (FamilyName.STANDARD_S6, (6, 6, 3)),
        (FamilyName.S9_P1, (6, 24, 6)),
        (FamilyName.S7_610, (6, 10, 4)),
        (FamilyName.S7_S3_714, (7, 14, 5)),
        (FamilyName.S8_617, (6, 17, 5)),
        (FamilyName.WIDTH4_Y, (4, 10, 4)),
        (FamilyName.S7_D, (8, 8, 4)),
        (FamilyName.S7_E, (9, 7, 4)),
        (FamilyName.WIDTH6_A, (5, 1, 1)),
        (FamilyName.WIDTH6_B, (2, 2, 2)),
        (FamilyName.WIDTH6_BPRIME, (3, 6, 2)),
        (FamilyName.WIDTH6_C, (2, 3, 1)),
    ],
)
def test_family_dimensions(name, expected):
    """Each family member has its documented uwb-vector."""
    assert uwb(family(name, p=3)) == expected


def test_every_graded_family_is_graded():
    """Members with a grading expose a dimension vector over the same V."""
    for name in FamilyName.values():
        if name == FamilyName.CENTRAL:
            continue
        M = graded_family(name, p=2)
        x = M.dim_vector()
        assert sum(x.bottom) == M.pair.dim
        assert sum(x.top) == M.pair.u_dim


def test_standard_family_members_are_indecomposable_and_distinct():
    """Two generic M_c over F_3: indecomposable with equal triples, yet not isomorphic."""
    members = [family(FamilyName.STANDARD_S6, c, p=3) for c in [(1, 1), (2, 1)]]
    for X in members:
        assert is_indecomposable(X)
    assert not is_isomorphic(members[0], members[1])
    assert len({str(partition_triple(X)) for X in members}) == 1


@pytest.mark.parametrize("name", [name for name, arity in PARAM_ARITY.items() if arity == 2])
def test_p1_family_members_are_distinct(name):
    """Two generic members over F_3 are indecomposable and not isomorphic."""
    X, Y = (family(name, c, p=3) for c in [(1, 1), (2, 1)])
    assert is_indecomposable(X)
    assert is_indecomposable(Y)
    assert not is_isomorphic(X, Y)


def test_homogeneous_scaling():
    """M_c(6 ell) scales V and U by ell."""
    X = family(FamilyName.HOMOGENEOUS_S6L, (1, 1), p=2, ell=2)
    assert uwb(X) == (12, 12, 6)
    assert X.n == 12


def test_jordan_extension():
    """M_c[2] has twice the dimensions of M_c and is indecomposable."""
    X = jordan_extension_standard((1, 1), 2, 2)
    assert uwb(X) == (12, 12, 6)
    assert is_indecomposable(X)


def test_s12_takes_a_plane_point():
    """The P^2 family has three parameter coordinates."""
    assert PARAM_ARITY[FamilyName.S12_P2] == 3
    assert uwb(family(FamilyName.S12_P2, (1, 0, 1), p=2)) == (8, 44, 8)


def test_central_family():
    """The central member needs no parameter."""
    X = family(FamilyName.CENTRAL, p=2, n=8)
    assert partition_triple(X) == partition_triple(central_object(8, 2))
    with pytest.raises(InvalidObjectError):
        graded_family(FamilyName.CENTRAL)


def test_parameter_checks():
    """Wrong arity, the zero vector and unknown names are rejected."""
    assert check_parameter(FamilyName.STANDARD_S6, None, 5) == (1, 1)
    assert check_parameter(FamilyName.WIDTH4_Y, (7,), 5) == (2,)
    with pytest.raises(InvalidObjectError):
        check_parameter(FamilyName.STANDARD_S6, (1,), 5)
    with pytest.raises(InvalidObjectError):
        check_parameter(FamilyName.STANDARD_S6, (0, 5), 5)
    with pytest.raises(ValueError, match="Unknown family"):
        check_parameter("s5_p1", None, 5)
    with pytest.raises(InvalidObjectError):
        family(FamilyName.STANDARD_S6, p=2, ell=0)


def test_interpolation_of_s7_objects():
    """One copy of each kind reproduces the three corner objects."""
    assert uwb(interpolate_s7(0, 1, 0, (1, 1), 2)) == (8, 8, 4)
    assert uwb(interpolate_s7(1, 0, 0, (1, 1), 2)) == (8, 7, 3)
    assert uwb(interpolate_s7(0, 0, 1, (1, 1), 2)) == (7, 8, 3)
    with pytest.raises(InvalidObjectError):
        interpolate_s7(0, 0, 0, (1, 1), 2)


def test_trapezoid_interpolation():
    """Factoring out x4 removes (0, 1, 1) per copy."""
    assert uwb(interpolate_trapezoid(1, 0, 0, (1, 1), 2)) == (8, 8, 4)
    assert uwb(interpolate_trapezoid(0, 1, 1, (1, 1), 2)) == (9, 6, 3)
    with pytest.raises(InvalidObjectError):
        interpolate_trapezoid(1, 0, 2, (1, 1), 2)


@slow
def test_two_copy_interpolation_is_indecomposable():
    """Coupling two copies through R_c[2] keeps the object indecomposable."""
    X = interpolate_s7(1, 1, 0, (1, 1), 2)
    assert uwb(X) == (16, 15, 7)
    assert is_indecomposable(X)
