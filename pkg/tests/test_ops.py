"""
Tests for the exact linear algebra over F_p.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilop.ops import (
    PrimeFieldScalar,
    in_row_space,
    intersect_rows,
    inv_mod_mat,
    is_nilpotent,
    is_prime,
    left_nullspace,
    matpow_mod,
    mod_p,
    nullspace_mod,
    rank_mod,
    row_basis,
    rref_mod,
    solve_left,
)

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p = draw(PRIMES)
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=m * n, max_size=m * n))
    return np.array(entries, dtype=np.int64).reshape(m, n), p


@given(PRIMES, st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_field_axioms(p, a, b, c):
    """Addition and multiplication of residues satisfy the field axioms."""
    x, y, z = PrimeFieldScalar(a, p), PrimeFieldScalar(b, p), PrimeFieldScalar(c, p)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == PrimeFieldScalar(0, p)
    if x.value:
        assert x * x.inverse() == PrimeFieldScalar(1, p)
        assert (y / x) * x == y


def test_scalar_rejects_mixed_moduli():
    """Scalars over different fields do not combine."""
    with pytest.raises(ValueError):
        PrimeFieldScalar(1, 3) + PrimeFieldScalar(1, 5)
    with pytest.raises(ValueError):
        PrimeFieldScalar(1, 4)


def test_is_prime():
    """Small primes are recognized."""
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


@settings(max_examples=50)
@given(matrices())
def test_rref_is_idempotent_and_keeps_rank(data):
    """The RREF has the same row space and is its own RREF."""
    A, p = data
    R, pivots = rref_mod(A, p)
    assert rank_mod(A, p) == len(pivots)
    R2, pivots2 = rref_mod(R, p)
    assert np.array_equal(R, R2)
    assert pivots == pivots2
    for row in A:
        assert in_row_space(R[: len(pivots)], row, p)


@settings(max_examples=50)
@given(matrices())
def test_nullspaces(data):
    """Right and left kernels are annihilated and have the expected dimension."""
    A, p = data
    N = nullspace_mod(A, p)
    assert not np.any(mod_p(A @ N, p))
    assert N.shape[1] == A.shape[1] - rank_mod(A, p)
    L = left_nullspace(A, p)
    assert not np.any(mod_p(L @ A, p))
    assert L.shape[0] == A.shape[0] - rank_mod(A, p)


def test_solve_left():
    """x A = b is solved exactly or reported inconsistent."""
    A = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.int64)
    x = solve_left(A, np.array([1, 1, 0]), 2)
    assert np.array_equal(mod_p(x @ A, 2), [1, 1, 0])
    assert solve_left(A, np.array([1, 0, 0]), 2) is None


def test_intersect_rows():
    """Two planes in F_3^3 meet in a line."""
    A = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.int64)
    B = np.array([[1, 1, 1], [0, 1, 0]], dtype=np.int64)
    I = intersect_rows(A, B, 3)
    assert I.shape[0] == 1
    assert np.array_equal(row_basis(I, 3), [[0, 1, 0]])


def test_inverse_and_nilpotency():
    """Inverse of a unipotent matrix, nilpotency of a shift."""
    N = np.diag([1, 1, 1], k=1).astype(np.int64)
    assert is_nilpotent(N, 5)
    assert not np.any(matpow_mod(N, 4, 5))
    U = (np.eye(4, dtype=np.int64) + N) % 5
    assert np.array_equal(mod_p(U @ inv_mod_mat(U, 5), 5), np.eye(4, dtype=np.int64))
    with pytest.raises(ValueError):
        inv_mod_mat(N, 5)
