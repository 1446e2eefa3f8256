from dataclasses import dataclass

import numpy as np

from nilop.utils.types import Matrix, SquareMatrix, Vector


@dataclass(frozen=True)
class PrimeFieldScalar:
    """An element of F_p; arrays elsewhere carry residues directly."""

    value: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _check(self, other: "PrimeFieldScalar") -> None:
        if self.p != other.p:
            raise ValueError(f"Mixed moduli: {self.p} and {other.p}")

    def __add__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar(self.value + other.value, self.p)

    def __sub__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar(self.value - other.value, self.p)

    def __mul__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar(self.value * other.value, self.p)

    def __truediv__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar(self.value * inv_mod_scalar(other.value, self.p), self.p)

    def __neg__(self) -> "PrimeFieldScalar":
        return PrimeFieldScalar(-self.value, self.p)

    def inverse(self) -> "PrimeFieldScalar":
        return PrimeFieldScalar(inv_mod_scalar(self.value, self.p), self.p)


def mod_p(A: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(np.asarray(A, dtype=np.int64) % p, dtype=np.int64)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def inv_mod_scalar(a: int | np.integer, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


def as_rows(A: np.ndarray | list, width: int) -> Matrix:
    """Coerces a (possibly empty) collection of row vectors into an int64 matrix."""
    arr = np.asarray(A, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, width), dtype=np.int64)
    return arr.reshape(-1, width)


def rref_mod(A: np.ndarray, p: int) -> tuple[Matrix, list[int]]:
    """
    Reduced row echelon form over GF(p).

    Parameters:
        A (np.ndarray): integer matrix of shape (m, n)
        p (int): prime modulus

    Returns:
        tuple: the reduced matrix (same shape, entries in [0, p)) and the list
        of pivot columns, one per nonzero row
    """
    R = mod_p(np.array(A, copy=True), p)
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * inv_mod_scalar(R[r, c], p)) % p
        col = R[:, c].copy()
        col[r] = 0
        if np.any(col):
            R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    _, pivots = rref_mod(A, p)
    return len(pivots)


def row_basis(A: np.ndarray, p: int) -> Matrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    if A.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    R, pivots = rref_mod(A, p)
    return R[: len(pivots)].copy()


def nullspace_mod(A: np.ndarray, p: int) -> Matrix:
    """Right nullspace basis of A over GF(p); columns form a basis."""
    m, n = A.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_mod(A, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-R[row, f]) % p
    return basis


def left_nullspace(A: np.ndarray, p: int) -> Matrix:
    """Rows x with x @ A = 0."""
    return nullspace_mod(A.T, p).T.copy()


def solve_left(A: np.ndarray, b: np.ndarray, p: int) -> Vector | None:
    """
    One solution x of x @ A = b over GF(p), or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m, n = A.shape
    aug = np.concatenate([mod_p(A.T, p), mod_p(np.asarray(b).reshape(-1, 1), p)], axis=1)
    if m == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(aug[:, -1]) else None
    R, pivots = rref_mod(aug, p)
    if pivots and pivots[-1] == m:
        return None
    x = np.zeros(m, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, m]
    return x


def coordinates(basis: np.ndarray, vectors: np.ndarray, p: int) -> Matrix:
    """
    Coordinates of each row of `vectors` with respect to the rows of `basis`.

    Raises:
        ValueError: if some vector is outside the row space of `basis`
    """
    out = np.zeros((vectors.shape[0], basis.shape[0]), dtype=np.int64)
    for i, v in enumerate(vectors):
        x = solve_left(basis, v, p)
        if x is None:
            raise ValueError("Vector does not lie in the given row space")
        out[i] = x
    return out


def in_row_space(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    if not np.any(mod_p(v, p)):
        return True
    if basis.shape[0] == 0:
        return False
    return rank_mod(np.vstack([basis, v.reshape(1, -1)]), p) == rank_mod(basis, p)


def sum_rows(A: np.ndarray, B: np.ndarray, p: int) -> Matrix:
    return row_basis(np.vstack([A, B]), p)


def intersect_rows(A: np.ndarray, B: np.ndarray, p: int) -> Matrix:
    """Basis of rowspace(A) ∩ rowspace(B)."""
    width = A.shape[1]
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    A = row_basis(A, p)
    B = row_basis(B, p)
    # x A = y B  <=>  (x, y) [A; -B] = 0
    kernel = left_nullspace(np.vstack([A, mod_p(-B, p)]), p)
    return row_basis(mod_p(kernel[:, : A.shape[0]] @ A, p), p)


def complement_rows(A: np.ndarray, dim: int, p: int) -> Matrix:
    """Unit vectors at the non-pivot columns of rref(A): a complement of its row space."""
    pivots = set(rref_mod(A, p)[1]) if A.shape[0] else set()
    free = [j for j in range(dim) if j not in pivots]
    C = np.zeros((len(free), dim), dtype=np.int64)
    for k, j in enumerate(free):
        C[k, j] = 1
    return C


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return mod_p(A @ B, p)


def matpow_mod(A: SquareMatrix, k: int, p: int) -> SquareMatrix:
    result = np.eye(A.shape[0], dtype=np.int64)
    base = mod_p(A, p)
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result


def inv_mod_mat(A: SquareMatrix, p: int) -> SquareMatrix:
    """Gauss-Jordan inverse over GF(p). Raises if singular."""
    n = A.shape[0]
    aug = np.concatenate([mod_p(A, p), np.eye(n, dtype=np.int64)], axis=1)
    R, _ = rref_mod(aug, p)
    if not np.array_equal(R[:, :n], np.eye(n, dtype=np.int64)):
        raise ValueError("Matrix not invertible mod p")
    return R[:, n:].copy()


def is_invertible(A: SquareMatrix, p: int) -> bool:
    return rank_mod(A, p) == A.shape[0]


def is_nilpotent(A: SquareMatrix, p: int) -> bool:
    n = A.shape[0]
    return n == 0 or not np.any(matpow_mod(A, n, p))
