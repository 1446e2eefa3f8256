import logging
import typing as tp
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from nilop.errors import BudgetExceededError, InvalidObjectError
from nilop.modules.partition import Partition, jordan_type_from_dims
from nilop.ops import (
    as_rows,
    in_row_space,
    intersect_rows,
    inv_mod_mat,
    is_invertible,
    is_prime,
    left_nullspace,
    matpow_mod,
    mod_p,
    rank_mod,
    row_basis,
)
from nilop.output import InvariantReport
from nilop.utils.types import Matrix, SquareMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionTriple:
    u_part: Partition
    v_part: Partition
    w_part: Partition

    def __post_init__(self):
        if self.u_part.size + self.w_part.size != self.v_part.size:
            raise InvalidObjectError(f"Not a realizable triple: {self}")
        for part in (self.u_part, self.w_part):
            if part.height > self.v_part.height or part.width > self.v_part.width:
                raise InvalidObjectError(f"Not a realizable triple: {self}")

    @classmethod
    def of(cls, u, v, w) -> "PartitionTriple":
        return cls(Partition.of(u), Partition.of(v), Partition.of(w))

    @property
    def uwb(self) -> tuple[int, int, int]:
        return (self.u_part.size, self.w_part.size, self.v_part.width)

    def union(self, other: "PartitionTriple") -> "PartitionTriple":
        return PartitionTriple(
            self.u_part.union(other.u_part),
            self.v_part.union(other.v_part),
            self.w_part.union(other.w_part),
        )

    def to_list(self) -> list[list[int]]:
        return [list(self.u_part), list(self.v_part), list(self.w_part)]

    def __str__(self):
        return f"({self.u_part},{self.v_part},{self.w_part})"


def nilpotent_operator(lam: Partition | tp.Sequence[int]) -> SquareMatrix:
    """T on the box basis: coordinate (i, j) is T^j x_i and T sends (i, j) to (i, j + 1)."""
    dim = int(sum(lam))
    T = np.zeros((dim, dim), dtype=np.int64)
    offset = 0
    for length in lam:
        for j in range(length - 1):
            T[offset + j, offset + j + 1] = 1
        offset += length
    return T


def module_span(vectors: np.ndarray, T: SquareMatrix, p: int) -> Matrix:
    """Basis (rref) of the Λ-submodule generated by the rows of `vectors`."""
    dim = T.shape[0]
    vectors = as_rows(vectors, dim)
    rows = [mod_p(vectors, p)]
    current = rows[0]
    while current.shape[0] and np.any(current):
        current = (current @ T) % p
        rows.append(current)
    return row_basis(np.vstack(rows), p)


def image_dims(basis: np.ndarray, T: SquareMatrix, p: int) -> list[int]:
    """dim(S T^k) for k = 0, 1, ... until zero, S the span of `basis`."""
    dims = []
    current = basis
    while True:
        d = rank_mod(current, p)
        dims.append(d)
        if d == 0:
            return dims
        current = (current @ T) % p


def quotient_dims(basis: np.ndarray, sub: np.ndarray, T: SquareMatrix, p: int) -> list[int]:
    """dim((S T^k + U) / U) for k = 0, 1, ... until zero."""
    base = rank_mod(sub, p)
    dims = []
    current = basis
    while True:
        d = rank_mod(np.vstack([current, sub]), p) - base
        dims.append(d)
        if d == 0:
            return dims
        current = (current @ T) % p


@dataclass(frozen=True, eq=False)
class SubspacePair:
    """
    An object X = (U, V) of S(n) over F_p.

    V is the nilpotent module of Jordan type `lam`, written in its box basis;
    U is the Λ-submodule generated by the rows of `gens`.
    """

    n: int
    p: int
    lam: Partition
    gens: Matrix

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidObjectError(f"p must be prime, got {self.p}")
        if self.lam.height > self.n:
            raise InvalidObjectError(f"height of {self.lam} exceeds n = {self.n}")
        gens = np.asarray(self.gens, dtype=np.int64)
        if gens.size == 0:
            gens = np.zeros((0, self.lam.size), dtype=np.int64)
        if gens.ndim != 2 or gens.shape[1] != self.lam.size:
            raise InvalidObjectError(
                f"generator vectors must have length {self.lam.size}, got shape {gens.shape}"
            )
        gens = mod_p(gens, self.p)
        gens.setflags(write=False)
        object.__setattr__(self, "gens", gens)

    @property
    def dim(self) -> int:
        return self.lam.size

    @cached_property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for length in self.lam:
            out.append(acc)
            acc += length
        return out

    def coordinate(self, block: int, power: int) -> int:
        return self.offsets[block] + power

    @cached_property
    def operator(self) -> SquareMatrix:
        return nilpotent_operator(self.lam)

    @cached_property
    def u_basis(self) -> Matrix:
        return module_span(self.gens, self.operator, self.p)

    @property
    def u_dim(self) -> int:
        return self.u_basis.shape[0]

    @property
    def w_dim(self) -> int:
        return self.dim - self.u_dim

    @property
    def width(self) -> int:
        return self.lam.width

    def is_zero(self) -> bool:
        return self.dim == 0

    def unit(self, block: int, power: int = 0) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.coordinate(block, power)] = 1
        return v

    def with_gens(self, gens: np.ndarray) -> "SubspacePair":
        return SubspacePair(self.n, self.p, self.lam, gens)

    def __repr__(self):
        return f"SubspacePair(n={self.n}, p={self.p}, par={partition_triple(self)})"


def zero_pair(n: int, p: int) -> SubspacePair:
    return SubspacePair(n, p, Partition(), np.zeros((0, 0), dtype=np.int64))


def picket(t: int, m: int, n: int, p: int) -> SubspacePair:
    """The picket ([t], [m]): U = T^(m-t) V inside the cyclic module [m]."""
    if not 0 <= t <= m <= n:
        raise InvalidObjectError(f"picket ([{t}],[{m}]) does not lie in S({n})")
    gens = np.zeros((1 if t else 0, m), dtype=np.int64)
    if t:
        gens[0, m - t] = 1
    return SubspacePair(n, p, Partition.of([m]), gens)


def partition_triple(X: SubspacePair) -> PartitionTriple:
    T = X.operator
    u = jordan_type_from_dims(image_dims(X.u_basis, T, X.p))
    identity = np.eye(X.dim, dtype=np.int64)
    w = jordan_type_from_dims(quotient_dims(identity, X.u_basis, T, X.p))
    return PartitionTriple(u, X.lam, w)


def uwb(X: SubspacePair) -> tuple[int, int, int]:
    return (X.u_dim, X.w_dim, X.width)


def e_triple(X: SubspacePair) -> tuple[Partition, Partition, Partition]:
    """([ΩV], [U], [W]); the three sizes add up to n·b."""
    par = partition_triple(X)
    return (X.lam.syzygy(X.n), par.u_part, par.w_part)


def invariants(X: SubspacePair) -> InvariantReport:
    if X.is_zero():
        raise InvalidObjectError("the zero object has no width; invariants are undefined")
    u, w, b = uwb(X)
    omega = X.n * b - X.dim
    m = min(omega, u, w)
    return InvariantReport(
        uwb=(u, w, b),
        pr=(Fraction(u, b), Fraction(w, b)),
        q=Fraction(X.dim, b),
        d=Fraction(m, b),
        m=m,
        omega=omega,
        b=b,
        c_n=X.lam.count(X.n),
    )


def block_embedding(lengths: tp.Sequence[int], order: tp.Sequence[int]) -> list[np.ndarray]:
    """
    For blocks listed in `lengths` and their new positions `order`, the 0/1
    matrices sending each old block's box coordinates to the re-sorted space.
    """
    new_lengths = [lengths[k] for k in order]
    new_offsets = np.concatenate([[0], np.cumsum(new_lengths)]).astype(int)
    position = {old: new for new, old in enumerate(order)}
    total = int(sum(lengths))
    maps = []
    for k, length in enumerate(lengths):
        E = np.zeros((length, total), dtype=np.int64)
        start = new_offsets[position[k]]
        E[np.arange(length), start + np.arange(length)] = 1
        maps.append(E)
    return maps


def block_order(lengths: tp.Sequence[int]) -> list[int]:
    """Positions of the blocks sorted by descending length (stable)."""
    return sorted(range(len(lengths)), key=lambda k: -lengths[k])


def from_blocks(n: int, p: int, lengths: tp.Sequence[int], gens: np.ndarray) -> SubspacePair:
    """
    The pair whose V has blocks of the given lengths in any order; `gens` is
    written in the box coordinates of that order and is moved to the sorted one.
    """
    lengths = [int(length) for length in lengths]
    order = block_order(lengths)
    lam = Partition(tuple(lengths[k] for k in order))
    gens = as_rows(gens, lam.size)
    if not lengths:
        return SubspacePair(n, p, lam, gens)
    E = np.vstack(block_embedding(lengths, order))
    return SubspacePair(n, p, lam, mod_p(gens @ E, p))


def direct_sum(*pairs: SubspacePair) -> SubspacePair:
    if not pairs:
        raise InvalidObjectError("direct_sum needs at least one summand")
    n, p = pairs[0].n, pairs[0].p
    for X in pairs[1:]:
        if (X.n, X.p) != (n, p):
            raise InvalidObjectError(f"mismatched (n, p): {(X.n, X.p)} vs {(n, p)}")
    lengths = [length for X in pairs for length in X.lam]
    order = block_order(lengths)
    blocks = block_embedding(lengths, order)

    gens, k = [], 0
    for X in pairs:
        E = np.vstack(blocks[k : k + X.width]) if X.width else np.zeros((0, sum(lengths)), dtype=np.int64)
        k += X.width
        if X.gens.shape[0]:
            gens.append(X.gens @ E)
    lam = Partition(tuple(lengths[k] for k in order))
    all_gens = np.vstack(gens) if gens else np.zeros((0, lam.size), dtype=np.int64)
    return SubspacePair(n, p, lam, all_gens % p)


def _stack(rows: list[np.ndarray], width: int) -> Matrix:
    return np.array(rows, dtype=np.int64).reshape(-1, width)


def extend_basis(base: Matrix, target: Matrix, p: int) -> list[np.ndarray]:
    """Rows of `target` that extend span(base) to span(base + target), chosen greedily."""
    chosen = []
    current = base
    for v in target:
        if not in_row_space(current, v, p):
            chosen.append(v.copy())
            current = np.vstack([current, v.reshape(1, -1)])
    return chosen


def jordan_basis(
    T: SquareMatrix,
    n: int,
    p: int,
    degrees: tp.Sequence[int] | None = None,
) -> tuple[SquareMatrix, list[int], list[int]]:
    """
    A Jordan basis of the nilpotent operator v -> vT.

    Parameters:
        T (np.ndarray): square matrix acting on row vectors, T^n = 0
        n (int): nilpotency bound
        p (int): prime modulus
        degrees (Sequence[int] | None): optional degree of every coordinate for a
            graded operator lowering degree by one; the basis is then homogeneous

    Returns:
        tuple: matrix P whose rows are x_1, x_1 T, ..., x_2, x_2 T, ... (blocks by
        descending length), the block lengths, and the degree of every x_i
    """
    dim = T.shape[0]
    graded = degrees is not None
    labels = np.asarray(degrees if graded else [0] * dim, dtype=np.int64)
    shift = 1 if graded else 0
    levels = sorted(set(labels.tolist()), reverse=True)

    powers = [np.eye(dim, dtype=np.int64)]
    for _ in range(n):
        powers.append((powers[-1] @ T) % p)

    def kernel(h: int, level: int) -> Matrix:
        idx = np.nonzero(labels == level)[0]
        if h == 0 or idx.size == 0:
            return np.zeros((0, dim), dtype=np.int64)
        local = left_nullspace(powers[h][idx, :], p)
        rows = np.zeros((local.shape[0], dim), dtype=np.int64)
        rows[:, idx] = local
        return rows

    chosen: list[tuple[np.ndarray, int, int]] = []
    for h in range(n, 0, -1):
        for level in levels:
            base = [kernel(h - 1, level)]
            for x, height, deg in chosen:
                if height > h and deg - shift * (height - h) == level:
                    base.append((x @ powers[height - h] % p).reshape(1, -1))
            for x in extend_basis(np.vstack(base), kernel(h, level), p):
                chosen.append((x, h, level))

    rows = []
    for x, height, _ in chosen:
        for j in range(height):
            rows.append(x @ powers[j] % p)
    P = np.array(rows, dtype=np.int64).reshape(-1, dim)
    if P.shape[0] != dim:
        raise InvalidObjectError(f"operator is not nilpotent of index <= {n}")
    return P, [h for _, h, _ in chosen], [d for _, _, d in chosen]


def from_operator(
    T: SquareMatrix,
    u_rows: np.ndarray,
    n: int,
    p: int,
    degrees: tp.Sequence[int] | None = None,
) -> tuple[SubspacePair, SquareMatrix]:
    """
    The pair (U, V) for an arbitrary nilpotent operator, rewritten in a Jordan basis.

    Returns the pair together with the change-of-basis matrix P (rows = new basis
    vectors in the old coordinates).
    """
    dim = T.shape[0]
    if dim == 0:
        return zero_pair(n, p), np.zeros((0, 0), dtype=np.int64)
    P, lengths, _ = jordan_basis(T, n, p, degrees)
    u_rows = as_rows(u_rows, dim)
    gens = row_basis(mod_p(u_rows @ inv_mod_mat(P, p), p), p)
    return SubspacePair(n, p, Partition(tuple(lengths)), gens), P


@dataclass(frozen=True)
class InducedPair:
    """A subquotient upper/lower of an object, with the maps needed to move vectors into it."""

    pair: SubspacePair
    operator: SquareMatrix
    u_rows: Matrix
    projection: Matrix
    jordan: SquareMatrix

    def to_jordan(self, vectors: np.ndarray, p: int) -> Matrix:
        """Coordinates in the subquotient's Jordan basis of vectors of `upper`."""
        return mod_p(vectors @ self.projection @ inv_mod_mat(self.jordan, p), p)


def induced(X: SubspacePair, upper: np.ndarray, lower: np.ndarray) -> InducedPair:
    """
    The pair ((U ∩ upper + lower) / lower, upper / lower) for Λ-submodules lower ⊆ upper of V.
    """
    p = X.p
    upper = row_basis(as_rows(upper, X.dim), p)
    lower = row_basis(as_rows(lower, X.dim), p)
    complement = _stack(extend_basis(lower, upper, p), X.dim)
    outside = _stack(extend_basis(upper, np.eye(X.dim, dtype=np.int64), p), X.dim)
    # complement | lower | outside is a basis of V; its inverse reads off coordinates
    ambient_inv = inv_mod_mat(np.vstack([complement, lower, outside]), p)
    k = complement.shape[0]
    projection = ambient_inv[:, :k].copy()

    T_local = mod_p(complement @ X.operator @ projection, p)
    u_cap = intersect_rows(X.u_basis, upper, p)
    u_local = row_basis(mod_p(u_cap @ projection, p), p)
    pair, P = from_operator(T_local, u_local, X.n, p)
    return InducedPair(pair, T_local, u_local, projection, P)


def sub_pair(X: SubspacePair, S: np.ndarray) -> SubspacePair:
    return induced(X, S, np.zeros((0, X.dim), dtype=np.int64)).pair


def quotient_pair(X: SubspacePair, S: np.ndarray) -> SubspacePair:
    return induced(X, np.eye(X.dim, dtype=np.int64), S).pair


def subquotient(X: SubspacePair, upper: np.ndarray, lower: np.ndarray) -> SubspacePair:
    return induced(X, upper, lower).pair


def random_automorphism(X: SubspacePair, rng: np.random.Generator, attempts: int = 64) -> SquareMatrix:
    """
    A random Λ-automorphism of V as a matrix: generator x_i goes to a random
    element of ker T^(λ_i), retried until invertible.
    """
    T = X.operator
    kernels = {}
    for length in set(X.lam):
        kernels[length] = left_nullspace(matpow_mod(T, length, X.p), X.p)
    for _ in range(attempts):
        phi = np.zeros((X.dim, X.dim), dtype=np.int64)
        for i, length in enumerate(X.lam):
            K = kernels[length]
            image = rng.integers(0, X.p, size=K.shape[0]) @ K % X.p
            row = image
            for j in range(length):
                phi[X.coordinate(i, j)] = row
                row = row @ T % X.p
        if is_invertible(phi, X.p):
            return phi
    raise BudgetExceededError(
        f"no invertible Λ-endomorphism of V({X.lam}) in {attempts} random draws", scanned=attempts, budget=attempts
    )


def change_basis(X: SubspacePair, seed: int) -> SubspacePair:
    """The same object with U rewritten through a random automorphism of V."""
    rng = np.random.default_rng(seed)
    phi = random_automorphism(X, rng)
    return X.with_gens(mod_p(X.gens @ phi, X.p))


def random_pair(n: int, lam: Partition, u_dim: int, seed: int, p: int = 2) -> SubspacePair:
    """
    A reproducible random pair: up to `u_dim` random vectors, each drawn from
    ker T^h for a random h, kept while the generated submodule stays within `u_dim`.
    """
    if u_dim > lam.size:
        raise InvalidObjectError(f"u_dim {u_dim} exceeds |V| = {lam.size}")
    rng = np.random.default_rng(seed)
    X = SubspacePair(n, p, lam, np.zeros((0, lam.size), dtype=np.int64))
    T = X.operator
    accepted: list[np.ndarray] = []
    span = np.zeros((0, lam.size), dtype=np.int64)
    for _ in range(u_dim):
        h = int(rng.integers(1, max(lam.height, 1) + 1))
        v = np.zeros(lam.size, dtype=np.int64)
        for i, length in enumerate(lam):
            for j in range(max(0, length - h), length):
                v[X.coordinate(i, j)] = rng.integers(0, p)
        candidate = module_span(np.vstack([span, v.reshape(1, -1)]), T, p)
        if candidate.shape[0] <= u_dim and np.any(v):
            accepted.append(v)
            span = candidate
    gens = np.array(accepted, dtype=np.int64).reshape(-1, lam.size)
    return SubspacePair(n, p, lam, gens)
