import logging
import typing as tp
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from nilop.errors import InvalidObjectError, ShapeError
from nilop.modules.homs import hom_basis
from nilop.modules.pair import SubspacePair, block_embedding, block_order, jordan_basis, zero_pair
from nilop.modules.partition import Partition
from nilop.ops import as_rows, in_row_space, inv_mod_mat, inv_mod_scalar, left_nullspace, mod_p, rank_mod, row_basis
from nilop.output import GradedOp, KroneckerReport
from nilop.utils.types import Matrix, ProjectivePoint

logger = logging.getLogger(__name__)

# (block, power, coefficient): the summand coefficient * T^power x_block
Term = tuple[int, int, int]


def normalize_point(c: tp.Sequence[int], p: int) -> ProjectivePoint:
    """Canonical representative of a point of P^k(F_p): the last nonzero coordinate is 1."""
    coords = [int(x) % p for x in c]
    nonzero = [i for i, x in enumerate(coords) if x]
    if not nonzero:
        raise InvalidObjectError(f"{tuple(c)} is not a point of a projective space")
    scale = inv_mod_scalar(coords[nonzero[-1]], p)
    return tuple(x * scale % p for x in coords)


def projective_points(p: int, dim: int = 1) -> list[ProjectivePoint]:
    """The rational points of P^dim(F_p), canonical representatives, in a fixed order."""
    if dim == 0:
        return [(1,)]
    points = []
    for index in range(p**dim):
        head = [(index // p**i) % p for i in range(dim)]
        points.append(tuple(head) + (1,))
    points.extend(point + (0,) for point in projective_points(p, dim - 1))
    return points


@dataclass(frozen=True)
class DimVectorPair:
    """Dimension vector of a ladder representation on [lo, lo + len - 1]: bottom row x_i, top row x_i'."""

    lo: int
    bottom: tuple[int, ...]
    top: tuple[int, ...]

    def __post_init__(self):
        if len(self.bottom) != len(self.top):
            raise InvalidObjectError(f"rows of different length: {self.bottom} / {self.top}")
        if any(x < 0 for x in self.bottom + self.top):
            raise InvalidObjectError(f"negative entry in {self}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.bottom) - 1

    def padded(self, lo: int, hi: int) -> "DimVectorPair":
        if lo > self.lo or hi < self.hi:
            raise ShapeError(f"[{lo},{hi}] does not contain [{self.lo},{self.hi}]")
        left, right = (0,) * (self.lo - lo), (0,) * (hi - self.hi)
        return DimVectorPair(lo, left + self.bottom + right, left + self.top + right)

    def __str__(self):
        sep = "" if max(self.bottom + self.top, default=0) < 10 else ","
        return f"{sep.join(map(str, self.top))}/{sep.join(map(str, self.bottom))}"


def euler_form(x: DimVectorPair, y: DimVectorPair, n: int | None = None) -> int:
    """
    The bilinear form of the ladder quiver on [l, m]:

        sum x_i y_i + x_i' y_i'  -  sum over horizontal arrows  -  sum x_i' y_i  +  sum x_i' y_(i-1)

    The last sum accounts for the commutativity squares. When the range is
    longer than n the relations T^n = 0 of the bottom row add x_i y_(i-n).
    """
    if (x.lo, x.hi) != (y.lo, y.hi):
        raise ShapeError(f"range mismatch: [{x.lo},{x.hi}] vs [{y.lo},{y.hi}]")
    b, t = np.asarray(x.bottom, dtype=np.int64), np.asarray(x.top, dtype=np.int64)
    c, s = np.asarray(y.bottom, dtype=np.int64), np.asarray(y.top, dtype=np.int64)
    value = b @ c + t @ s
    value -= b[1:] @ c[:-1] + t[1:] @ s[:-1]
    value -= t @ c
    value += t[1:] @ c[:-1]
    if n is not None and len(b) > n:
        value += b[n:] @ c[:-n]
    return int(value)


@dataclass(frozen=True, eq=False)
class GradedPair:
    """
    A gradable object of S(n): a pair in box form together with the degree of
    every generator. Box (k, j) = T^j x_k sits in degree tops[k] - j, so T lowers
    degree by one and block k covers the interval [tops[k] - lam[k] + 1, tops[k]].

    As a representation of the ladder quiver, M_d is the degree-d part of V,
    M_d' the degree-d part of U; U must therefore be homogeneous.
    """

    pair: SubspacePair
    tops: tuple[int, ...]

    def __post_init__(self):
        tops = tuple(int(t) for t in self.tops)
        if len(tops) != self.pair.width:
            raise InvalidObjectError(f"{len(tops)} degrees given for {self.pair.width} blocks")
        object.__setattr__(self, "tops", tops)
        if not self.is_homogeneous():
            raise InvalidObjectError("U is not a graded subspace of V")

    @classmethod
    def from_blocks(
        cls,
        n: int,
        p: int,
        blocks: tp.Sequence[tuple[int, int]],
        gens: np.ndarray | None = None,
    ) -> "GradedPair":
        """
        Blocks given as (top degree, length) in any order; `gens` is written in the
        box coordinates of that order. Empty blocks are dropped.
        """
        tops = [int(top) for top, _ in blocks]
        lengths = [int(length) for _, length in blocks]
        if any(length < 0 for length in lengths):
            raise InvalidObjectError(f"negative block length in {list(blocks)}")
        total = sum(lengths)
        gens = as_rows(gens if gens is not None else [], total)
        kept = [k for k, length in enumerate(lengths) if length]
        order = block_order([lengths[k] for k in kept])
        lam = Partition(tuple(lengths[kept[k]] for k in order))
        if kept:
            E = np.vstack(block_embedding([lengths[k] for k in kept], order))
            gens = mod_p(gens @ E, p)
        pair = SubspacePair(n, p, lam, gens)
        return cls(pair, tuple(tops[kept[k]] for k in order))

    @classmethod
    def from_intervals(
        cls,
        n: int,
        p: int,
        intervals: tp.Sequence[tuple[int, int]],
        gens: np.ndarray | None = None,
    ) -> "GradedPair":
        """Blocks given as degree intervals [low, high]."""
        return cls.from_blocks(n, p, [(high, high - low + 1) for low, high in intervals], gens)

    @classmethod
    def from_terms(
        cls,
        n: int,
        p: int,
        blocks: tp.Sequence[tuple[int, int]],
        generators: tp.Sequence[tp.Sequence[Term]],
    ) -> "GradedPair":
        """Generators of U written as sums of coefficient * T^power x_block."""
        lengths = [length for _, length in blocks]
        offsets = np.concatenate([[0], np.cumsum(lengths)]).astype(int)
        rows = np.zeros((len(generators), int(offsets[-1])), dtype=np.int64)
        for r, terms in enumerate(generators):
            for block, power, coeff in terms:
                if not 0 <= power < lengths[block]:
                    raise InvalidObjectError(f"T^{power} x_{block} vanishes in a block of length {lengths[block]}")
                rows[r, offsets[block] + power] += coeff
        return cls.from_blocks(n, p, blocks, mod_p(rows, p))

    @classmethod
    def from_representation(
        cls,
        n: int,
        p: int,
        lo: int,
        bottom_dims: tp.Sequence[int],
        top_dims: tp.Sequence[int],
        alpha: tp.Mapping[int, np.ndarray],
        alpha_top: tp.Mapping[int, np.ndarray],
        beta: tp.Mapping[int, np.ndarray],
    ) -> "GradedPair":
        """
        Pushes a ladder representation down and rewrites it in a homogeneous Jordan basis.

        Parameters:
            lo (int): lowest degree; degree d uses index d - lo of the dimension lists
            alpha (Mapping[int, np.ndarray]): alpha[d] : M_d -> M_(d-1) acting on row vectors
            alpha_top (Mapping[int, np.ndarray]): alpha_top[d] : M_d' -> M_(d-1)'
            beta (Mapping[int, np.ndarray]): beta[d] : M_d' -> M_d, injective

        Missing maps are zero. Raises InvalidObjectError on a shape mismatch, a
        non-injective beta, a failing commutativity square or T^n != 0.
        """
        if len(bottom_dims) != len(top_dims):
            raise InvalidObjectError("bottom and top rows cover different ranges")
        hi = lo + len(bottom_dims) - 1
        b = {d: int(bottom_dims[d - lo]) for d in range(lo, hi + 1)}
        a = {d: int(top_dims[d - lo]) for d in range(lo, hi + 1)}

        def arrow(maps, d, rows, cols):
            M = np.asarray(maps.get(d, np.zeros((rows, cols))), dtype=np.int64).reshape(rows, cols)
            return mod_p(M, p)

        offsets, acc = {}, 0
        for d in range(lo, hi + 1):
            offsets[d] = acc
            acc += b[d]
        dim = acc
        if dim == 0:
            return cls(zero_pair(n, p), ())

        T = np.zeros((dim, dim), dtype=np.int64)
        u_rows, degrees = [], np.zeros(dim, dtype=np.int64)
        for d in range(lo, hi + 1):
            degrees[offsets[d] : offsets[d] + b[d]] = d
            B = arrow(beta, d, a[d], b[d])
            if rank_mod(B, p) != a[d]:
                raise InvalidObjectError(f"beta_{d} is not injective")
            rows = np.zeros((a[d], dim), dtype=np.int64)
            rows[:, offsets[d] : offsets[d] + b[d]] = B
            u_rows.append(rows)
            if d == lo:
                continue
            A = arrow(alpha, d, b[d], b[d - 1])
            A_top = arrow(alpha_top, d, a[d], a[d - 1])
            B_below = arrow(beta, d - 1, a[d - 1], b[d - 1])
            if np.any((A_top @ B_below - B @ A) % p):
                raise InvalidObjectError(f"commutativity fails at degree {d}")
            T[offsets[d] : offsets[d] + b[d], offsets[d - 1] : offsets[d - 1] + b[d - 1]] = A

        P, lengths, gen_degrees = jordan_basis(T, n, p, degrees.tolist())
        U = np.vstack(u_rows)
        gens = row_basis(mod_p(U @ inv_mod_mat(P, p), p), p)
        pair = SubspacePair(n, p, Partition(tuple(lengths)), gens)
        logger.debug(f"representation on [{lo},{hi}] pushes down to {pair}")
        return cls(pair, tuple(gen_degrees))

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def p(self) -> int:
        return self.pair.p

    @property
    def lam(self) -> Partition:
        return self.pair.lam

    @cached_property
    def degrees(self) -> np.ndarray:
        """Degree of every box coordinate."""
        out = [top - np.arange(length) for top, length in zip(self.tops, self.lam)]
        return np.concatenate(out).astype(np.int64) if out else np.zeros(0, dtype=np.int64)

    @property
    def intervals(self) -> list[tuple[int, int]]:
        return [(top - length + 1, top) for top, length in zip(self.tops, self.lam)]

    @property
    def lo(self) -> int:
        return int(self.degrees.min()) if self.degrees.size else 0

    @property
    def hi(self) -> int:
        return int(self.degrees.max()) if self.degrees.size else -1

    def _projection(self, d: int) -> Matrix:
        U = self.pair.u_basis.copy()
        U[:, self.degrees != d] = 0
        return U

    def is_homogeneous(self) -> bool:
        if self.pair.u_dim == 0:
            return True
        parts = [self._projection(d) for d in range(self.lo, self.hi + 1)]
        return rank_mod(np.vstack(parts), self.p) == self.pair.u_dim

    def component(self, d: int) -> Matrix:
        """Basis of U ∩ V_d."""
        return row_basis(self._projection(d), self.p)

    def dim_vector(self, lo: int | None = None, hi: int | None = None) -> DimVectorPair:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        if self.degrees.size and (lo > self.lo or hi < self.hi):
            raise ShapeError(f"[{lo},{hi}] does not contain the support [{self.lo},{self.hi}]")
        bottom = tuple(int(np.sum(self.degrees == d)) for d in range(lo, hi + 1))
        top = tuple(self.component(d).shape[0] for d in range(lo, hi + 1))
        return DimVectorPair(lo, bottom, top)

    def shift(self, k: int) -> "GradedPair":
        return GradedPair(self.pair, tuple(t + k for t in self.tops))

    def __repr__(self):
        return f"GradedPair(intervals={self.intervals}, pair={self.pair!r})"


def push_down(M: GradedPair) -> SubspacePair:
    return M.pair


def graded_direct_sum(*objects: GradedPair) -> GradedPair:
    if not objects:
        raise InvalidObjectError("graded_direct_sum needs at least one summand")
    n, p = objects[0].n, objects[0].p
    blocks = [(top, length) for M in objects for top, length in zip(M.tops, M.lam)]
    total = sum(length for _, length in blocks)
    rows, offset = [], 0
    for M in objects:
        if (M.n, M.p) != (n, p):
            raise InvalidObjectError(f"mismatched (n, p): {(M.n, M.p)} vs {(n, p)}")
        part = np.zeros((M.pair.gens.shape[0], total), dtype=np.int64)
        part[:, offset : offset + M.pair.dim] = M.pair.gens
        rows.append(part)
        offset += M.pair.dim
    return GradedPair.from_blocks(n, p, blocks, np.vstack(rows))


def _common_range(M: GradedPair, N: GradedPair) -> tuple[DimVectorPair, DimVectorPair]:
    lo = min(M.lo, N.lo)
    hi = max(M.hi, N.hi)
    return M.dim_vector(lo, hi), N.dim_vector(lo, hi)


def graded_euler(M: GradedPair, N: GradedPair) -> int:
    x, y = _common_range(M, N)
    return euler_form(x, y, M.n)


def graded_hom_dim(M: GradedPair, N: GradedPair) -> int:
    """Dimension of the degree-preserving morphisms M -> N."""
    space = hom_basis(M.pair, N.pair)
    if space.dim == 0:
        return 0
    off_degree = M.degrees[:, None] != N.degrees[None, :]
    if not off_degree.any():
        return space.dim
    # homogeneous components of a morphism are morphisms, so the degree-0 part is cut out linearly
    return left_nullspace(space.basis[:, off_degree], M.p).shape[0]


def ext1_dim(M: GradedPair, N: GradedPair) -> int:
    return graded_hom_dim(M, N) - graded_euler(M, N)


def kronecker_pair_check(X: GradedPair, Y: GradedPair) -> KroneckerReport:
    hom_xy = graded_hom_dim(X, Y)
    euler = graded_euler(X, Y)
    report = KroneckerReport(
        end_x=graded_hom_dim(X, X),
        end_y=graded_hom_dim(Y, Y),
        hom_xy=hom_xy,
        hom_yx=graded_hom_dim(Y, X),
        euler=euler,
        ext1=hom_xy - euler,
    )
    logger.info(f"Kronecker check: {report}")
    return report


def G(M: GradedPair, z: int) -> GradedPair:
    """Deletes degree z from both rows and composes the horizontal maps across it."""
    blocks = []
    for top, length in zip(M.tops, M.lam):
        low = top - length + 1
        blocks.append((top - 1 if top >= z else top, length - int(low <= z <= top)))
    keep = M.degrees != z
    return GradedPair.from_blocks(M.n, M.p, blocks, M.pair.u_basis[:, keep])


def H(M: GradedPair, z: int) -> GradedPair:
    """
    The factor of M by the socle part in degree z, that is by the bottom boxes of
    degree z. Defined only when U meets that socle part trivially.
    """
    blocks, drop = [], np.zeros(M.pair.dim, dtype=bool)
    for k, (top, length) in enumerate(zip(M.tops, M.lam)):
        if top - length + 1 == z:
            drop[M.pair.coordinate(k, length - 1)] = True
            blocks.append((top, length - 1))
        else:
            blocks.append((top, length))
    U = M.pair.u_basis
    if rank_mod(U[:, ~drop], M.p) < U.shape[0]:
        raise ShapeError(f"H_{z}: U meets the socle in degree {z}; the factor leaves the category")
    return GradedPair.from_blocks(M.n, M.p, blocks, U[:, ~drop])


def solid_down(M: GradedPair) -> GradedPair:
    """(U / soc V, TV / soc V) for a solid object, i.e. one with soc V ⊆ U ⊆ TV."""
    if M.n < 2:
        raise ShapeError(f"solid_down needs n >= 2, got {M.n}")
    X = M.pair
    U = X.u_basis
    tops = [X.coordinate(k, 0) for k in range(X.width)]
    bottoms = [X.coordinate(k, length - 1) for k, length in enumerate(X.lam)]
    if np.any(U[:, tops]) or not all(in_row_space(U, X.unit(k, length - 1), X.p) for k, length in enumerate(X.lam)):
        raise ShapeError("solid_down needs soc V ⊆ U ⊆ TV")
    keep = np.ones(X.dim, dtype=bool)
    keep[tops + bottoms] = False
    blocks = [(top - 1, length - 2) for top, length in zip(M.tops, M.lam)]
    return GradedPair.from_blocks(M.n - 2, M.p, blocks, U[:, keep])


def solid_up(M: GradedPair, s: int, t: int) -> GradedPair:
    """
    Inverse of solid_down on st-solid objects: every block covers [s, t], U
    contains V_d for d < s and misses V_d for d > t. Each block grows by one
    box at either end and the new socle joins U.
    """
    if s > t:
        raise ShapeError(f"empty degree window [{s},{t}]")
    for low, high in M.intervals:
        if not low <= s <= t <= high:
            raise ShapeError(f"block [{low},{high}] does not cover [{s},{t}]")
    x = M.dim_vector()
    for d, (vb, ut) in enumerate(zip(x.bottom, x.top), start=x.lo):
        if (d < s and ut != vb) or (d > t and ut != 0):
            raise ShapeError(f"not {s}{t}-solid at degree {d}")

    X = M.pair
    blocks = [(top + 1, length + 2) for top, length in zip(M.tops, M.lam)]
    new_offsets = np.concatenate([[0], np.cumsum([length + 2 for length in X.lam])]).astype(int)
    columns = np.concatenate([new_offsets[k] + 1 + np.arange(length) for k, length in enumerate(X.lam)])
    total = int(new_offsets[-1])
    U = np.zeros((X.u_dim, total), dtype=np.int64)
    U[:, columns] = X.u_basis
    socle = np.zeros((X.width, total), dtype=np.int64)
    for k, length in enumerate(X.lam):
        socle[k, new_offsets[k] + length + 1] = 1
    return GradedPair.from_blocks(M.n + 2, M.p, blocks, np.vstack([U, socle]))


def graded_op(M: GradedPair, op: str, z: int | None = None, s: int | None = None, t: int | None = None) -> GradedPair:
    if op not in GradedOp.values():
        raise ValueError(f"Unknown graded operation: {op}. Supported operations are: {GradedOp.values()}")
    if op in (GradedOp.G, GradedOp.H) and z is None:
        raise ShapeError(f"{op} needs a degree z")
    if op == GradedOp.SOLID_UP and (s is None or t is None):
        raise ShapeError("solid_up needs the window s, t")

    if op == GradedOp.G:
        return G(M, z)
    if op == GradedOp.H:
        return H(M, z)
    if op == GradedOp.SOLID_DOWN:
        return solid_down(M)
    return solid_up(M, s, t)


def nilpotent_shift(ell: int) -> Matrix:
    """N with N[k, k-1] = 1: e_k -> e_(k-1) on row vectors, so leading copies span submodules."""
    return np.eye(ell, k=-1, dtype=np.int64)


def kronecker_matrices(c: tp.Sequence[int], ell: int, p: int) -> tuple[Matrix, Matrix]:
    """
    The two maps (zeta, eta) of the regular Kronecker module R_c[ell]:
    (c0 I + N, I) when c1 != 0 and (I, N) for c = (1:0).
    """
    c0, c1 = normalize_point(c, p)
    I = np.eye(ell, dtype=np.int64)
    N = nilpotent_shift(ell)
    if c1:
        return mod_p(c0 * I + N, p), I
    return I, N


def standard_functor(c: tp.Sequence[int], ell: int, p: int) -> GradedPair:
    """
    The functor from Kronecker modules to representations of the ladder on [1, 6]
    applied to R_c[ell]; with J = F_p^ell in both Kronecker vertices the spaces are

        bottom  J, J+J, J+J+J, J+J+J, J+J, J
        top     J, J+J, J+J, J, 0, 0

    and zeta, eta enter only through the vertical maps in degrees 2, 3, 4.
    """
    if ell < 1:
        raise InvalidObjectError(f"ell must be positive, got {ell}")
    Z, Hm = kronecker_matrices(c, ell, p)
    I = np.eye(ell, dtype=np.int64)
    O = np.zeros((ell, ell), dtype=np.int64)
    bottom = [ell, 2 * ell, 3 * ell, 3 * ell, 2 * ell, ell]
    top = [ell, 2 * ell, 2 * ell, ell, 0, 0]
    alpha = {
        2: np.block([[O], [I]]),
        3: np.block([[O, O], [I, O], [O, I]]),
        4: np.eye(3 * ell, dtype=np.int64),
        5: np.block([[O, I, O], [O, O, I]]),
        6: np.block([[O, I]]),
    }
    alpha_top = {
        2: np.block([[O], [I]]),
        3: np.eye(2 * ell, dtype=np.int64),
        4: np.block([[O, I]]),
    }
    beta = {
        1: I,
        2: np.block([[I, O], [Hm, I]]),
        3: np.block([[I, I, O], [Z, Hm, I]]),
        4: np.block([[Z, Hm, I]]),
    }
    return GradedPair.from_representation(6, p, 1, bottom, top, alpha, alpha_top, beta)


def kronecker_pair_s6(p: int) -> tuple[GradedPair, GradedPair]:
    """
    The orthogonal pair behind the standard S(6) family: X the picket ([4],[6])
    on [1, 6], Y = ([2],[4,2],[3,1]) on [2, 5] with U generated by T^2 x_1 + T x_2.
    """
    X = GradedPair.from_terms(6, p, [(6, 6)], [[(0, 2, 1)]])
    Y = GradedPair.from_terms(6, p, [(5, 4), (4, 2)], [[(0, 2, 1), (1, 1, 1)]])
    return X, Y
