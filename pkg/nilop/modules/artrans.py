import logging
import re
import typing as tp
from dataclasses import dataclass

import numpy as np

from nilop.errors import InvalidObjectError
from nilop.modules.pair import (
    PartitionTriple,
    SubspacePair,
    direct_sum,
    from_blocks,
    from_operator,
    induced,
    nilpotent_operator,
    partition_triple,
    picket,
    sub_pair,
    zero_pair,
)
from nilop.modules.partition import Partition
from nilop.ops import (
    intersect_rows,
    inv_mod_scalar,
    left_nullspace,
    matpow_mod,
    mod_p,
    nullspace_mod,
    rank_mod,
    rref_mod,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LambdaMap:
    """
    A Λ-linear map between direct sums of cyclic modules.

    entries[i, k, t] is the coefficient of T^t in q_ik(T): the generator of the
    i-th source summand goes to sum_k q_ik(T) y_k. Only t < target[k] is used,
    and q_ik must be divisible by T^(target[k] - source[i]).
    """

    source: tuple[int, ...]
    target: tuple[int, ...]
    entries: np.ndarray
    p: int

    def __post_init__(self):
        entries = mod_p(self.entries, self.p)
        expected = (len(self.source), len(self.target))
        if entries.shape[:2] != expected:
            raise InvalidObjectError(f"entries of shape {entries.shape} do not match {expected}")
        for i, a in enumerate(self.source):
            for k, b in enumerate(self.target):
                q = entries[i, k]
                if np.any(q[: max(0, b - a)]) or np.any(q[b:]):
                    raise InvalidObjectError(
                        f"entry ({i}, {k}) is not a Λ-map [{a}] -> [{b}]: {q.tolist()}"
                    )
        object.__setattr__(self, "entries", entries)

    @staticmethod
    def _offsets(lengths: tp.Sequence[int]) -> list[int]:
        return [int(x) for x in np.concatenate([[0], np.cumsum(lengths)])[:-1]] if lengths else []

    @property
    def source_dim(self) -> int:
        return int(sum(self.source))

    @property
    def target_dim(self) -> int:
        return int(sum(self.target))

    def to_matrix(self) -> np.ndarray:
        M = np.zeros((self.source_dim, self.target_dim), dtype=np.int64)
        src, tgt = self._offsets(self.source), self._offsets(self.target)
        for i, a in enumerate(self.source):
            for k, b in enumerate(self.target):
                for t in range(b):
                    coeff = self.entries[i, k, t]
                    if not coeff:
                        continue
                    for j in range(min(a, b - t)):
                        M[src[i] + j, tgt[k] + t + j] = coeff
        return M

    @classmethod
    def from_matrix(
        cls, source: tp.Sequence[int], target: tp.Sequence[int], M: np.ndarray, p: int
    ) -> "LambdaMap":
        source, target = tuple(int(x) for x in source), tuple(int(x) for x in target)
        width = max(target, default=1) or 1
        entries = np.zeros((len(source), len(target), width), dtype=np.int64)
        src, tgt = cls._offsets(source), cls._offsets(target)
        M = mod_p(M, p)
        for i in range(len(source)):
            for k, b in enumerate(target):
                entries[i, k, :b] = M[src[i], tgt[k] : tgt[k] + b]
        h = cls(source, target, entries, p)
        if not np.array_equal(h.to_matrix(), M):
            raise InvalidObjectError("matrix does not commute with T")
        return h

    def compose(self, other: "LambdaMap") -> "LambdaMap":
        """self followed by other (row convention: matrix product self @ other)."""
        if self.target != other.source:
            raise InvalidObjectError(f"cannot compose {self.target} with {other.source}")
        return LambdaMap.from_matrix(self.source, other.target, self.to_matrix() @ other.to_matrix(), self.p)

    def is_injective(self) -> bool:
        return rank_mod(self.to_matrix(), self.p) == self.source_dim


@dataclass(frozen=True)
class ProjectivePresentation:
    """
    Minimal presentation Λ^rank1 -> Λ^rank0 -> M of M = ⊕[m_i]: the relation on the
    i-th generator is T^(m_i); summands [n] are free and carry none.
    """

    module: Partition
    n: int

    @property
    def rank0(self) -> int:
        return self.module.width

    @property
    def relations(self) -> tuple[int, ...]:
        return tuple(m for m in self.module if m < self.n)

    @property
    def rank1(self) -> int:
        return len(self.relations)

    @property
    def syzygy(self) -> Partition:
        return self.module.syzygy(self.n)

    @property
    def syzygy_size(self) -> int:
        return self.n * self.rank0 - self.module.size


def projective_presentation(lam: Partition, n: int) -> ProjectivePresentation:
    if lam.height > n:
        raise InvalidObjectError(f"{lam} has height above {n}")
    return ProjectivePresentation(lam, n)


def dual(X: SubspacePair) -> SubspacePair:
    """(U^⊥, V*) with the transposed operator, rewritten in a Jordan basis."""
    if X.is_zero():
        return X
    annihilator = nullspace_mod(X.u_basis, X.p).T if X.u_dim else np.eye(X.dim, dtype=np.int64)
    Y, _ = from_operator(X.operator.T.copy(), annihilator, X.n, X.p)
    return Y


def tau_partitions(triple: PartitionTriple, n: int) -> PartitionTriple:
    """
    par(τX) = ([V'], [W] ⊕ [n]^(bU - c_n), [ΩU]) for reduced X.

    Parts of size n in U or W come from full or zero picket summands, which τ
    kills; they are split off first.
    """
    u, v, w = triple.u_part, triple.v_part, triple.w_part
    if v.height > n:
        raise InvalidObjectError(f"{triple} does not lie in S({n})")
    full, zero = u.count(n), w.count(n)
    if full or zero:
        if v.count(n) < full + zero:
            raise InvalidObjectError(f"{triple} is not realizable: {full + zero} projective pickets, {v.count(n)} blocks [n]")
        u, v, w = u.remove(n, full), v.remove(n, full + zero), w.remove(n, zero)
        logger.debug(f"tau_partitions: stripped {full} full and {zero} zero pickets from {triple}")
        triple = PartitionTriple(u, v, w)
    free = u.width - v.count(n)
    if free < 0:
        raise InvalidObjectError(f"{triple} is not realizable: bU < c_n for a reduced object")
    return PartitionTriple(
        v.without(n),
        w.union(Partition.of([n] * free)),
        u.syzygy(n),
    )


def stable_omega_map(h: LambdaMap, n: int) -> LambdaMap:
    """
    Ω(h): ΩA -> ΩB, the restriction of the canonical lift of h to the syzygies.

    Ω[a] = T^a [n] ≅ [n - a]; summands with a = n vanish.
    """
    if max(h.source + h.target, default=0) > n:
        raise InvalidObjectError(f"map between modules of height above {n}")
    keep_src = [i for i, a in enumerate(h.source) if a < n]
    keep_tgt = [k for k, b in enumerate(h.target) if b < n]
    source = tuple(n - h.source[i] for i in keep_src)
    target = tuple(n - h.target[k] for k in keep_tgt)
    width = max(target, default=1) or 1
    entries = np.zeros((len(source), len(target), width), dtype=np.int64)
    for ii, i in enumerate(keep_src):
        a = h.source[i]
        for kk, k in enumerate(keep_tgt):
            b = h.target[k]
            for s in range(n - b):
                t = s + b - a
                if 0 <= t < b:
                    entries[ii, kk, s] = h.entries[i, k, t]
    return LambdaMap(source, target, entries, h.p)


def functional_map(T: np.ndarray, f: np.ndarray, n: int, p: int) -> np.ndarray:
    """
    The Λ-map A -> [n] attached to a functional f on A (column vector):
    column j of the matrix is T^(n-1-j) f.
    """
    G = np.zeros((T.shape[0], n), dtype=np.int64)
    column = mod_p(f.reshape(-1), p)
    for j in range(n - 1, -1, -1):
        G[:, j] = column
        column = mod_p(T @ column, p)
    return G


def mimo(h: LambdaMap, n: int) -> SubspacePair:
    """
    The minimal monomorphism (A, B ⊕ [n]^t) attached to h: A -> B, where
    t = dim(soc A ∩ ker h).
    """
    p = h.p
    H = h.to_matrix()
    dim_a = h.source_dim
    offsets = LambdaMap._offsets(h.source)
    socle = np.zeros((len(h.source), dim_a), dtype=np.int64)
    for i, a in enumerate(h.source):
        socle[i, offsets[i] + a - 1] = 1
    kernel = left_nullspace(H, p) if H.shape[1] else np.eye(dim_a, dtype=np.int64)
    K = intersect_rows(socle, kernel, p)
    # rref rows are dual to the unit functionals at their pivots
    pivots = rref_mod(K, p)[1] if K.shape[0] else []
    t = len(pivots)

    T_a = nilpotent_operator(h.source)
    extra = []
    for c in pivots:
        f = np.zeros(dim_a, dtype=np.int64)
        f[c] = 1
        extra.append(functional_map(T_a, f, n, p))
    combined = np.hstack([H] + extra) if extra else H

    lengths = list(h.target) + [n] * t
    logger.debug(f"mimo: {h.source} -> {h.target} gains {t} copies of [{n}]")
    return from_blocks(n, p, lengths, combined)


def cokernel_map(X: SubspacePair) -> LambdaMap:
    """The projection V -> V/U in box bases of V and of a Jordan basis of V/U."""
    quotient = induced(X, np.eye(X.dim, dtype=np.int64), X.u_basis)
    pi = quotient.to_jordan(np.eye(X.dim, dtype=np.int64), X.p)
    return LambdaMap.from_matrix(tuple(X.lam), tuple(quotient.pair.lam), pi, X.p)


def split_full_picket(X: SubspacePair) -> SubspacePair | None:
    """Removes one summand ([n],[n]); None when there is none."""
    top = matpow_mod(X.operator, X.n - 1, X.p)
    for u in X.u_basis:
        image = mod_p(u @ top, X.p)
        nz = np.nonzero(image)[0]
        if nz.size:
            f = np.zeros(X.dim, dtype=np.int64)
            f[nz[0]] = inv_mod_scalar(image[nz[0]], X.p)
            G = functional_map(X.operator, f, X.n, X.p)
            return sub_pair(X, left_nullspace(G, X.p))
    return None


def split_zero_picket(X: SubspacePair) -> SubspacePair | None:
    """Removes one summand (0,[n]); None when there is none."""
    annihilator = nullspace_mod(X.u_basis, X.p) if X.u_dim else np.eye(X.dim, dtype=np.int64)
    top = matpow_mod(X.operator, X.n - 1, X.p)
    for f in annihilator.T:
        if np.any(mod_p(top @ f, X.p)):
            G = functional_map(X.operator, f, X.n, X.p)
            return sub_pair(X, left_nullspace(G, X.p))
    return None


def strip_projective_pickets(X: SubspacePair) -> tuple[SubspacePair, int, int]:
    """(core, number of (0,[n]) summands, number of ([n],[n]) summands)."""
    zero_count = full_count = 0
    while True:
        Y = split_full_picket(X)
        if Y is None:
            break
        X, full_count = Y, full_count + 1
    while True:
        Y = split_zero_picket(X)
        if Y is None:
            break
        X, zero_count = Y, zero_count + 1
    return X, zero_count, full_count


def is_reduced(X: SubspacePair) -> bool:
    """No projective picket summand."""
    _, zeros, fulls = strip_projective_pickets(X)
    return zeros == 0 and fulls == 0


def tau(X: SubspacePair) -> SubspacePair:
    """τ_n X = Mimo Ω² Cok X, computed on the reduced part of X."""
    core, _, _ = strip_projective_pickets(X)
    if core.is_zero():
        return zero_pair(X.n, X.p)
    h = stable_omega_map(stable_omega_map(cokernel_map(core), X.n), X.n)
    result, _, _ = strip_projective_pickets(mimo(h, X.n))
    return result


def tau_power(X: SubspacePair, k: int) -> SubspacePair:
    for _ in range(k):
        X = tau(X)
    return X


def tau_orbit(X: SubspacePair, length: int = 6) -> list[SubspacePair]:
    orbit = [X]
    for _ in range(length):
        orbit.append(tau(orbit[-1]))
    return orbit


def central_object(n: int, p: int) -> SubspacePair:
    """
    V = [n, n-2, 2] with U generated by T^2 v1 + T v2 + v3 and T^(n-4) v2 + T v3;
    par ([n-2,2],[n,n-2,2],[n-2,2]).
    """
    if n < 4:
        raise InvalidObjectError(f"central object needs n >= 4, got {n}")
    X = SubspacePair(n, p, Partition.of([n, n - 2, 2]), np.zeros((0, 2 * n), dtype=np.int64))
    u1 = X.unit(0, 2) + X.unit(1, 1) + X.unit(2, 0)
    u2 = X.unit(1, n - 4) + X.unit(2, 1)
    return X.with_gens(np.vstack([u1, u2]))


def plus_pn(X: SubspacePair) -> SubspacePair:
    """X⁺ for X in the principal component: X ⊕ ([n-2,2], [n,n-2,2])."""
    return direct_sum(X, central_object(X.n, X.p))


def kappa(i: int, lam: Partition, n: int) -> Partition:
    """The partition-level step functions; kappa(i) depends on i mod 6."""
    step = (i - 1) % 6 + 1
    if step == 1:
        return lam.union(Partition.of([n]))
    if step == 4:
        return lam
    if step == 5:
        return lam.union(Partition.of([1]))
    replace = {2: (n, [n - 1]), 3: (n - 1, [n, n - 2]), 6: (1, [2])}
    old, new = replace[step]
    if old not in lam.parts:
        raise InvalidObjectError(f"kappa_{step} is undefined on {lam}: no part {old}")
    parts = list(lam.parts)
    parts.remove(old)
    return Partition.of(parts + new)


def kappa_cycle(i: int, lam: Partition, n: int) -> Partition:
    for k in range(i, i + 6):
        lam = kappa(k, lam, n)
    return lam


# uwb-vectors of the principal component, keyed by (column, row); column 12 repeats column 0
_PN_TABLE = {
    (2, 0): "0|n/1", (10, 0): "n|0/1",
    (1, 1): "0|n-1/1", (3, 1): "1|n-1/1", (5, 1): "1|0/1",
    (7, 1): "0|1/1", (9, 1): "n-1|1/1", (11, 1): "n-1|0/1",
    (0, 2): "n-1|n-1/2", (2, 2): "1|n-2/1", (4, 2): "2|n-1/2",
    (6, 2): "1|1/1", (8, 2): "n-1|2/2", (10, 2): "n-2|1/1",
    (1, 3): "n|n-2/2", (3, 3): "2|n-2/2", (5, 3): "2|n/2",
    (7, 3): "n|2/2", (9, 3): "n-2|2/2", (11, 3): "n-2|n/2",
    (0, 4): "n-1|n-1/2", (2, 4): "n+1|n-2/3", (4, 4): "2|n-1/2",
    (6, 4): "n+1|n+1/3", (8, 4): "n-1|2/2", (10, 4): "n-2|n+1/3",
    (1, 5): "n|n-1/3", (3, 5): "n+1|n-1/3", (5, 5): "n+1|n/3",
    (7, 5): "n|n+1/3", (9, 5): "n-1|n+1/3", (11, 5): "n-1|n/3",
    (0, 6): "n|n/4", (2, 6): "n|n/3", (4, 6): "2n|n/4",
    (6, 6): "n|n/3", (8, 6): "n|2n/4", (10, 6): "n|n/3",
    (1, 7): "n|n+1/4", (3, 7): "2n-1|n+1/4", (5, 7): "2n-1|n/4",
    (7, 7): "n|2n-1/4", (9, 7): "n+1|2n-1/4", (11, 7): "n+1|n/4",
    (0, 8): "n+1|n+1/4", (2, 8): "2n-1|n+2/5", (4, 8): "2n-2|n+1/4",
    (6, 8): "2n-1|2n-1/5", (8, 8): "n+1|2n-2/4", (10, 8): "n+2|2n-1/5",
}

# central objects of quasi-length 6
PN_CENTRAL = ((2, 6), (6, 6), (10, 6))

_TERM = re.compile(r"^(?:(\d*)n)?([+-]?\d+)?$")


def _evaluate(expr: str, n: int) -> int:
    match = _TERM.match(expr)
    if not match or not expr:
        raise ValueError(f"Unknown uwb expression: {expr}")
    coeff, const = match.groups()
    value = int(const) if const else 0
    if "n" in expr:
        value += (int(coeff) if coeff else 1) * n
    return value


def pn_uwb_table(n: int) -> dict[tuple[int, int], tuple[int, int, int]]:
    """uwb-vectors of the objects of quasi-length <= 9 in the principal component of S(n)."""
    table = {}
    for key, text in _PN_TABLE.items():
        uw, b = text.split("/")
        u, w = uw.split("|")
        table[key] = (_evaluate(u, n), _evaluate(w, n), int(b))
    return table


def coray_simples(n: int, p: int) -> list[SubspacePair]:
    """S, ([n],[n]), ([n-1],[n-1]), (0,[n]), ([1],[n]), ([1],[1])."""
    return [
        picket(0, 1, n, p),
        picket(n, n, n, p),
        picket(n - 1, n - 1, n, p),
        picket(0, n, n, p),
        picket(1, n, n, p),
        picket(1, 1, n, p),
    ]


def tau_invariants(X: SubspacePair) -> dict[str, int]:
    """bU, bW, c_n of X and c_n, b of τX, for the width identities."""
    par = partition_triple(X)
    Y = tau(X)
    return {
        "b": X.width,
        "b_u": par.u_part.width,
        "b_w": par.w_part.width,
        "b_omega_v": X.lam.syzygy(X.n).width,
        "c_n": X.lam.count(X.n),
        "b_tau": Y.width,
        "c_n_tau": Y.lam.count(X.n),
    }
