import itertools
import logging
import math
import typing as tp
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from nilop.errors import InvalidObjectError
from nilop.modules.pair import PartitionTriple, SubspacePair, picket
from nilop.modules.partition import Partition, partition_count
from nilop.ops import in_row_space, matpow_mod, mod_p
from nilop.output import CountKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PicketCode:
    """a0\\a1\\a2: the picket ([a1], [a1+a2]) of S(a0+a1+a2)."""

    a0: int
    a1: int
    a2: int

    def __post_init__(self):
        if min(self.a0, self.a1, self.a2) < 0 or (self.a1, self.a2) == (0, 0):
            raise InvalidObjectError(f"invalid picket code {self.a0}\\{self.a1}\\{self.a2}")

    @property
    def n(self) -> int:
        return self.a0 + self.a1 + self.a2

    @property
    def par(self) -> PartitionTriple:
        return PartitionTriple.of([self.a1], [self.a1 + self.a2], [self.a2])

    def is_boundary(self) -> bool:
        return 0 in (self.a0, self.a1, self.a2)

    def is_reduced(self) -> bool:
        return (self.a0, self.a1, self.a2).count(0) <= 1

    def rotate(self) -> "PicketCode":
        """τ² on reduced pickets: a0\\a1\\a2 -> a1\\a2\\a0."""
        return PicketCode(self.a1, self.a2, self.a0)

    def __str__(self):
        return f"{self.a0}\\{self.a1}\\{self.a2}"


@dataclass(frozen=True)
class BipicketCode:
    c1: int
    c2: int
    c3: int
    c4: int
    c5: int

    def __post_init__(self):
        if min(self.c1, self.c3, self.c5) < 1 or min(self.c2, self.c4) < 0:
            raise InvalidObjectError(f"invalid bipicket code {self.values}")

    @property
    def values(self) -> tuple[int, int, int, int, int]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5)

    def c(self, i: int, j: int) -> int:
        """c_ij = c_i + ... + c_j (1-based, inclusive)."""
        return sum(self.values[i - 1 : j])

    @property
    def height(self) -> int:
        return self.c(1, 5)

    @property
    def par(self) -> PartitionTriple:
        return PartitionTriple.of(
            [self.c(1, 3), self.c2],
            [self.c(1, 5), self.c(2, 4)],
            [self.c(3, 5), self.c4],
        )


@dataclass(frozen=True)
class SubsetCode:
    """
    A non-empty set E = {e_1 < ... < e_m} of positive integers.

    b = ceil(m / 2); the first b elements are the e_i and d_i = e_(i+m-b) - e_b.
    """

    elements: tuple[int, ...]

    def __post_init__(self):
        elements = tuple(sorted(set(int(e) for e in self.elements)))
        if not elements or elements[0] < 1:
            raise InvalidObjectError(f"a subset code needs non-empty positive elements, got {self.elements}")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def of(cls, elements: tp.Iterable[int]) -> "SubsetCode":
        return cls(tuple(elements))

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def b(self) -> int:
        return (self.m + 1) // 2

    @cached_property
    def e(self) -> tuple[int, ...]:
        return self.elements[: self.b]

    @cached_property
    def d(self) -> tuple[int, ...]:
        eb = self.e[-1]
        return tuple(self.elements[i + self.m - self.b] - eb for i in range(self.b))

    @property
    def height(self) -> int:
        return self.elements[-1]

    def is_radical(self) -> bool:
        """U lies in rad V exactly when m is even."""
        return self.m % 2 == 0


def picket_codes(n: int) -> list[PicketCode]:
    return [
        PicketCode(a0, a1, n - a0 - a1)
        for a0 in range(n + 1)
        for a1 in range(n - a0 + 1)
        if (a1, n - a0 - a1) != (0, 0)
    ]


def bipicket_codes(n: int) -> list[BipicketCode]:
    """All B(c1..c5) of height at most n."""
    out = []
    for c1, c3, c5 in itertools.product(range(1, n + 1), repeat=3):
        rest = n - c1 - c3 - c5
        if rest < 0:
            continue
        for c2 in range(rest + 1):
            for c4 in range(rest - c2 + 1):
                out.append(BipicketCode(c1, c2, c3, c4, c5))
    return sorted(out, key=lambda c: c.values)


def make_picket(code: PicketCode, p: int) -> SubspacePair:
    return picket(code.a1, code.a1 + code.a2, code.n, p)


def make_bipicket(code: BipicketCode, p: int, n: int | None = None) -> SubspacePair:
    """V = [c15, c24], u1 = T^c45 v1 + T^c4 v2, u2 = T^c34 v2."""
    n = code.height if n is None else n
    lam = Partition.of([code.c(1, 5), code.c(2, 4)])
    X = SubspacePair(n, p, lam, np.zeros((0, lam.size), dtype=np.int64))
    gens = [X.unit(0, code.c(4, 5)) + X.unit(1, code.c4)]
    if code.c2:
        gens.append(X.unit(1, code.c(3, 4)))
    return X.with_gens(np.vstack(gens))


def extended_picket(u: int, w: int, p: int, n: int | None = None) -> SubspacePair:
    """E_u^w = ([u], [u+w-1, 1], [w]), generated by T^(w-1) x1 + x2."""
    if u < 1 or w < 1:
        raise InvalidObjectError(f"extended picket needs u, w >= 1, got ({u}, {w})")
    height = u + w - 1
    n = height if n is None else n
    lam = Partition.of([height, 1])
    X = SubspacePair(n, p, lam, np.zeros((0, lam.size), dtype=np.int64))
    if height == 1:
        # E_1^1 = ([1],[1,1],[1])
        return X.with_gens(X.unit(0, 0).reshape(1, -1))
    return X.with_gens((X.unit(0, w - 1) + X.unit(1, 0)).reshape(1, -1))


def make_cyclic_sub(E: SubsetCode, n: int, p: int) -> SubspacePair:
    """M(E): V = ⊕ [e_i + d_i] with U generated by y = Σ T^(d_i) x_i."""
    if E.height > n:
        raise InvalidObjectError(f"{set(E.elements)} is not a subset of 1..{n}")
    lengths = [e + d for e, d in zip(E.e, E.d)]
    lam = Partition.of(lengths)
    X = SubspacePair(n, p, lam, np.zeros((0, lam.size), dtype=np.int64))
    # lengths strictly increase with i, so block k holds x_(b-k)
    y = sum(X.unit(E.b - 1 - i, d) for i, d in enumerate(E.d))
    return X.with_gens(mod_p(y, p).reshape(1, -1))


def subset_to_partition(E: SubsetCode) -> Partition:
    """λ(E): rank b, λ_i = d_(b-i+1) + i and λ'_i = e_(b-i+1) + i - 1 for i <= b."""
    b = E.b
    rows = [E.d[b - i] + i for i in range(1, b + 1)]
    cols = [E.e[b - i] + i - 1 for i in range(1, b + 1)]
    tail = [sum(1 for c in cols if c >= r) for r in range(b + 1, cols[0] + 1)]
    return Partition(tuple(rows + tail))


def partition_to_subset(lam: Partition) -> SubsetCode:
    if not lam.parts:
        raise InvalidObjectError("the empty partition has no subset code")
    b = lam.durfee_rank()
    conj = lam.conjugate()
    e = [conj[b - 1 - i] - (b - 1 - i) for i in range(b)]
    d = [lam[b - 1 - i] - (b - i) for i in range(b)]
    return SubsetCode.of(e + [x + e[-1] for x in d if x > 0])


def subset_lambda_bijection(
    value: SubsetCode | Partition, n: int | None = None
) -> Partition | SubsetCode:
    """E -> λ(E) on subset codes and its inverse on partitions of perimeter at most n."""
    if isinstance(value, SubsetCode):
        return subset_to_partition(value)
    if not value.parts:
        raise InvalidObjectError("the empty partition has no subset code")
    perimeter = value[0] + value.width - 1
    if n is not None and perimeter > n:
        raise InvalidObjectError(f"{value} has perimeter {perimeter} > {n}")
    return partition_to_subset(value)


def t_height_map(E: SubsetCode) -> tuple[int, ...]:
    """H(E): the T-height sequence of U in M(E); h(T^k y) = k + d_i for the least i with e_i > k."""
    out = []
    for k in range(E.e[-1]):
        i = next(i for i, e in enumerate(E.e) if e > k)
        out.append(k + E.d[i])
    return tuple(out)


def subset_from_heights(heights: tp.Sequence[int]) -> SubsetCode:
    """Inverse of t_height_map: runs of constant H_k - k give (e_i, d_i)."""
    heights = list(heights)
    if not heights or any(b <= a for a, b in zip(heights, heights[1:])) or heights[0] < 0:
        raise InvalidObjectError(f"not a strictly increasing sequence of heights: {heights}")
    e, d = [], []
    for k, h in enumerate(heights):
        shift = h - k
        if d and d[-1] == shift:
            e[-1] = k + 1
        else:
            d.append(shift)
            e.append(k + 1)
    return SubsetCode.of(e + [x + e[-1] for x in d if x > 0])


def t_height(X: SubspacePair, y: np.ndarray) -> int:
    """The largest d with y in T^d V."""
    d = 0
    while d < X.lam.height and in_row_space(matpow_mod(X.operator, d + 1, X.p), y, X.p):
        d += 1
    return d


def t_height_sequence(X: SubspacePair, y: np.ndarray) -> tuple[int, ...]:
    out = []
    current = mod_p(y, X.p)
    while np.any(current):
        out.append(t_height(X, current))
        current = mod_p(current @ X.operator, X.p)
    return tuple(out)


def make_C_lambda(lam: Partition, n: int, p: int) -> SubspacePair:
    """C_λ: U generated by Σ T^(m_i) x_i with m_i = λ_i - b + i - 1."""
    if not lam.parts or not lam.is_strongly_decreasing():
        raise InvalidObjectError(f"{lam} is not strongly decreasing")
    if lam.height > n:
        raise InvalidObjectError(f"{lam} is not bounded by {n}")
    b = lam.width
    X = SubspacePair(n, p, lam, np.zeros((0, lam.size), dtype=np.int64))
    y = sum(X.unit(i, lam[i] - b + i) for i in range(b))
    return X.with_gens(mod_p(y, p).reshape(1, -1))


@lru_cache(maxsize=None)
def _strongly_decreasing_top(n: int) -> tuple[Partition, ...]:
    """Strongly decreasing partitions with λ_1 = n."""
    if n <= 0:
        return ()
    if n == 1:
        return (Partition((1,)),)
    shifted = [Partition(tuple(x + 1 for x in lam)) for lam in _strongly_decreasing_top(n - 1)]
    ending = [Partition(tuple(x + 2 for x in lam) + (1,)) for lam in _strongly_decreasing_top(n - 2)]
    return tuple(sorted(shifted + ending, reverse=True))


def strongly_decreasing(n: int) -> list[Partition]:
    """All strongly decreasing partitions bounded by n."""
    return [lam for top in range(1, n + 1) for lam in _strongly_decreasing_top(top)]


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def picket_tau_triple(code: PicketCode) -> PartitionTriple:
    """par of τ on a picket, from its code."""
    a0, a1, a2, n = code.a0, code.a1, code.a2, code.n
    if (a0, a1) == (0, 0) or (a0, a2) == (0, 0):
        return PartitionTriple.of([], [], [])
    if a0 == 0:
        return PartitionTriple.of([], [a2], [a2])
    if a1 == 0:
        return PartitionTriple.of([a2], [a2], [])
    if a2 == 0:
        return PartitionTriple.of([a1], [n], [a0])
    return PartitionTriple.of([a1 + a2], [n, a2], [a0 + a2])


def is_picket_or_thin_bipicket(par: PartitionTriple) -> bool:
    """Width 1, or par = ([c13], [c15, c3], [c35]) of some B(c1, 0, c3, 0, c5)."""
    if par.v_part.width == 1:
        return True
    if par.v_part.width != 2 or par.u_part.width != 1 or par.w_part.width != 1:
        return False
    top, c3 = par.v_part
    c1, c5 = par.u_part[0] - c3, par.w_part[0] - c3
    return c1 >= 1 and c5 >= 1 and c1 + c3 + c5 == top


def dense_orbit_summands(n: int, u: int, v: int) -> list[tuple[PartitionTriple, int]]:
    """Indecomposable summands (with multiplicity) of the generic embedding of dimension (u, v)."""
    if not 0 <= u <= v:
        raise InvalidObjectError(f"need 0 <= u <= v, got ({u}, {v})")
    a, b = divmod(u, n)
    c, d = divmod(v, n)
    full, zero = PartitionTriple.of([n], [n], []), PartitionTriple.of([], [n], [n])
    if b == 0 and d == 0:
        terms = [(full, a), (zero, c - a)]
    elif b == 0 < d:
        terms = [(full, a), (zero, c - a), (PartitionTriple.of([], [d], [d]), 1)]
    elif 0 < b == d:
        terms = [(full, a), (zero, c - a), (PartitionTriple.of([b], [b], []), 1)]
    elif d == 0 < b:
        terms = [(full, a), (zero, c - a - 1), (PartitionTriple.of([b], [n], [n - b]), 1)]
    elif b < d:
        terms = [(full, a), (zero, c - a), (PartitionTriple.of([b], [d], [d - b]), 1)]
    else:
        terms = [(full, a), (zero, c - a - 1), (PartitionTriple.of([b], [n, d], [n + d - b]), 1)]
    return [(triple, k) for triple, k in terms if k > 0]


_PARAMS = {
    CountKind.PICKETS: ("n",),
    CountKind.PICKETS_HEIGHT_N: ("n",),
    CountKind.BIPICKETS: ("n",),
    CountKind.BIPICKETS_HEIGHT_N: ("n",),
    CountKind.CYCLIC_BY_HEIGHT: ("n",),
    CountKind.CYCLIC_TOTAL: ("n",),
    CountKind.CYCLIC_HW: ("n", "b"),
    CountKind.CYCLIC_HW_RADICAL: ("n", "b"),
    CountKind.CYCLIC_HW_NONRADICAL: ("n", "b"),
    CountKind.CYCLIC_U_HEIGHT: ("n", "u"),
    CountKind.CYCLIC_U_HEIGHT_TOTAL: ("n", "u"),
    CountKind.CYCLIC_UB: ("n", "u", "b"),
    CountKind.CYCLIC_BY_DIM: ("v",),
    CountKind.FIBONACCI_P1: ("n",),
    CountKind.GRID_PATHS: ("a", "c"),
    CountKind.GRID_PATHS_VIA: ("a", "c", "b"),
}


def _binom(a: int, b: int) -> int:
    return math.comb(a, b) if 0 <= b <= a else 0


def _check_params(kind: str, params: dict[str, int]) -> dict[str, int]:
    if kind not in _PARAMS:
        raise ValueError(f"Unknown count kind: {kind}. Supported kinds are: {CountKind.values()}")
    missing = [k for k in _PARAMS[kind] if k not in params]
    if missing:
        raise InvalidObjectError(f"count {kind} needs parameters {list(_PARAMS[kind])}, missing {missing}")
    values = {k: int(params[k]) for k in _PARAMS[kind]}
    if any(x < 0 for x in values.values()):
        raise InvalidObjectError(f"count parameters must be non-negative: {values}")
    return values


def count(kind: str, **params: int) -> int:
    """Closed-form counts of pickets, bipickets, cyclic-subspace objects and grid paths."""
    q = _check_params(kind, params)
    n = q.get("n", 0)
    if kind == CountKind.PICKETS:
        return _binom(n + 2, 2) - 1
    if kind == CountKind.PICKETS_HEIGHT_N:
        return n + 1 if n else 0
    if kind == CountKind.BIPICKETS:
        return _binom(n + 2, 5)
    if kind == CountKind.BIPICKETS_HEIGHT_N:
        return _binom(n + 1, 4)
    if kind == CountKind.CYCLIC_BY_HEIGHT:
        return 2 ** (n - 1) if n else 0
    if kind == CountKind.CYCLIC_TOTAL:
        return 2**n - 1
    if kind == CountKind.CYCLIC_HW:
        return _binom(n, 2 * q["b"] - 1) if n and q["b"] else 0
    if kind == CountKind.CYCLIC_HW_RADICAL:
        return _binom(n - 1, 2 * q["b"] - 1) if n and q["b"] else 0
    if kind == CountKind.CYCLIC_HW_NONRADICAL:
        return _binom(n - 1, 2 * q["b"] - 2) if n and q["b"] else 0
    if kind == CountKind.CYCLIC_U_HEIGHT:
        return _binom(n - 1, q["u"] - 1) if n and q["u"] else 0
    if kind == CountKind.CYCLIC_U_HEIGHT_TOTAL:
        return _binom(n, q["u"]) if q["u"] else 0
    if kind == CountKind.CYCLIC_UB:
        u, b = q["u"], q["b"]
        if not (n and u and b) or u > n:
            return 0
        return _binom(u - 1, b - 1) * _binom(n - u, b - 1)
    if kind == CountKind.CYCLIC_BY_DIM:
        return partition_count(q["v"]) if q["v"] else 0
    if kind == CountKind.FIBONACCI_P1:
        return fibonacci(n + 2) - 1
    if kind == CountKind.GRID_PATHS:
        return _binom(q["a"] + q["c"], q["a"])
    return _binom(q["a"], q["b"]) * _binom(q["c"], q["b"])


def _subsets(n: int) -> tp.Iterator[SubsetCode]:
    for r in range(1, n + 1):
        for E in itertools.combinations(range(1, n + 1), r):
            yield SubsetCode(E)


def _grid_paths(a: int, c: int) -> tp.Iterator[tuple[int, ...]]:
    """Up-step positions of the monotone paths with a up steps and c right steps."""
    return itertools.combinations(range(a + c), a)


def enumerate_count(kind: str, **params: int) -> int:
    """The same numbers as `count`, by listing codes, subsets, partitions or paths."""
    q = _check_params(kind, params)
    n = q.get("n", 0)
    if kind == CountKind.PICKETS:
        return len(picket_codes(n))
    if kind == CountKind.PICKETS_HEIGHT_N:
        return sum(1 for code in picket_codes(n) if code.a1 + code.a2 == n)
    if kind == CountKind.BIPICKETS:
        return len(bipicket_codes(n))
    if kind == CountKind.BIPICKETS_HEIGHT_N:
        return sum(1 for code in bipicket_codes(n) if code.height == n)
    if kind in (CountKind.CYCLIC_BY_HEIGHT, CountKind.CYCLIC_HW, CountKind.CYCLIC_HW_RADICAL,
                CountKind.CYCLIC_HW_NONRADICAL, CountKind.CYCLIC_U_HEIGHT, CountKind.CYCLIC_UB):
        selected = [E for E in _subsets(n) if E.height == n]
        if "b" in q:
            selected = [E for E in selected if E.b == q["b"]]
        if "u" in q:
            selected = [E for E in selected if E.e[-1] == q["u"]]
        if kind == CountKind.CYCLIC_HW_RADICAL:
            selected = [E for E in selected if E.is_radical()]
        if kind == CountKind.CYCLIC_HW_NONRADICAL:
            selected = [E for E in selected if not E.is_radical()]
        return len(selected)
    if kind == CountKind.CYCLIC_TOTAL:
        return sum(1 for _ in _subsets(n))
    if kind == CountKind.CYCLIC_U_HEIGHT_TOTAL:
        return sum(1 for E in _subsets(n) if E.e[-1] == q["u"])
    if kind == CountKind.CYCLIC_BY_DIM:
        v = q["v"]
        return sum(1 for E in _subsets(v) if subset_to_partition(E).size == v)
    if kind == CountKind.FIBONACCI_P1:
        return len(strongly_decreasing(n))
    if kind == CountKind.GRID_PATHS:
        return sum(1 for _ in _grid_paths(q["a"], q["c"]))
    a, c, b = q["a"], q["c"], q["b"]
    # the diagonal vertex after a steps with b steps to the right
    return sum(1 for ups in _grid_paths(a, c) if sum(1 for s in ups if s < a) == a - b)


CYCLIC_KINDS = (
    CountKind.CYCLIC_BY_HEIGHT,
    CountKind.CYCLIC_TOTAL,
    CountKind.CYCLIC_HW,
    CountKind.CYCLIC_HW_RADICAL,
    CountKind.CYCLIC_HW_NONRADICAL,
    CountKind.CYCLIC_U_HEIGHT,
    CountKind.CYCLIC_U_HEIGHT_TOTAL,
    CountKind.CYCLIC_UB,
)


def _u_in_radical(X: SubspacePair) -> bool:
    radical = X.operator
    return all(in_row_space(radical, g, X.p) for g in X.gens)


def object_count(kind: str, objects: tp.Iterable[SubspacePair], **params: int) -> int:
    """
    The cyclic counts of `count`, read off actual objects: `objects` should be one
    representative per class of indecomposables with nonzero cyclic U, such as
    `enumerate_indecomposables(n, vmax, cyclic_only=True)`.
    """
    if kind not in CYCLIC_KINDS:
        raise ValueError(f"Unknown cyclic count kind: {kind}. Supported kinds are: {list(CYCLIC_KINDS)}")
    q = _check_params(kind, params)
    n = q["n"]
    selected = [X for X in objects if X.lam.height <= n]
    if kind not in (CountKind.CYCLIC_TOTAL, CountKind.CYCLIC_U_HEIGHT_TOTAL):
        selected = [X for X in selected if X.lam.height == n]
    if "b" in q:
        selected = [X for X in selected if X.width == q["b"]]
    if "u" in q:
        selected = [X for X in selected if X.u_dim == q["u"]]
    if kind == CountKind.CYCLIC_HW_RADICAL:
        selected = [X for X in selected if _u_in_radical(X)]
    if kind == CountKind.CYCLIC_HW_NONRADICAL:
        selected = [X for X in selected if not _u_in_radical(X)]
    return len(selected)
