import itertools
import logging
import typing as tp
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from nilop.config import NilopConfig
from nilop.errors import BudgetExceededError, InvalidObjectError, UndecidedError
from nilop.modules.pair import (
    SubspacePair,
    extend_basis,
    nilpotent_operator,
    partition_triple,
    sub_pair,
)
from nilop.modules.partition import Partition, partitions
from nilop.observability import progress
from nilop.ops import (
    as_rows,
    complement_rows,
    inv_mod_mat,
    is_invertible,
    is_nilpotent,
    left_nullspace,
    matpow_mod,
    mod_p,
    nullspace_mod,
    row_basis,
    rref_mod,
)
from nilop.output import IndecomposabilityCertificate
from nilop.utils.parser import serialize_pair

logger = logging.getLogger(__name__)


def _check_compatible(X: SubspacePair, Y: SubspacePair) -> None:
    if (X.n, X.p) != (Y.n, Y.p):
        raise InvalidObjectError(f"mismatched (n, p): {(X.n, X.p)} vs {(Y.n, Y.p)}")


def _generator_maps(X: SubspacePair, Y: SubspacePair) -> np.ndarray:
    """
    All Λ-maps V -> V' sending one generator x_i to T'^j y_k (with T'^(λ_i + j) y_k = 0)
    and every other generator to zero. They span Hom_Λ(V, V').
    """
    maps = []
    for i, a in enumerate(X.lam):
        for k, b in enumerate(Y.lam):
            for j0 in range(max(0, b - a), b):
                phi = np.zeros((X.dim, Y.dim), dtype=np.int64)
                for j in range(min(a, b - j0)):
                    phi[X.coordinate(i, j), Y.coordinate(k, j0 + j)] = 1
                maps.append(phi)
    if not maps:
        return np.zeros((0, X.dim, Y.dim), dtype=np.int64)
    return np.stack(maps)


@dataclass(frozen=True)
class MorphismSpace:
    """
    Hom(X, Y) in S(n): matrices φ of shape |V| x |V'| with T φ = φ T' and U φ ⊆ U'.

    Args:
        - **source**, **target**: the two objects
        - **basis**: array of shape (dim, |V|, |V'|)
    """

    source: SubspacePair
    target: SubspacePair
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def element(self, coeffs: tp.Sequence[int]) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.int64)
        return mod_p(np.tensordot(coeffs, self.basis, axes=1), self.source.p)


def hom_basis(X: SubspacePair, Y: SubspacePair) -> MorphismSpace:
    _check_compatible(X, Y)
    p = X.p
    maps = _generator_maps(X, Y)
    if maps.shape[0] == 0 or X.dim == 0:
        return MorphismSpace(X, Y, np.zeros((0, X.dim, Y.dim), dtype=np.int64))

    # v ∈ U' iff v A = 0
    if Y.u_dim:
        A = nullspace_mod(Y.u_basis, p)
    else:
        A = np.eye(Y.dim, dtype=np.int64)
    U = X.u_basis
    if U.shape[0] == 0 or A.shape[1] == 0:
        constraints = np.zeros((maps.shape[0], 0), dtype=np.int64)
    else:
        constraints = np.einsum("rd,tde,ef->trf", U, maps, A).reshape(maps.shape[0], -1) % p

    solutions = left_nullspace(constraints, p)
    basis = np.einsum("st,tde->sde", solutions, maps) % p
    return MorphismSpace(X, Y, basis.astype(np.int64))


def hom_dim(X: SubspacePair, Y: SubspacePair) -> int:
    return hom_basis(X, Y).dim


class EndAlgebra:
    """
    End(X) with its basis, structure constants and (after certification) a
    nilpotent ideal containing every nilpotent element found.
    """

    def __init__(self, X: SubspacePair, config: NilopConfig | None = None):
        if X.is_zero():
            raise InvalidObjectError("End of the zero object is the zero ring")
        self.pair = X
        self.p = X.p
        self.config = config or NilopConfig(p=X.p)
        self.basis = hom_basis(X, X).basis
        flat = self.basis.reshape(self.dim, -1)
        _, pivots = rref_mod(flat, self.p)
        self._pivots = pivots
        self._pivot_inverse = inv_mod_mat(flat[:, pivots], self.p)
        self._radical = np.zeros((0, self.dim), dtype=np.int64)
        self._certificate: IndecomposabilityCertificate | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.pair.dim

    def coordinates(self, phi: np.ndarray) -> np.ndarray:
        """Coordinates of an endomorphism (or a stack of them) in the basis."""
        flat = np.asarray(phi).reshape(-1, self.size * self.size)
        return mod_p(flat[:, self._pivots] @ self._pivot_inverse, self.p)

    def element(self, coeffs: np.ndarray) -> np.ndarray:
        return mod_p(np.tensordot(np.asarray(coeffs, dtype=np.int64), self.basis, axes=1), self.p)

    @cached_property
    def table(self) -> np.ndarray:
        """table[i, j] = coordinates of basis[i] @ basis[j]."""
        products = np.einsum("iab,jbc->ijac", self.basis, self.basis) % self.p
        return self.coordinates(products).reshape(self.dim, self.dim, self.dim)

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return mod_p(np.einsum("i,j,ijk->k", a, b, self.table), self.p)

    def ideal(self, gens: np.ndarray) -> np.ndarray:
        """Two-sided ideal A g A generated by coordinate rows `gens` (End(X) is unital)."""
        gens = as_rows(gens, self.dim)
        if gens.shape[0] == 0:
            return gens
        rows = [gens]
        for g in gens:
            # b_i g, then b_i g b_j
            left = np.einsum("j,ijk->ik", g, self.table) % self.p
            both = np.einsum("ai,ijk->ajk", left, self.table).reshape(-1, self.dim) % self.p
            rows.extend([left, both])
        return row_basis(np.vstack(rows), self.p)

    def is_nilpotent_ideal(self, ideal: np.ndarray) -> bool:
        power = ideal
        for _ in range(self.dim + 1):
            if power.shape[0] == 0:
                return True
            products = np.einsum("ai,bj,ijk->abk", power, ideal, self.table).reshape(-1, self.dim) % self.p
            nxt = row_basis(products, self.p)
            if nxt.shape[0] == power.shape[0]:
                return False
            power = nxt
        return power.shape[0] == 0

    @property
    def radical_basis(self) -> np.ndarray:
        self.certify()
        return self._radical

    @property
    def is_local(self) -> bool:
        return self.certify().indecomposable

    def _split(self, phi: np.ndarray) -> tuple[SubspacePair, SubspacePair]:
        """Fitting decomposition V = ker φ^N ⊕ im φ^N; both pieces are Λ-submodules containing their share of U."""
        X = self.pair
        power = matpow_mod(phi, self.size, self.p)
        kernel = left_nullspace(power, self.p)
        image = row_basis(power, self.p)
        logger.debug(f"Fitting split of {X!r}: {kernel.shape[0]} + {image.shape[0]}")
        return sub_pair(X, kernel), sub_pair(X, image)

    def _classify(self, coeffs: np.ndarray) -> str:
        phi = self.element(coeffs)
        if is_invertible(phi, self.p):
            return "unit"
        if is_nilpotent(phi, self.p):
            return "nilpotent"
        return "split"

    def _search_split(self, scanned: int) -> IndecomposabilityCertificate:
        """A non-local End(X): look for an element that is neither nilpotent nor invertible."""
        budget = self.config.budget
        candidates: tp.Iterable[np.ndarray]
        if self.p**self.dim <= budget:
            candidates = (np.array(c, dtype=np.int64) for c in itertools.product(range(self.p), repeat=self.dim))
        else:
            rng = np.random.default_rng(self.config.seed)
            candidates = (rng.integers(0, self.p, size=self.dim) for _ in range(budget))
        for coeffs in candidates:
            scanned += 1
            if scanned > budget:
                break
            if self._classify(coeffs) == "split":
                phi = self.element(coeffs)
                return IndecomposabilityCertificate(False, self.dim, self._radical.shape[0], scanned, self._split(phi))
        raise UndecidedError(
            f"no split element found for {self.pair!r} within budget {budget}",
            scanned=scanned,
            budget=budget,
        )

    def certify(self) -> IndecomposabilityCertificate:
        if self._certificate is None:
            self._certificate = self._certify()
        return self._certificate

    def _grow(self, coeffs: np.ndarray) -> bool:
        """Adds the ideal generated by a nilpotent element; False when the result is not nilpotent."""
        grown = row_basis(np.vstack([self._radical, self.ideal(coeffs.reshape(1, -1))]), self.p)
        if not self.is_nilpotent_ideal(grown):
            return False
        self._radical = grown
        return True

    def _certify(self) -> IndecomposabilityCertificate:
        scanned = 0
        for k in range(self.dim):
            coeffs = np.zeros(self.dim, dtype=np.int64)
            coeffs[k] = 1
            scanned += 1
            kind = self._classify(coeffs)
            if kind == "split":
                phi = self.element(coeffs)
                return IndecomposabilityCertificate(False, self.dim, self._radical.shape[0], scanned, self._split(phi))
            if kind == "nilpotent" and not self._grow(coeffs):
                return self._search_split(scanned)

        budget = self.config.budget
        while True:
            complement = complement_rows(self._radical, self.dim, self.p)
            f = complement.shape[0]
            if f <= 1:
                return IndecomposabilityCertificate(True, self.dim, self._radical.shape[0], scanned)
            if scanned + self.p**f > budget:
                raise UndecidedError(
                    f"End({self.pair!r}) has a quotient of dimension {f}; scanning {self.p}^{f} cosets exceeds budget {budget}",
                    scanned=scanned,
                    budget=budget,
                )
            grown = False
            for c in itertools.product(range(self.p), repeat=f):
                if not any(c):
                    continue
                scanned += 1
                coeffs = mod_p(np.array(c, dtype=np.int64) @ complement, self.p)
                kind = self._classify(coeffs)
                if kind == "unit":
                    continue
                if kind == "split":
                    phi = self.element(coeffs)
                    return IndecomposabilityCertificate(False, self.dim, self._radical.shape[0], scanned, self._split(phi))
                if not self._grow(coeffs):
                    return self._search_split(scanned)
                grown = True
                break
            if not grown:
                # every nonzero coset is a unit: End(X)/R is a division ring
                return IndecomposabilityCertificate(True, self.dim, self._radical.shape[0], scanned)


def indecomposability(X: SubspacePair, config: NilopConfig | None = None) -> IndecomposabilityCertificate:
    if X.is_zero():
        raise InvalidObjectError("the zero object is neither decomposable nor indecomposable")
    return EndAlgebra(X, config).certify()


def is_indecomposable(X: SubspacePair, config: NilopConfig | None = None) -> bool:
    return indecomposability(X, config).indecomposable


def decompose(X: SubspacePair, config: NilopConfig | None = None) -> list[SubspacePair]:
    """Indecomposable summands of X, sorted by (|V|, serialized form)."""
    if X.is_zero():
        return []
    pending = [X]
    leaves: list[SubspacePair] = []
    while pending:
        Y = pending.pop()
        if Y.is_zero():
            continue
        cert = indecomposability(Y, config)
        if cert.indecomposable:
            leaves.append(Y)
        else:
            pending.extend(cert.split)
    return sorted(leaves, key=lambda Z: (Z.dim, serialize_pair(Z)))


def _isomorphic_indecomposables(X: SubspacePair, Y: SubspacePair) -> bool:
    """X, Y indecomposable: X ≅ Y iff some composite X -> Y -> X is invertible."""
    if partition_triple(X) != partition_triple(Y):
        return False
    forward = hom_basis(X, Y).basis
    backward = hom_basis(Y, X).basis
    for f in forward:
        for g in backward:
            if is_invertible(mod_p(f @ g, X.p), X.p):
                return True
    return False


def is_isomorphic(X: SubspacePair, Y: SubspacePair, config: NilopConfig | None = None) -> bool:
    _check_compatible(X, Y)
    if partition_triple(X) != partition_triple(Y):
        return False
    if X.is_zero():
        return True
    xs = decompose(X, config)
    ys = decompose(Y, config)
    if len(xs) != len(ys):
        return False
    unmatched = list(ys)
    for A in xs:
        for k, B in enumerate(unmatched):
            if _isomorphic_indecomposables(A, B):
                del unmatched[k]
                break
        else:
            return False
    return True


def _projective_points(basis: np.ndarray, p: int) -> tp.Iterator[np.ndarray]:
    """One representative per line in the span of `basis` (first nonzero coefficient 1)."""
    c = basis.shape[0]
    for lead in range(c):
        for tail in itertools.product(range(p), repeat=c - lead - 1):
            coeffs = np.zeros(c, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1 :] = tail
            yield mod_p(coeffs @ basis, p)


def submodules(lam: Partition, p: int, budget: int | None = None) -> list[np.ndarray]:
    """
    Every Λ-submodule of V(λ) as a canonical rref basis, grown one dimension at a time:
    U + k v is a submodule whenever v T ∈ U.
    """
    T = nilpotent_operator(lam)
    dim = lam.size
    start = np.zeros((0, dim), dtype=np.int64)
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for U in frontier:
            if U.shape[0]:
                A = nullspace_mod(U, p)
                preimage = left_nullspace(mod_p(T @ A, p), p)
            else:
                preimage = left_nullspace(T, p)
            # lines of preimage / U
            C = np.array(extend_basis(U, preimage, p), dtype=np.int64).reshape(-1, dim)
            for v in _projective_points(C, p):
                W = row_basis(np.vstack([U, v.reshape(1, -1)]), p)
                key = W.tobytes()
                if key not in seen:
                    seen[key] = W
                    nxt.append(W)
                    if budget is not None and len(seen) > budget:
                        raise BudgetExceededError(
                            f"more than {budget} submodules of {lam}", scanned=len(seen), budget=budget
                        )
        frontier = nxt
    return list(seen.values())


@dataclass
class _Bucket:
    representatives: list[SubspacePair] = field(default_factory=list)


def enumerate_indecomposables(
    n: int,
    vmax: int,
    p: int = 2,
    config: NilopConfig | None = None,
    cyclic_only: bool = False,
) -> list[SubspacePair]:
    """
    Representatives of all isomorphism classes of indecomposable objects of S(n)
    with |V| <= vmax, sorted by (|V|, serialized form). With `cyclic_only` only
    objects whose U is a nonzero cyclic submodule are kept.
    """
    config = config or NilopConfig(p=p)
    buckets: dict[str, _Bucket] = {}
    scanned = 0
    shapes = [lam for v in range(1, vmax + 1) for lam in partitions(v, n)]
    for lam in progress(shapes, desc=f"Enumerating S({n})", config=config):
        subs = submodules(lam, p, budget=config.budget - scanned)
        scanned += len(subs)
        if cyclic_only:
            T = nilpotent_operator(lam)
            # U is cyclic iff U / UT is a line
            subs = [U for U in subs if U.shape[0] and row_basis(mod_p(U @ T, p), p).shape[0] == U.shape[0] - 1]
        found = 0
        for U in subs:
            X = SubspacePair(n, p, lam, U)
            if not is_indecomposable(X, config):
                continue
            key = str(partition_triple(X))
            bucket = buckets.setdefault(key, _Bucket())
            if any(_isomorphic_indecomposables(X, R) for R in bucket.representatives):
                continue
            bucket.representatives.append(X)
            found += 1
        logger.info(f"{lam}: {len(subs)} submodules, {found} new classes")

    reps = [X for bucket in buckets.values() for X in bucket.representatives]
    return sorted(reps, key=lambda Z: (Z.dim, serialize_pair(Z)))


def to_json_lines(pairs: tp.Iterable[SubspacePair]) -> str:
    return "".join(serialize_pair(X, par=str(partition_triple(X))) + "\n" for X in pairs)
