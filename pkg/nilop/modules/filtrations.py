import itertools
import logging
import typing as tp

import numpy as np

from nilop.config import NilopConfig
from nilop.errors import BudgetExceededError, InvalidObjectError
from nilop.modules.homs import decompose
from nilop.modules.pair import (
    PartitionTriple,
    SubspacePair,
    direct_sum,
    module_span,
    partition_triple,
    quotient_pair,
    sub_pair,
    zero_pair,
)
from nilop.modules.partition import Partition
from nilop.ops import intersect_rows, matpow_mod, mod_p, row_basis
from nilop.output import FiltrationStep, NiceDecomposition

logger = logging.getLogger(__name__)


def telescope(X: SubspacePair) -> list[FiltrationStep]:
    """
    The filtration by V_t = [λ_1] ⊕ ... ⊕ [λ_t] in the stored block order.

    Factor t is the picket ([|U ∩ V_t| - |U ∩ V_(t-1)|], [λ_t]).
    """
    if X.is_zero():
        raise InvalidObjectError("the zero object has no telescope filtration")
    steps = []
    previous = 0
    for t, length in enumerate(X.lam, start=1):
        V_t = np.eye(X.dim, dtype=np.int64)[: X.offsets[t - 1] + length]
        current = intersect_rows(X.u_basis, V_t, X.p).shape[0] if X.u_dim else 0
        s = current - previous
        steps.append(FiltrationStep(t, PartitionTriple.of([s], [length], [length - s])))
        previous = current
    return steps


def split_zero_pickets(
    X: SubspacePair, config: NilopConfig | None = None
) -> tuple[SubspacePair, Partition]:
    """X ≅ core ⊕ ⊕(0,[m]); returns the core and the lengths m."""
    core, zeros = [], []
    for Y in decompose(X, config):
        if Y.u_dim == 0 and Y.width == 1:
            zeros.append(Y.dim)
        else:
            core.append(Y)
    return (direct_sum(*core) if core else zero_pair(X.n, X.p)), Partition.of(zeros)


def is_pure(X: SubspacePair, S: np.ndarray) -> bool:
    """S ∩ T^k V = T^k S for all k: the submodule S is a direct summand of V."""
    T = X.operator
    for k in range(1, X.lam.height):
        Tk = matpow_mod(T, k, X.p)
        image = row_basis(mod_p(S @ Tk, X.p), X.p)
        if intersect_rows(S, Tk, X.p).shape[0] != image.shape[0]:
            return False
    return True


def is_extended_picket(par: PartitionTriple) -> bool:
    """par = ([u],[u+w-1,1],[w]) with u, w >= 1."""
    v = par.v_part
    if v.width != 2 or v[1] != 1 or par.u_part.width != 1 or par.w_part.width != 1:
        return False
    return par.u_part[0] + par.w_part[0] - 1 == v[0]


def _lines(dim: int, p: int) -> tp.Iterator[np.ndarray]:
    """Nonzero vectors of F_p^dim up to scalar, in lexicographic order."""
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            v = np.zeros(dim, dtype=np.int64)
            v[lead] = 1
            v[lead + 1 :] = tail
            yield v


class _Search:
    def __init__(self, config: NilopConfig):
        self.config = config
        self.scanned = 0

    def tick(self) -> None:
        self.scanned += 1
        if self.scanned > self.config.budget:
            raise BudgetExceededError(
                f"nice filtration search exceeded budget {self.config.budget}",
                scanned=self.scanned,
                budget=self.config.budget,
            )

    def special_generators(self, Q: SubspacePair) -> list[np.ndarray]:
        """Vectors v of maximal height up to scalar, sorted by -|U ∩ Λv| then lexicographically."""
        h = Q.lam.height
        top = matpow_mod(Q.operator, h - 1, Q.p)
        ranked = []
        for v in _lines(Q.dim, Q.p):
            self.tick()
            if not np.any(mod_p(v @ top, Q.p)):
                continue
            span = module_span(v, Q.operator, Q.p)
            overlap = intersect_rows(Q.u_basis, span, Q.p).shape[0] if Q.u_dim else 0
            ranked.append((-overlap, tuple(v.tolist()), v))
        ranked.sort(key=lambda item: item[:2])
        return [v for _, _, v in ranked]

    def factors(self, Q: SubspacePair) -> list[PartitionTriple] | None:
        if Q.is_zero():
            return []
        if Q.lam.height < 2:
            return None
        socle = [Q.unit(i, length - 1) for i, length in enumerate(Q.lam) if length == 1]
        for v in self.special_generators(Q):
            span = module_span(v, Q.operator, Q.p)
            candidates = [span]
            # extended pickets: add a socle vector spanning a [1] summand
            for w in _socle_lines(socle, Q.p):
                S = row_basis(np.vstack([span, w.reshape(1, -1)]), Q.p)
                if S.shape[0] == span.shape[0] + 1:
                    candidates.append(S)
            for S in candidates:
                self.tick()
                if not is_pure(Q, S):
                    continue
                piece = sub_pair(Q, S)
                par = partition_triple(piece)
                if piece.width == 2 and not is_extended_picket(par):
                    continue
                rest = self.factors(quotient_pair(Q, S))
                if rest is not None:
                    return [par] + rest
        return None


def _socle_lines(socle: list[np.ndarray], p: int) -> tp.Iterator[np.ndarray]:
    if not socle:
        return
    basis = np.array(socle, dtype=np.int64)
    for coeffs in _lines(len(socle), p):
        yield mod_p(coeffs @ basis, p)


def nice_decomposition(X: SubspacePair, config: NilopConfig | None = None) -> NiceDecomposition:
    """
    X = X' ⊕ X'' with X'' of height <= 1 and a g-split filtration of X' whose
    factors are pickets of height >= 2 and extended pickets ([u],[u+w-1,1],[w]).
    """
    config = config or NilopConfig(p=X.p)
    summands = decompose(X, config)
    low = [Y for Y in summands if Y.lam.height <= 1]
    high = [Y for Y in summands if Y.lam.height >= 2]
    top = direct_sum(*high) if high else zero_pair(X.n, X.p)
    bottom = direct_sum(*low) if low else zero_pair(X.n, X.p)

    search = _Search(config)
    factors = search.factors(top)
    if factors is None:
        raise InvalidObjectError(f"no nice filtration found for {top!r}")
    logger.debug(f"nice filtration of {top!r}: {[str(f) for f in factors]} after {search.scanned} candidates")
    return NiceDecomposition(top=top, factors=factors, height_one=bottom)


def nice_steps(decomposition: NiceDecomposition) -> list[FiltrationStep]:
    return [FiltrationStep(t, par) for t, par in enumerate(decomposition.factors, start=1)]
