import logging
import typing as tp

import numpy as np

from nilop.errors import InvalidObjectError
from nilop.modules.artrans import central_object
from nilop.modules.graded import GradedPair, Term, kronecker_matrices, normalize_point, push_down, standard_functor
from nilop.modules.pair import SubspacePair, block_embedding, block_order, subquotient
from nilop.output import FamilyName
from nilop.utils.types import Matrix, ProjectivePoint

logger = logging.getLogger(__name__)

# number of coordinates of the parameter c; 1 means an affine scalar
PARAM_ARITY = {
    FamilyName.STANDARD_S6: 2,
    FamilyName.HOMOGENEOUS_S6L: 2,
    FamilyName.S9_P1: 2,
    FamilyName.S12_P2: 3,
    FamilyName.WIDTH4_Y: 1,
    FamilyName.S7_610: 2,
    FamilyName.S7_S3_714: 2,
    FamilyName.S8_617: 2,
    FamilyName.S7_D: 2,
    FamilyName.S7_E: 2,
    FamilyName.CENTRAL: 0,
    FamilyName.WIDTH6_A: 0,
    FamilyName.WIDTH6_B: 0,
    FamilyName.WIDTH6_BPRIME: 0,
    FamilyName.WIDTH6_C: 0,
}


def standard_s6(c: ProjectivePoint, p: int, ell: int = 1) -> GradedPair:
    """
    M_c(6ell) in S(6ell): V = [6ell, 4ell, 2ell] with U generated by
    u1 = T^(2ell) v1 + c0 T^ell v2 + c1 v3 and u2 = T^(2ell) v2 + T^ell v3.
    """
    c0, c1 = c
    blocks = [(6 * ell, 6 * ell), (5 * ell, 4 * ell), (4 * ell, 2 * ell)]
    u1 = [(0, 2 * ell, 1), (1, ell, c0), (2, 0, c1)]
    u2 = [(1, 2 * ell, 1), (2, ell, 1)]
    return GradedPair.from_terms(6 * ell, p, blocks, [u1, u2])


def c_lambda_exponents(lam: tp.Sequence[int]) -> list[int]:
    """Powers m_i with y = sum T^(m_i) x_i generating C_lambda (0-based i)."""
    b = len(lam)
    return [length - b + i for i, length in enumerate(lam)]


def gsplit_extension(n: int, p: int, left: tp.Sequence[int], right: tp.Sequence[int], coeffs: tp.Sequence[int]) -> GradedPair:
    """
    The g-split extension of C_left by C_right: u1 generates C_left, and
    u2 = (generator of C_right) + sum c_i T^(m_i - 1) x_i, one level above u1.
    """
    m_left, m_right = c_lambda_exponents(left), c_lambda_exponents(right)
    if len(coeffs) != len(left):
        raise InvalidObjectError(f"{len(left)} coefficients needed, got {len(coeffs)}")
    if min(m_left) < 1:
        raise InvalidObjectError(f"C_{tuple(left)} has a generator term in the top box")
    g = len(left)
    blocks = [(g + m, length) for m, length in zip(m_left, left)]
    blocks += [(g + 1 + m, length) for m, length in zip(m_right, right)]
    u1: list[Term] = [(i, m, 1) for i, m in enumerate(m_left)]
    u2: list[Term] = [(len(left) + j, m, 1) for j, m in enumerate(m_right)]
    u2 += [(i, m - 1, c) for i, (m, c) in enumerate(zip(m_left, coeffs))]
    return GradedPair.from_terms(n, p, blocks, [u1, u2])


def s9_p1(c: ProjectivePoint, p: int) -> GradedPair:
    """uwb (6, 24, 6): level 1, width 6; indecomposable unless c = 0."""
    return gsplit_extension(9, p, (6, 3), (9, 7, 4, 1), c)


def s12_p2(c: ProjectivePoint, p: int) -> GradedPair:
    """A P^2-family of level 1 in S(12); uwb (8, 44, 8)."""
    return gsplit_extension(12, p, (9, 6, 3), (12, 10, 7, 4, 1), c)


def width4_y(c: int, p: int) -> GradedPair:
    """X_c: V = [6, 4, 3, 1], u1 = T^2 x0, u2 = c T x0 + T^3 x1 + T^2 x2 + x3; X_c = Y for c != 0."""
    return gsplit_extension(6, p, (3,), (6, 4, 1), (c,))


def s7_610(c: ProjectivePoint, p: int) -> GradedPair:
    c0, c1 = c
    blocks = [(6, 7), (3, 1), (5, 5), (4, 3)]
    u1 = [(0, 3, 1), (1, 0, 1), (2, 2, c0), (3, 1, c1)]
    u2 = [(2, 3, 1), (3, 2, 1)]
    return GradedPair.from_terms(7, p, blocks, [u1, u2])


def s7_s3_714(c: ProjectivePoint, p: int) -> GradedPair:
    """
    A family with U of height 3 in S(7). V = [7, 6, 4, 3, 1] and the parameter
    picks the line c0 T^2 y + c1 T^3 x1 in the middle of U's top degree.
    """
    c0, c1 = c
    blocks = [(5, 6), (3, 3), (6, 7), (4, 4), (2, 1)]
    u_left = [(0, 3, 1), (1, 1, 1)]
    u_right = [(1, 1, 1), (2, 4, 1), (3, 2, 1), (4, 0, 1)]
    u_c = [(1, 2, c0), (3, 3, c1)]
    return GradedPair.from_terms(7, p, blocks, [u_left, u_right, u_c])


def s8_617(c: ProjectivePoint, p: int) -> GradedPair:
    c0, c1 = c
    blocks = [(7, 8), (6, 6), (3, 1), (5, 5), (4, 3)]
    u1 = [(0, 4, 1), (1, 3, 1), (2, 0, 1), (3, 2, c0), (4, 1, c1)]
    u2 = [(3, 3, 1), (4, 2, 1)]
    return GradedPair.from_terms(8, p, blocks, [u1, u2])


_S7_BLOCKS = [(7, 7), (6, 5), (5, 3), (4, 1)]


def s7_copies(Z: Matrix, H: Matrix, p: int, extra: tp.Sequence[bool]) -> GradedPair:
    """
    Copies k = 0..N-1 of V = Λx1 + Λx2 + Λx3 + Λx4 (lengths 7, 5, 3, 1) with

        u1(k) = T^2 x1(k) + sum_j Z[k, j] T x2(j) + sum_j H[k, j] x3(j)
        u2(k) = T^2 x2(k) + T x3(k) + x4(k)

    and, where extra[k] holds, the further generator T^2 x3(k). With N = 1 and
    (Z, H) = (c0, c1) these are the objects D_c and E_c.
    """
    copies = Z.shape[0]
    if len(extra) != copies:
        raise InvalidObjectError(f"{len(extra)} flags for {copies} copies")
    blocks = _S7_BLOCKS * copies
    generators = []
    for k in range(copies):
        u1 = [(4 * k, 2, 1)]
        u1 += [(4 * j + 1, 1, int(Z[k, j])) for j in range(copies) if Z[k, j]]
        u1 += [(4 * j + 2, 0, int(H[k, j])) for j in range(copies) if H[k, j]]
        generators.append(u1)
        generators.append([(4 * k + 1, 2, 1), (4 * k + 2, 1, 1), (4 * k + 3, 0, 1)])
        if extra[k]:
            generators.append([(4 * k + 2, 2, 1)])
    return GradedPair.from_terms(7, p, blocks, generators)


def s7_d(c: ProjectivePoint, p: int) -> GradedPair:
    """D_c, uwb (8, 8, 4)."""
    return s7_copies(np.array([[c[0]]]), np.array([[c[1]]]), p, [False])


def s7_e(c: ProjectivePoint, p: int) -> GradedPair:
    """E_c = D_c with T^2 x3 added to U, uwb (9, 7, 4)."""
    return s7_copies(np.array([[c[0]]]), np.array([[c[1]]]), p, [True])


def _s7_box_rows(copies: int, selected: tp.Iterable[int]) -> Matrix:
    """Unit rows, in the sorted box basis, of all boxes of the selected blocks."""
    lengths = [length for _, length in _S7_BLOCKS] * copies
    offsets = np.concatenate([[0], np.cumsum(lengths)]).astype(int)
    columns = [offsets[k] + j for k in selected for j in range(lengths[k])]
    rows = np.eye(int(offsets[-1]), dtype=np.int64)[np.asarray(columns, dtype=int)]
    E = np.vstack(block_embedding(lengths, block_order(lengths)))
    return rows @ E


def interpolate_s7(d1: int, d: int, d2: int, c: ProjectivePoint, p: int) -> SubspacePair:
    """
    Subquotient of the N-fold matrix-parameter version of D_c, N = d1 + d + d2:
    the x4 of the first d1 copies is factored out and the x4 of the last d2
    copies is left out of the upper module. uwb = d1(8,7,3) + d(8,8,4) + d2(7,8,3).
    """
    copies = d1 + d + d2
    if min(d1, d, d2) < 0 or copies < 1:
        raise InvalidObjectError(f"bad copy numbers ({d1}, {d}, {d2})")
    Z, H = kronecker_matrices(c, copies, p)
    B = s7_copies(Z, H, p, [False] * copies).pair
    upper_blocks = [4 * k + i for k in range(copies) for i in range(3)] + [4 * k + 3 for k in range(d1 + d)]
    upper = _s7_box_rows(copies, upper_blocks)
    lower = _s7_box_rows(copies, [4 * k + 3 for k in range(d1)])
    logger.info(f"interpolating S(7) objects with copies ({d1}, {d}, {d2})")
    return subquotient(B, upper, lower)


def interpolate_trapezoid(d: int, e: int, f: int, c: ProjectivePoint, p: int) -> SubspacePair:
    """
    e copies of E_c and d copies of D_c coupled through R_c[d + e], with the x4
    of the first f copies factored out. uwb = d(8,8,4) + e(9,7,4) - f(0,1,1).
    """
    copies = d + e
    if min(d, e, f) < 0 or copies < 1 or f > copies:
        raise InvalidObjectError(f"bad copy numbers ({d}, {e}, {f})")
    Z, H = kronecker_matrices(c, copies, p)
    B = s7_copies(Z, H, p, [True] * e + [False] * d).pair
    lower = _s7_box_rows(copies, [4 * k + 3 for k in range(f)])
    return subquotient(B, np.eye(B.dim, dtype=np.int64), lower)


def width6_a(p: int) -> GradedPair:
    """uwb (5, 1, 1): degrees [0, 5], U generated by T x."""
    return GradedPair.from_terms(6, p, [(5, 6)], [[(0, 1, 1)]])


def width6_b(p: int) -> GradedPair:
    """uwb (2, 2, 2)."""
    return GradedPair.from_terms(6, p, [(4, 3), (3, 1)], [[(0, 1, 1), (1, 0, 1)]])


def width6_bprime(p: int) -> GradedPair:
    """uwb (3, 6, 2)."""
    return GradedPair.from_terms(6, p, [(6, 6), (4, 3)], [[(0, 3, 1), (1, 1, 1)]])


def width6_c(p: int) -> GradedPair:
    """uwb (2, 3, 1)."""
    return GradedPair.from_terms(6, p, [(5, 5)], [[(0, 3, 1)]])


def jordan_extension_standard(c: ProjectivePoint, ell: int, p: int) -> SubspacePair:
    """M_c[ell]: the standard S(6) family applied to the Kronecker module R_c[ell]."""
    return push_down(standard_functor(c, ell, p))


def check_parameter(name: str, c: tp.Sequence[int] | None, p: int) -> tuple[int, ...]:
    if name not in FamilyName.values():
        raise ValueError(f"Unknown family: {name}. Supported families are: {FamilyName.values()}")
    arity = PARAM_ARITY[name]
    if c is None:
        return (1,) * arity
    c = tuple(int(x) for x in c)
    if len(c) != arity:
        raise InvalidObjectError(f"family {name} takes {arity} parameter coordinates, got {len(c)}")
    if arity >= 2:
        normalize_point(c, p)
    return tuple(x % p for x in c)


def graded_family(name: str, c: tp.Sequence[int] | None = None, p: int = 2, ell: int = 1) -> GradedPair:
    c = check_parameter(name, c, p)
    if ell < 1:
        raise InvalidObjectError(f"ell must be positive, got {ell}")

    if name == FamilyName.STANDARD_S6:
        return standard_s6(c, p) if ell == 1 else standard_functor(c, ell, p)
    elif name == FamilyName.HOMOGENEOUS_S6L:
        return standard_s6(c, p, ell)
    elif name == FamilyName.S9_P1:
        return s9_p1(c, p)
    elif name == FamilyName.S12_P2:
        return s12_p2(c, p)
    elif name == FamilyName.WIDTH4_Y:
        return width4_y(c[0], p)
    elif name == FamilyName.S7_610:
        return s7_610(c, p)
    elif name == FamilyName.S7_S3_714:
        return s7_s3_714(c, p)
    elif name == FamilyName.S8_617:
        return s8_617(c, p)
    elif name == FamilyName.S7_D:
        return s7_d(c, p)
    elif name == FamilyName.S7_E:
        return s7_e(c, p)
    elif name == FamilyName.WIDTH6_A:
        return width6_a(p)
    elif name == FamilyName.WIDTH6_B:
        return width6_b(p)
    elif name == FamilyName.WIDTH6_BPRIME:
        return width6_bprime(p)
    elif name == FamilyName.WIDTH6_C:
        return width6_c(p)
    raise InvalidObjectError(f"family {name} has no graded form")


def family(name: str, c: tp.Sequence[int] | None = None, p: int = 2, ell: int = 1, n: int = 7) -> SubspacePair:
    """
    A member of a named family as an object of S(n).

    Args:
        name (str): one of FamilyName.values()
        c (Sequence[int] | None): parameter; a point (c0 : c1) of P^1, (c0 : c1 : c2) of P^2
            for s12_p2, a scalar for width4_y. Defaults to all ones.
        p (int): prime
        ell (int): Jordan-extension length (standard_s6) or scale (homogeneous_s6l)
        n (int): height bound, used only by the central family
    """
    if name == FamilyName.CENTRAL:
        check_parameter(name, c, p)
        return central_object(n, p)
    X = push_down(graded_family(name, c, p, ell))
    logger.info(f"family {name} c={c} p={p}: {X}")
    return X
