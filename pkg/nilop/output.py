import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction

if tp.TYPE_CHECKING:
    from nilop.modules.pair import PartitionTriple, SubspacePair


class CountKind:
    PICKETS = "pickets"
    PICKETS_HEIGHT_N = "pickets_height_n"
    BIPICKETS = "bipickets"
    BIPICKETS_HEIGHT_N = "bipickets_height_n"
    CYCLIC_BY_HEIGHT = "cyclic_by_height"
    CYCLIC_TOTAL = "cyclic_total"
    CYCLIC_HW = "cyclic_hw"
    CYCLIC_HW_RADICAL = "cyclic_hw_radical"
    CYCLIC_HW_NONRADICAL = "cyclic_hw_nonradical"
    CYCLIC_U_HEIGHT = "cyclic_u_height"
    CYCLIC_U_HEIGHT_TOTAL = "cyclic_u_height_total"
    CYCLIC_UB = "cyclic_ub"
    CYCLIC_BY_DIM = "cyclic_by_dim"
    FIBONACCI_P1 = "fibonacci_p1"
    GRID_PATHS = "grid_paths"
    GRID_PATHS_VIA = "grid_paths_via"

    @staticmethod
    def values():
        return [
            CountKind.PICKETS,
            CountKind.PICKETS_HEIGHT_N,
            CountKind.BIPICKETS,
            CountKind.BIPICKETS_HEIGHT_N,
            CountKind.CYCLIC_BY_HEIGHT,
            CountKind.CYCLIC_TOTAL,
            CountKind.CYCLIC_HW,
            CountKind.CYCLIC_HW_RADICAL,
            CountKind.CYCLIC_HW_NONRADICAL,
            CountKind.CYCLIC_U_HEIGHT,
            CountKind.CYCLIC_U_HEIGHT_TOTAL,
            CountKind.CYCLIC_UB,
            CountKind.CYCLIC_BY_DIM,
            CountKind.FIBONACCI_P1,
            CountKind.GRID_PATHS,
            CountKind.GRID_PATHS_VIA,
        ]


class FamilyName:
    STANDARD_S6 = "standard_s6"
    HOMOGENEOUS_S6L = "homogeneous_s6l"
    S9_P1 = "s9_p1"
    S12_P2 = "s12_p2"
    WIDTH4_Y = "width4_y"
    S7_610 = "s7_610"
    S7_S3_714 = "s7_s3_714"
    S8_617 = "s8_617"
    S7_D = "s7_d"
    S7_E = "s7_e"
    CENTRAL = "central"
    WIDTH6_A = "width6_a"
    WIDTH6_B = "width6_b"
    WIDTH6_BPRIME = "width6_bprime"
    WIDTH6_C = "width6_c"

    @staticmethod
    def values():
        return [
            FamilyName.STANDARD_S6,
            FamilyName.HOMOGENEOUS_S6L,
            FamilyName.S9_P1,
            FamilyName.S12_P2,
            FamilyName.WIDTH4_Y,
            FamilyName.S7_610,
            FamilyName.S7_S3_714,
            FamilyName.S8_617,
            FamilyName.S7_D,
            FamilyName.S7_E,
            FamilyName.CENTRAL,
            FamilyName.WIDTH6_A,
            FamilyName.WIDTH6_B,
            FamilyName.WIDTH6_BPRIME,
            FamilyName.WIDTH6_C,
        ]


class GradedOp:
    G = "G_z"
    H = "H_z"
    SOLID_DOWN = "solid_down"
    SOLID_UP = "solid_up"

    @staticmethod
    def values():
        return [GradedOp.G, GradedOp.H, GradedOp.SOLID_DOWN, GradedOp.SOLID_UP]


class FiltrationKind:
    TELESCOPE = "telescope"
    NICE = "nice"

    @staticmethod
    def values():
        return [FiltrationKind.TELESCOPE, FiltrationKind.NICE]


class LineType:
    P = "P"
    D_SHORT = "D_s"
    D_LONG = "D_l"
    H_SHORT = "H_s"
    H_LONG = "H_l"
    CENTRAL = "c"

    @staticmethod
    def values():
        return [
            LineType.P,
            LineType.D_SHORT,
            LineType.D_LONG,
            LineType.H_SHORT,
            LineType.H_LONG,
            LineType.CENTRAL,
        ]


class RadicalVector:
    H0 = "h0"
    H_INFTY = "h_infty"
    H1 = "h1"

    @staticmethod
    def values():
        return [RadicalVector.H0, RadicalVector.H_INFTY, RadicalVector.H1]


# slope of a central line: a rational, "inf" for the vertical line, "ND" at the centre
Slope = Fraction | str


@dataclass(frozen=True)
class InvariantReport:
    """
    Numeric invariants of a nonzero object X = (U, V).

    Args:
        - **uwb**: (dim U, dim V/U, number of Jordan blocks of V)
        - **pr**: level and colevel u/b, w/b
        - **q**: mean v/b
        - **d**: boundary distance min(p, r, n - p - r)
        - **m**: min(|E0|, |E1|, |E2|) of the E-triple, so that d = m/b
        - **omega**: |ΩV| = n·b - v
        - **b**: width
        - **c_n**: dim T^(n-1) V
    """

    uwb: tuple[int, int, int]
    pr: tuple[Fraction, Fraction]
    q: Fraction
    d: Fraction
    m: int
    omega: int
    b: int
    c_n: int

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "uwb": list(self.uwb),
            "pr": [str(x) for x in self.pr],
            "q": str(self.q),
            "d": str(self.d),
            "m": self.m,
            "omega": self.omega,
            "b": self.b,
            "c_n": self.c_n,
        }


@dataclass(frozen=True)
class IndecomposabilityCertificate:
    """
    Outcome of the End-algebra scan.

    Args:
        - **indecomposable**: End(X) is local
        - **end_dim**: dimension of End(X)
        - **radical_dim**: dimension of the nilpotent ideal grown during the scan
        - **scanned**: number of coset representatives checked
        - **split**: for a decomposable X, the two summands of a Fitting split
    """

    indecomposable: bool
    end_dim: int
    radical_dim: int
    scanned: int
    split: tuple["SubspacePair", "SubspacePair"] | None = None


@dataclass(frozen=True)
class FiltrationStep:
    """
    One step X_{t-1} ⊂ X_t of a filtration.

    Args:
        - **index**: position t in the chain (1-based)
        - **factor**: partition triple of X_t / X_{t-1}
        - **g_split**: the global-space sequence splits
    """

    index: int
    factor: "PartitionTriple"
    g_split: bool = True


@dataclass(frozen=True)
class NiceDecomposition:
    top: "SubspacePair | None"
    factors: list["PartitionTriple"] = field(default_factory=list)
    height_one: "SubspacePair | None" = None


@dataclass(frozen=True)
class PrGeometry:
    rho: tuple[Fraction, Fraction]
    reflect: tuple[Fraction, Fraction]
    phi: Slope
    d: Fraction
    line_type: str | None
    short_or_long: str | None

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "rho": [str(x) for x in self.rho],
            "reflect": [str(x) for x in self.reflect],
            "phi": str(self.phi),
            "d": str(self.d),
            "line_type": self.line_type,
            "short_or_long": self.short_or_long,
        }


@dataclass(frozen=True)
class RootRecord:
    """
    One row of the table of positive roots.

    Args:
        - **index**: 1..120
        - **e8_root**: coefficients on the E8 layout
        - **xi_root**: coefficients on the eight-vertex layout (1..6, 2', 3')
        - **uwb**: formal uwb-vector read off xi_root
        - **phi**: slope (u - 2b)/(w - 2b), "inf" or "ND"
        - **line_type**: one of LineType.values()
        - **r_delta**, **r_nabla**: max{2b-u, v-4b, 2b-w}, max{u-2b, 4b-v, w-2b}
    """

    index: int
    e8_root: tuple[int, ...]
    xi_root: tuple[int, ...]
    uwb: tuple[int, int, int]
    phi: Slope
    line_type: str
    r_delta: int | None
    r_nabla: int | None


@dataclass(frozen=True)
class KroneckerReport:
    """
    Graded Hom and Ext data of an ordered pair (X, Y).

    Args:
        - **end_x**, **end_y**: dimensions of the graded endomorphism rings
        - **hom_xy**, **hom_yx**: graded Hom dimensions in both directions
        - **euler**: <dim X, dim Y>
        - **ext1**: dim Ext^1(X, Y) = hom_xy - euler
    """

    end_x: int
    end_y: int
    hom_xy: int
    hom_yx: int
    euler: int
    ext1: int

    @property
    def orthogonal(self) -> bool:
        return self.end_x == self.end_y == 1 and self.hom_xy == self.hom_yx == 0

    @property
    def is_kronecker_pair(self) -> bool:
        return self.orthogonal and self.ext1 == 2

    def to_dict(self) -> dict[str, int | bool]:
        return {
            "end_x": self.end_x,
            "end_y": self.end_y,
            "hom_xy": self.hom_xy,
            "hom_yx": self.hom_yx,
            "euler": self.euler,
            "ext1": self.ext1,
            "kronecker_pair": self.is_kronecker_pair,
        }
