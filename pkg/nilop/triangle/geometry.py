import typing as tp
from dataclasses import dataclass
from fractions import Fraction

from nilop.errors import InvalidObjectError
from nilop.output import LineType, PrGeometry, Slope

if tp.TYPE_CHECKING:
    from nilop.modules.pair import SubspacePair

INFINITY = "inf"
UNDEFINED = "ND"

# slopes of the twelve central lines through z(6) that carry objects
P_SLOPES = (Fraction(0), INFINITY, Fraction(-1))
D_SLOPES = (Fraction(1), Fraction(-2), Fraction(-1, 2))
H_SLOPES = (
    Fraction(1, 2),
    Fraction(2),
    Fraction(-3),
    Fraction(-3, 2),
    Fraction(-2, 3),
    Fraction(-1, 3),
)
PHI = P_SLOPES + D_SLOPES + H_SLOPES


@dataclass(frozen=True)
class PrPoint:
    """A point (p, r) of the triangle T(n) = {p, r ≥ 0, p + r ≤ n}."""

    p: Fraction
    r: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "r", Fraction(self.r))
        if self.n < 1:
            raise InvalidObjectError(f"n must be positive, got {self.n}")
        if self.p < 0 or self.r < 0 or self.p + self.r > self.n:
            raise InvalidObjectError(f"({self.p}, {self.r}) does not lie in T({self.n})")

    @classmethod
    def from_uwb(cls, uwb: tp.Sequence[int], n: int) -> "PrPoint":
        u, w, b = uwb
        if b <= 0:
            raise InvalidObjectError(f"width must be positive to place an object in T({n}), got {b}")
        return cls(Fraction(u, b), Fraction(w, b), n)

    @classmethod
    def from_pair(cls, X: "SubspacePair") -> "PrPoint":
        return cls.from_uwb((X.u_dim, X.w_dim, X.width), X.n)

    @classmethod
    def center(cls, n: int) -> "PrPoint":
        return cls(Fraction(n, 3), Fraction(n, 3), n)

    @property
    def q(self) -> Fraction:
        return self.p + self.r

    def rho(self) -> "PrPoint":
        return PrPoint(self.r, self.n - self.p - self.r, self.n)

    def reflect(self) -> "PrPoint":
        return PrPoint(self.r, self.p, self.n)

    @property
    def d(self) -> Fraction:
        return min(self.p, self.r, self.n - self.p - self.r)

    def direction(self) -> tuple[Fraction, Fraction]:
        """Offset from z(n), scaled by 3."""
        return (3 * self.p - self.n, 3 * self.r - self.n)

    def is_central(self) -> bool:
        return self.direction() == (0, 0)

    @property
    def phi(self) -> Slope:
        return slope(*self.direction())

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.p, self.r)

    def __str__(self) -> str:
        return f"({self.p}, {self.r})"


def slope(du: Fraction | int, dw: Fraction | int) -> Slope:
    if du == 0 and dw == 0:
        return UNDEFINED
    if dw == 0:
        return INFINITY
    return Fraction(du) / Fraction(dw)


def half_line(du: Fraction | int, dw: Fraction | int) -> str | None:
    """
    Compare the half-line from the centre in direction (du, dw) with the
    opposite one. Returns "s" when (du, dw) leaves the triangle first, "l"
    when the opposite half-line is shorter and None when both are equal.
    """
    exit_forward = max(-du, -dw, du + dw)
    exit_backward = max(du, dw, -du - dw)
    if exit_forward == exit_backward:
        return None
    return "s" if exit_forward > exit_backward else "l"


def classify_direction(du: Fraction | int, dw: Fraction | int) -> tuple[Slope, str | None]:
    """Slope and line type of the central line through z + (du, dw)."""
    phi = slope(du, dw)
    if phi == UNDEFINED:
        return phi, LineType.CENTRAL
    if phi in P_SLOPES:
        return phi, LineType.P
    if phi in D_SLOPES:
        family = "D"
    elif phi in H_SLOPES:
        family = "H"
    else:
        return phi, None
    return phi, f"{family}_{half_line(du, dw)}"


def pr_geometry(point: PrPoint) -> PrGeometry:
    du, dw = point.direction()
    phi, line_type = classify_direction(du, dw)
    return PrGeometry(
        rho=point.rho().as_tuple(),
        reflect=point.reflect().as_tuple(),
        phi=phi,
        d=point.d,
        line_type=line_type,
        short_or_long=half_line(du, dw),
    )


def on_phi_lines(point: PrPoint) -> bool:
    return not point.is_central() and point.phi in PHI


def orbit(point: PrPoint) -> list[PrPoint]:
    """The Σ3-orbit generated by rho and reflect, without repetitions."""
    seen = []
    for x in (point, point.reflect()):
        for _ in range(3):
            if x not in seen:
                seen.append(x)
            x = x.rho()
    return seen


def triangle_corners(d: Fraction | int, n: int) -> list[PrPoint]:
    """
    Corners of the triangle cut out by the lines p = d, r = d, p + r = n - d.
    For d < n/3 this is the standard triangle Δ_d, for d > n/3 the
    costandard triangle ∇_d.
    """
    d = Fraction(d)
    if d < 0 or d == Fraction(n, 3) or n - 2 * d < 0:
        raise InvalidObjectError(f"no standard or costandard triangle with distance {d} in T({n})")
    return [PrPoint(d, d, n), PrPoint(n - 2 * d, d, n), PrPoint(d, n - 2 * d, n)]


def hexagon(point: PrPoint) -> list[PrPoint]:
    """Vertices of the convex hull of the orbit of `point`, in counterclockwise order."""
    vertices = orbit(point)
    if len(vertices) < 6:
        raise InvalidObjectError(f"the orbit of {point} has {len(vertices)} points, not a hexagon")

    def angle_key(x: PrPoint) -> tuple[int, Fraction]:
        du, dw = x.direction()
        upper = dw > 0 or (dw == 0 and du > 0)
        cosine = du / (abs(du) + abs(dw))
        return (0, -cosine) if upper else (1, cosine)

    return sorted(vertices, key=angle_key)


def central_line_ends(phi: Slope, n: int) -> tuple[PrPoint, PrPoint]:
    """The two boundary points of the central line L_phi of T(n)."""
    if phi == UNDEFINED:
        raise InvalidObjectError("the centre lies on every central line")
    if phi == INFINITY:
        du, dw = Fraction(1), Fraction(0)
    else:
        phi = Fraction(phi)
        du, dw = Fraction(phi.numerator), Fraction(phi.denominator)
    centre = Fraction(n, 3)
    ends = []
    for sign in (1, -1):
        a, c = sign * du, sign * dw
        t = centre / max(-a, -c, a + c)
        ends.append(PrPoint(centre + t * a, centre + t * c, n))
    return ends[0], ends[1]
