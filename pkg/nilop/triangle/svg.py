import json
import logging
import math
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction

from nilop.errors import ParseError
from nilop.modules.pair import SubspacePair, partition_triple
from nilop.triangle.geometry import (
    PHI,
    PrPoint,
    central_line_ends,
    hexagon,
    triangle_corners,
)
from nilop.triangle.roots import parse_slope

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(width).2f" height="%(height).2f" viewBox="%(min_x).2f %(min_y).2f %(width).2f %(height).2f" version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="%(min_x).2f" y="%(min_y).2f" width="%(width).2f" height="%(height).2f" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

UNIT = 60.0
HEIGHT = math.sqrt(3) / 2


class SVG:
    def __init__(self):
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.commands = []

    def require(self, x: float, y: float) -> None:
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def _points(self, points: tp.Sequence[tuple[float, float]]) -> str:
        for x, y in points:
            self.require(x, y)
        return " ".join("%.2f,%.2f" % item for item in points)

    def line(self, points, color="#000000", width=1.0, dash: str | None = None) -> None:
        style = "fill:none;stroke:%s;stroke-width:%.2f" % (color, width)
        if dash is not None:
            style += ";stroke-dasharray:%s" % dash
        self.commands.append('<polyline points="%s" style="%s"/>' % (self._points(points), style))

    def polygon(self, points, color="#000000", width=1.0, fill="none") -> None:
        self.commands.append(
            '<polygon points="%s" style="fill:%s;stroke:%s;stroke-width:%.2f"/>'
            % (self._points(points), fill, color, width)
        )

    def circle(self, x: float, y: float, radius: float, fill="#000000") -> None:
        self.require(x - radius, y - radius)
        self.require(x + radius, y + radius)
        self.commands.append('<circle cx="%.2f" cy="%.2f" r="%.2f" style="fill:%s"/>' % (x, y, radius, fill))

    def text(self, x: float, y: float, text: str, color="#444444") -> None:
        self.require(x, y)
        self.commands.append(
            '<text x="%.2f" y="%.2f" fill="%s" font-size="10" font-family="monospace">%s</text>'
            % (x, y, color, text)
        )

    def render(self, pad: float = 10.0) -> str:
        if self.min_x is None:
            self.require(0.0, 0.0)
        min_x = self.min_x - pad
        min_y = self.min_y - pad
        width = self.max_x - self.min_x + 2 * pad
        height = self.max_y - self.min_y + 2 * pad
        body = "".join(item + "\n" for item in self.commands)
        return PREAMBLE % locals() + body + POSTAMBLE

    def save(self, filename: str) -> None:
        with open(filename, "w") as f:
            f.write(self.render())


@dataclass
class Overlay:
    """
    What to draw on top of the bare triangle T(n).

    Args:
        - **points**: pr-points, each optionally labelled
        - **lines**: slopes of central lines; "phi" draws the whole set Φ
        - **triangles**: distances d of standard (d < n/3) or costandard (d > n/3) triangles
        - **hexagons**: one vertex per hexagon, the others are its orbit
    """

    points: list[tuple[PrPoint, str | None]] = field(default_factory=list)
    lines: list[Fraction | str] = field(default_factory=list)
    triangles: list[Fraction] = field(default_factory=list)
    hexagons: list[PrPoint] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (self.points or self.lines or self.triangles or self.hexagons)

    @classmethod
    def from_dict(cls, doc: dict[str, tp.Any], n: int) -> "Overlay":
        unknown = set(doc) - {"points", "lines", "triangles", "hexagons"}
        if unknown:
            raise ParseError(f"Unknown overlay keys: {sorted(unknown)}", field="overlay")

        def point(entry: tp.Sequence[tp.Any]) -> PrPoint:
            if len(entry) < 2:
                raise ParseError(f"A point needs two coordinates, got {entry!r}", field="points")
            return PrPoint(Fraction(str(entry[0])), Fraction(str(entry[1])), n)

        points = [(point(entry), str(entry[2]) if len(entry) > 2 else None) for entry in doc.get("points", [])]
        lines: list[Fraction | str] = []
        for entry in doc.get("lines", []):
            if entry == "phi":
                lines.extend(PHI)
            else:
                lines.append(parse_slope(str(entry)))
        return cls(
            points=points,
            lines=lines,
            triangles=[Fraction(str(d)) for d in doc.get("triangles", [])],
            hexagons=[point(entry) for entry in doc.get("hexagons", [])],
        )

    @classmethod
    def load(cls, path: str, n: int) -> "Overlay":
        with open(path) as f:
            try:
                doc = json.load(f)
            except json.JSONDecodeError as e:
                raise ParseError(f"Invalid overlay JSON in {path}: {e}") from e
        return cls.from_dict(doc, n)


def to_canvas(point: PrPoint) -> tuple[float, float]:
    """Equilateral picture of T(n): the corner (0, n) on top, p growing to the right."""
    x = (float(point.p) + float(point.r) / 2) * UNIT
    y = (point.n - float(point.r)) * HEIGHT * UNIT
    return (x, y)


def _segment(a: PrPoint, b: PrPoint) -> list[tuple[float, float]]:
    return [to_canvas(a), to_canvas(b)]


def render_svg(n: int, overlay: Overlay | None = None) -> str:
    if overlay is None:
        overlay = Overlay()
    svg = SVG()

    for k in range(1, n):
        svg.line(_segment(PrPoint(k, 0, n), PrPoint(k, n - k, n)), color="#cccccc", width=0.5)
        svg.line(_segment(PrPoint(0, k, n), PrPoint(n - k, k, n)), color="#cccccc", width=0.5)
        svg.line(_segment(PrPoint(k, 0, n), PrPoint(0, k, n)), color="#cccccc", width=0.5)
    corners = [PrPoint(0, 0, n), PrPoint(n, 0, n), PrPoint(0, n, n)]
    svg.polygon([to_canvas(x) for x in corners], width=1.5)

    for vertex in overlay.hexagons:
        svg.polygon([to_canvas(x) for x in hexagon(vertex)], color="#999999", fill="#eeeeee")
    for phi in overlay.lines:
        a, b = central_line_ends(phi, n)
        svg.line(_segment(a, b), color="#3366cc", width=0.75, dash="4,3")
    for d in overlay.triangles:
        color = "#cc3333" if d < Fraction(n, 3) else "#33aa55"
        svg.polygon([to_canvas(x) for x in triangle_corners(d, n)], color=color)
    for point, label in overlay.points:
        x, y = to_canvas(point)
        svg.circle(x, y, 3.0)
        if label is not None:
            svg.text(x + 4.0, y - 4.0, label)

    logger.debug(f"Rendered T({n}) with {len(svg.commands)} elements")
    return svg.render()


def pairs_overlay(pairs: tp.Iterable[SubspacePair]) -> Overlay:
    """One labelled point per object, the label being its partition triple, sorted by (p, r, label)."""
    points = [(PrPoint.from_pair(X), str(partition_triple(X))) for X in pairs if not X.is_zero()]
    points.sort(key=lambda item: (item[0].p, item[0].r, item[1]))
    return Overlay(points=points)


def phi_overlay(n: int = 6) -> Overlay:
    """The twelve central lines, Δ_1, Δ_{5/4} and the hexagon through (1, 2)."""
    return Overlay.from_dict({"lines": ["phi"], "triangles": ["1", "5/4"], "hexagons": [["1", "2"]]}, n)
