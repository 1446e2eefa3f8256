"""
Tests for the triangle T(n): pr-geometry, the E8 root table and the SVG renderer.
"""

import dataclasses
import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from nilop.errors import InvalidObjectError, ParseError
from nilop.modules.homs import enumerate_indecomposables
from nilop.modules.pair import picket
from nilop.output import LineType, RadicalVector
from nilop.triangle.geometry import (
    INFINITY,
    PHI,
    UNDEFINED,
    PrPoint,
    central_line_ends,
    classify_direction,
    half_line,
    hexagon,
    on_phi_lines,
    orbit,
    pr_geometry,
    slope,
    triangle_corners,
)
from nilop.triangle.roots import (
    diff_table,
    e8_root_table,
    format_root,
    parse_printed_table,
    parse_root,
    radical_shift,
    radical_vector,
    radii,
    root_by_index,
    xi_from_e8,
)
from nilop.triangle.svg import Overlay, pairs_overlay, phi_overlay, render_svg, to_canvas

GOLDEN_DIR = Path(__file__).parent / "golden"


def test_point_validation():
    """Points outside T(n) are rejected."""
    with pytest.raises(InvalidObjectError):
        PrPoint(4, 3, 6)
    with pytest.raises(InvalidObjectError):
        PrPoint.from_uwb((1, 1, 0), 6)
    assert PrPoint.from_uwb((2, 2, 2), 3) == PrPoint.center(3)


def test_rotation_and_reflection():
    """rho has order three, reflect is an involution, both keep d."""
    x = PrPoint(Fraction(1, 2), 2, 6)
    assert x.rho().rho().rho() == x
    assert x.reflect().reflect() == x
    assert x.rho().d == x.d == x.reflect().d == Fraction(1, 2)
    assert x.rho() == PrPoint(2, Fraction(7, 2), 6)


def test_slopes_and_line_types():
    """Direction (du, dw) has slope du/dw; the sign of the longer half decides s or l."""
    assert slope(0, 0) == UNDEFINED
    assert slope(1, 0) == INFINITY
    assert slope(-1, 2) == Fraction(-1, 2)
    assert half_line(1, 1) == "s"
    assert half_line(-1, -1) == "l"
    assert half_line(1, 0) is None
    assert classify_direction(1, 1) == (Fraction(1), LineType.D_SHORT)
    assert classify_direction(-1, -2) == (Fraction(1, 2), LineType.H_LONG)
    assert classify_direction(0, 1) == (Fraction(0), LineType.P)
    assert classify_direction(0, 0) == (UNDEFINED, LineType.CENTRAL)
    assert classify_direction(4, 3) == (Fraction(4, 3), None)
    assert len(PHI) == 12


def test_pr_geometry_report():
    """The full report of (1, 2) in T(6)."""
    report = pr_geometry(PrPoint(1, 2, 6))
    assert report.rho == (Fraction(2), Fraction(3))
    assert report.reflect == (Fraction(2), Fraction(1))
    assert report.phi == INFINITY
    assert report.d == Fraction(1)
    assert report.line_type == LineType.P
    assert report.to_dict()["phi"] == "inf"


def test_phi_lines():
    """(1, 2) lies on the vertical line, (1, 5/4) on none of the twelve."""
    assert on_phi_lines(PrPoint(1, 2, 6))
    assert not on_phi_lines(PrPoint(1, Fraction(5, 4), 6))
    assert not on_phi_lines(PrPoint.center(6))


def test_orbit_and_hexagon():
    """The orbit of (1, 2) is a hexagon, listed counterclockwise from the right."""
    x = PrPoint(1, 2, 6)
    assert len(orbit(x)) == 6
    assert len(orbit(PrPoint(1, 1, 6))) == 3
    assert [v.as_tuple() for v in hexagon(x)] == [(3, 2), (2, 3), (1, 3), (1, 2), (2, 1), (3, 1)]
    with pytest.raises(InvalidObjectError):
        hexagon(PrPoint(1, 1, 6))


def test_triangles():
    """Δ_1 and ∇_(5/2) in T(6); d = n/3 gives no triangle."""
    assert [v.as_tuple() for v in triangle_corners(1, 6)] == [(1, 1), (4, 1), (1, 4)]
    nabla = triangle_corners(Fraction(5, 2), 6)
    assert [v.as_tuple() for v in nabla] == [(Fraction(5, 2),) * 2, (1, Fraction(5, 2)), (Fraction(5, 2), 1)]
    with pytest.raises(InvalidObjectError):
        triangle_corners(2, 6)


def test_central_line_ends():
    """L_0 is the line p = 2 and L_inf the line r = 2 in T(6)."""
    a, b = central_line_ends(Fraction(0), 6)
    assert {a.as_tuple(), b.as_tuple()} == {(2, 4), (2, 0)}
    a, b = central_line_ends(INFINITY, 6)
    assert {a.as_tuple(), b.as_tuple()} == {(4, 2), (0, 2)}
    with pytest.raises(InvalidObjectError):
        central_line_ends(UNDEFINED, 6)


def test_printed_root_table_recomputes():
    """All 120 rows are reproduced from their E8 coordinates."""
    printed = parse_printed_table()
    assert len(printed) == 120
    assert [r.index for r in printed] == list(range(1, 121))
    assert e8_root_table(printed) == printed
    assert diff_table() == []


def test_root_spot_checks():
    """Roots 8, 39 and 47."""
    assert xi_from_e8(parse_root("00000001")) == (0, 0, 0, 0, 0, 0, 1, 1)
    central = root_by_index(39)
    assert central.line_type == LineType.CENTRAL
    assert (central.r_delta, central.r_nabla) == (None, None)
    root = root_by_index(47)
    assert root.uwb == (2, 2, 2)
    assert root.line_type == LineType.D_LONG
    assert radii(root.uwb) == (2, 4)
    with pytest.raises(ValueError):
        root_by_index(121)


def test_diff_reports_changed_cells():
    """A tampered printed row shows up as one difference."""
    printed = parse_printed_table()
    printed[46] = dataclasses.replace(printed[46], uwb=(9, 9, 9))
    diffs = diff_table(printed=printed)
    assert [(d.index, d.column) for d in diffs] == [(47, "uwb")]
    assert "root 47" in str(diffs[0])


def test_root_parsing():
    """"-" stands for -1; bad rows and entries raise ParseError."""
    assert parse_root("0000000-") == (0, 0, 0, 0, 0, 0, 0, -1)
    assert format_root((0, 0, 0, 0, 0, 0, 0, -1)) == "0000000-"
    with pytest.raises(ParseError):
        parse_root("0000000x")
    with pytest.raises(ParseError):
        parse_root("000")
    with pytest.raises(ParseError):
        parse_printed_table("1 10000000 00000100 0 1 0")


def test_radical_shifts():
    """Shifts of roots by the radical vectors land on the expected uwb-vectors."""
    shifted = radical_shift(root_by_index(47).xi_root, RadicalVector.H0)
    assert shifted.uwb == (8, 8, 5)
    assert shifted.point.d == Fraction(8, 5)
    assert radical_shift(root_by_index(110).xi_root, RadicalVector.H1, -1).uwb == (8, 2, 2)
    assert radical_shift(root_by_index(118).xi_root, RadicalVector.H1, -1).uwb == (5, 1, 1)
    assert radical_shift(root_by_index(119).xi_root, RadicalVector.H1, -1).uwb == (5, 0, 1)
    assert list(radical_vector(RadicalVector.H1)) == [1, 3, 5, 6, 5, 3, 1, 4, 3, 1]
    with pytest.raises(ValueError, match="Unknown radical vector"):
        radical_vector("h2")
    with pytest.raises(ValueError):
        radical_shift(root_by_index(1).xi_root, RadicalVector.H0, 2)


def test_canvas_coordinates():
    """The corner (0, n) is on top, (0, 0) bottom left."""
    assert to_canvas(PrPoint(0, 0, 6)) == pytest.approx((0.0, 180 * math.sqrt(3)))
    assert to_canvas(PrPoint(0, 6, 6)) == (180.0, 0.0)


def test_render_is_deterministic():
    """Rendering twice gives identical documents."""
    first, second = render_svg(6, phi_overlay(6)), render_svg(6, phi_overlay(6))
    assert first == second
    assert first.startswith("<?xml")
    assert first.endswith("</svg>\n")
    assert first.count("stroke-dasharray") == len(PHI)


def test_overlay_points_and_labels():
    """Each point is a dot; labels are drawn next to it."""
    overlay = pairs_overlay([picket(1, 2, 3, 2), picket(0, 3, 3, 2)])
    svg = render_svg(3, overlay)
    assert svg.count("<circle") == 2
    assert "([1],[2],[1])" in svg


def test_overlay_points_ignore_input_order():
    """Points are sorted by position then label, so enumeration order never shows in a figure."""
    pairs = [picket(2, 3, 3, 2), picket(0, 1, 3, 2), picket(1, 2, 3, 2)]
    overlay = pairs_overlay(pairs)
    assert [label for _, label in overlay.points] == ["([],[1],[1])", "([1],[2],[1])", "([2],[3],[1])"]
    assert render_svg(3, overlay) == render_svg(3, pairs_overlay(reversed(pairs)))


def test_overlay_from_json(tmp_path):
    """Overlays load from JSON; unknown keys and short points are rejected."""
    path = tmp_path / "overlay.json"
    path.write_text(json.dumps({"points": [[1, 1, "E"]], "lines": ["0", "inf"], "triangles": ["1/2"]}))
    overlay = Overlay.load(str(path), 3)
    assert overlay.points == [(PrPoint(1, 1, 3), "E")]
    assert overlay.lines == [Fraction(0), INFINITY]
    assert overlay.triangles == [Fraction(1, 2)]
    assert not overlay.is_empty()
    with pytest.raises(ParseError):
        Overlay.from_dict({"circles": []}, 3)
    with pytest.raises(ParseError):
        Overlay.from_dict({"points": [[1]]}, 3)
    path.write_text("{")
    with pytest.raises(ParseError):
        Overlay.load(str(path), 3)


@pytest.mark.parametrize("name", ["t3_classification.svg", "t6_lines.svg"])
def test_golden_figures(name):
    """Committed figures match the renderer; regenerate with tools/regenerate_goldens.py."""
    path = GOLDEN_DIR / name
    assert path.exists(), f"{name} is missing from {GOLDEN_DIR}"
    if name == "t6_lines.svg":
        rendered = render_svg(6, phi_overlay(6))
    else:
        rendered = render_svg(3, pairs_overlay(enumerate_indecomposables(3, 4, 2)))
    assert rendered == path.read_text()
