"""
The 120 positive roots of E8 and their readings in T(6).

Each root is given on the E8 layout (vertices 6, 5, 4, 3, 3̄, 2, 1, 2′); the
pushout along the 3̄ → 3 identification turns it into a vector on the
eight-vertex layout (1, ..., 6, 2′, 3′) whose formal uwb-vector places the
root in the triangle. PRINTED_TABLE is the reference table; the columns are
index, E8 root, Ξ root, u, w, b, the unreduced slope numerator and
denominator, the reduced slope, line type, r_Δ and r_∇. A "-" inside a root
stands for -1.
"""

import logging
import typing as tp
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from nilop.errors import ParseError, ShapeError
from nilop.output import LineType, RadicalVector, RootRecord, Slope
from nilop.triangle.geometry import INFINITY, UNDEFINED, PrPoint, classify_direction

logger = logging.getLogger(__name__)

PRINTED_TABLE = """\
1 10000000 00000100 0 1 0 0 1 0 P 1 1
2 01000000 00001000 0 1 0 0 1 0 P 1 1
3 00100000 00010000 0 1 0 0 1 0 P 1 1
4 00010000 00100001 1 0 1 -1 -2 1/2 H_l 2 3
5 00001000 0000000- -1 1 0 -1 1 -1 P 1 1
6 00000100 01000000 0 1 0 0 1 0 P 1 1
7 00000010 10000000 1 0 0 1 0 inf P 1 1
8 00000001 00000011 2 -2 0 2 -2 -1 P 2 2
9 11000000 00001100 0 2 0 0 2 0 P 2 2
10 01100000 00011000 0 2 0 0 2 0 P 2 2
11 00110000 00110001 1 1 1 -1 -1 1 D_l 1 2
12 00011000 00100000 0 1 1 -2 -1 2 H_l 2 3
13 00001100 0100000- -1 2 0 -1 2 -1/2 D_l 1 2
14 00001001 00000010 1 -1 0 1 -1 -1 P 1 1
15 00000110 11000000 1 1 0 1 1 1 D_s 2 1
16 11100000 00011100 0 3 0 0 3 0 P 3 3
17 01110000 00111001 1 2 1 -1 0 inf P 1 1
18 00111000 00110000 0 2 1 -2 0 inf P 2 2
19 00011100 01100000 0 2 1 -2 0 inf P 2 2
20 00001110 1100000- 0 2 0 0 2 0 P 2 2
21 00011001 00100011 2 -1 1 0 -3 0 P 3 3
22 00001101 01000010 1 0 0 1 0 inf P 1 1
23 00011101 01100011 2 0 1 0 -2 0 P 2 2
24 11110000 00111101 1 3 1 -1 1 -1 P 1 1
25 01111000 00111000 0 3 1 -2 1 -2 D_s 2 1
26 00111100 01110000 0 3 1 -2 1 -2 D_s 2 1
27 00111001 00110011 2 0 1 0 -2 0 P 2 2
28 00011110 11100000 1 2 1 -1 0 inf P 1 1
29 00001111 11000010 2 0 0 2 0 inf P 2 2
30 00111101 01110011 2 1 1 0 -1 0 P 1 1
31 11111000 00111100 0 4 1 -2 2 -1 P 2 2
32 01111100 01111000 0 4 1 -2 2 -1 P 2 2
33 01111001 00111011 2 1 1 0 -1 0 P 1 1
34 00012101 01100010 1 1 1 -1 -1 1 D_l 1 2
35 00111110 11110000 1 3 1 -1 1 -1 P 1 1
36 00011111 11100011 3 0 1 1 -2 -1/2 D_s 2 1
37 00111111 11110011 3 1 1 1 -1 -1 P 1 1
38 11111100 01111100 0 5 1 -2 3 -2/3 H_l 2 3
39 11111001 00111111 2 2 1 0 0 ND c - -
40 01111110 11111000 1 4 1 -1 2 -1/2 D_l 1 2
41 01111101 01111011 2 2 1 0 0 ND c - -
42 00112101 01110010 1 2 1 -1 0 inf P 1 1
43 00012111 11100010 2 1 1 0 -1 0 P 1 1
44 01111111 11111011 3 2 1 1 0 inf P 1 1
45 11111110 11111100 1 5 1 -1 3 -1/3 H_l 2 3
46 00112111 11110010 2 2 1 0 0 ND c - -
47 00122101 01210011 2 2 2 -2 -2 1 D_l 2 4
48 11111101 01111111 2 3 1 0 1 0 P 1 1
49 01112101 01111010 1 3 1 -1 1 -1 P 1 1
50 00012211 12100010 2 2 1 0 0 ND c - -
51 11112101 01111110 1 4 1 -1 2 -1/2 D_l 1 2
52 01122101 01211011 2 3 2 -2 -1 2 H_l 2 3
53 11111111 11111111 3 3 1 1 1 1 D_s 2 1
54 01112111 11111010 2 3 1 0 1 0 P 1 1
55 00112211 12110010 2 3 1 0 1 0 P 1 1
56 00122111 11210011 3 2 2 -1 -2 1/2 H_l 2 3
57 11122101 01211111 2 4 2 -2 0 inf P 2 2
58 01222101 01221011 2 4 2 -2 0 inf P 2 2
59 00122211 12210011 3 3 2 -1 -1 1 D_l 1 2
60 01122111 11211011 3 3 2 -1 -1 1 D_l 1 2
61 11112111 11111110 2 4 1 0 2 0 P 2 2
62 01112211 12111010 2 4 1 0 2 0 P 2 2
63 11112211 12111110 2 5 1 0 3 0 P 3 3
64 11222101 01221111 2 5 2 -2 1 -2 D_s 2 1
65 11122111 11211111 3 4 2 -1 0 inf P 1 1
66 01122211 12211011 3 4 2 -1 0 inf P 1 1
67 01222111 11221011 3 4 2 -1 0 inf P 1 1
68 00123211 12210010 2 4 2 -2 0 inf P 2 2
69 12222101 01222111 2 6 2 -2 2 -1 P 2 2
70 01123211 12211010 2 5 2 -2 1 -2 D_s 2 1
71 11222111 11221111 3 5 2 -1 1 -1 P 1 1
72 01222211 12221011 3 5 2 -1 1 -1 P 1 1
73 11122211 12211111 3 5 2 -1 1 -1 P 1 1
74 00123212 12210021 4 2 2 0 -2 0 P 2 2
75 11222211 12221111 3 6 2 -1 2 -1/2 D_l 1 2
76 11123211 12211110 2 6 2 -2 2 -1 P 2 2
77 12222111 11222111 3 6 2 -1 2 -1/2 D_l 1 2
78 01223211 12221010 2 6 2 -2 2 -1 P 2 2
79 01123212 12211021 4 3 2 0 -1 0 P 1 1
80 01233211 12321011 3 6 3 -3 0 inf P 3 3
81 12222211 12222111 3 7 2 -1 3 -1/3 H_l 2 3
82 01223212 12221021 4 4 2 0 0 ND c - -
83 11223211 12221110 2 7 2 -2 3 -2/3 H_l 2 3
84 11123212 12211121 4 4 2 0 0 ND c - -
85 01233212 12321022 5 4 3 -1 -2 1/2 H_l 2 3
86 11233211 12321111 3 7 3 -3 1 -3 H_s 3 2
87 12223211 12222110 2 8 2 -2 4 -1/2 D_l 2 4
88 11223212 12221121 4 5 2 0 1 0 P 1 1
89 12233211 12322111 3 8 3 -3 2 -3/2 H_s 3 2
90 11233212 12321122 5 5 3 -1 -1 1 D_l 1 2
91 12223212 12222121 4 6 2 0 2 0 P 2 2
92 01234212 12321021 4 5 3 -2 -1 2 H_l 2 3
93 12333211 12332111 3 9 3 -3 3 -1 P 3 3
94 11234212 12321121 4 6 3 -2 0 inf P 2 2
95 12233212 12322122 5 6 3 -1 0 inf P 1 1
96 01234312 13321021 4 6 3 -2 0 inf P 2 2
97 12333212 12332122 5 7 3 -1 1 -1 P 1 1
98 12234212 12322121 4 7 3 -2 1 -2 D_s 2 1
99 11234312 13321121 4 7 3 -2 1 -2 D_s 2 1
100 01234322 23321021 5 6 3 -1 0 inf P 1 1
101 12234312 13322121 4 8 3 -2 2 -1 P 2 2
102 12334212 12332121 4 8 3 -2 2 -1 P 2 2
103 11234322 23321121 5 7 3 -1 1 -1 P 1 1
104 12344212 12432122 5 8 4 -3 0 inf P 3 3
105 12334312 13332121 4 9 3 -2 3 -2/3 H_l 2 3
106 12234322 23322121 5 8 3 -1 2 -1/2 D_l 1 2
107 12334322 23332121 5 9 3 -1 3 -1/3 H_l 2 3
108 12344312 13432122 5 9 4 -3 1 -3 H_s 3 2
109 12344322 23432122 6 9 4 -2 1 -2 D_s 2 1
110 12345312 13432121 4 10 4 -4 2 -2 D_s 4 2
111 12345313 13432132 6 8 4 -2 0 inf P 2 2
112 12345322 23432121 5 10 4 -3 2 -3/2 H_s 3 2
113 12345422 24432121 5 11 4 -3 3 -1 P 3 3
114 12345323 23432132 7 8 4 -1 0 inf P 1 1
115 12345423 24432132 7 9 4 -1 1 -1 P 1 1
116 12346423 24432131 6 10 4 -2 2 -1 P 2 2
117 12356423 24532132 7 10 5 -3 0 inf P 3 3
118 12456423 24542132 7 11 5 -3 1 -3 H_s 3 2
119 13456423 24543132 7 12 5 -3 2 -3/2 H_s 3 2
120 23456423 24543232 7 13 5 -3 3 -1 P 3 3
"""

# radical vectors on the ten-vertex layout: bottom 0..6, then 2′, 3′, 4′
THETA_SIZE = 10
RADICAL_VECTORS = {
    RadicalVector.H0: (1, 2, 3, 3, 2, 1, 0, 2, 1, 0),
    RadicalVector.H_INFTY: (0, 1, 2, 3, 3, 2, 1, 2, 2, 1),
}
RADICAL_VECTORS[RadicalVector.H1] = tuple(
    a + b for a, b in zip(RADICAL_VECTORS[RadicalVector.H0], RADICAL_VECTORS[RadicalVector.H_INFTY])
)


def parse_root(text: str) -> tuple[int, ...]:
    values = []
    for ch in text:
        if ch == "-":
            values.append(-1)
        elif ch.isdigit():
            values.append(int(ch))
        else:
            raise ParseError(f"Invalid root entry {ch!r} in {text!r}", field="root")
    if len(values) != 8:
        raise ParseError(f"A root has 8 entries, got {len(values)} in {text!r}", field="root")
    return tuple(values)


def format_root(root: tp.Sequence[int]) -> str:
    return "".join("-" if x == -1 else str(x) for x in root)


def parse_slope(text: str) -> Slope:
    if text in (INFINITY, UNDEFINED):
        return text
    return Fraction(text)


def parse_printed_table(text: str = PRINTED_TABLE) -> list[RootRecord]:
    records = []
    for line_number, line in enumerate(text.strip().splitlines(), start=1):
        fields = line.split()
        if len(fields) != 12:
            raise ParseError(f"Row {line_number} has {len(fields)} fields, expected 12", field="table")
        index, e8, xi, u, w, b, _, _, phi, line_type, r_delta, r_nabla = fields
        if line_type not in LineType.values():
            raise ParseError(
                f"Unknown line type: {line_type}. Supported types are: {LineType.values()}",
                field="line_type",
            )
        records.append(
            RootRecord(
                index=int(index),
                e8_root=parse_root(e8),
                xi_root=parse_root(xi),
                uwb=(int(u), int(w), int(b)),
                phi=parse_slope(phi),
                line_type=line_type,
                r_delta=None if r_delta == "-" else int(r_delta),
                r_nabla=None if r_nabla == "-" else int(r_nabla),
            )
        )
    return records


def xi_from_e8(e8: tp.Sequence[int]) -> tuple[int, ...]:
    """M_i = N_i for i = 1..6, M_2′ = N_2′ and M_3′ = N_2′ + N_3 - N_3̄."""
    n6, n5, n4, n3, n3bar, n2, n1, n2p = e8
    return (n1, n2, n3, n4, n5, n6, n2p, n2p + n3 - n3bar)


def formal_uwb(xi: tp.Sequence[int]) -> tuple[int, int, int]:
    r1, r2, r3, r4, r5, r6, r2p, r3p = xi
    u = r1 + r2p + r3p
    w = r1 + r2 + r3 + r4 + r5 + r6 - u
    return (u, w, r3)


def radii(uwb: tp.Sequence[int]) -> tuple[int, int]:
    """(r_Δ, r_∇) of a non-central uwb-vector with n = 6."""
    u, w, b = uwb
    v = u + w
    r_delta = max(2 * b - u, v - 4 * b, 2 * b - w)
    r_nabla = max(u - 2 * b, 4 * b - v, w - 2 * b)
    return r_delta, r_nabla


def root_record(index: int, e8: tp.Sequence[int]) -> RootRecord:
    xi = xi_from_e8(e8)
    uwb = formal_uwb(xi)
    u, w, b = uwb
    phi, line_type = classify_direction(u - 2 * b, w - 2 * b)
    if line_type == LineType.CENTRAL:
        r_delta, r_nabla = None, None
    else:
        r_delta, r_nabla = radii(uwb)
    return RootRecord(
        index=index,
        e8_root=tuple(e8),
        xi_root=xi,
        uwb=uwb,
        phi=phi,
        line_type=line_type,
        r_delta=r_delta,
        r_nabla=r_nabla,
    )


def e8_root_table(printed: tp.Sequence[RootRecord] | None = None) -> list[RootRecord]:
    """Recompute every column of the table from its E8 roots."""
    if printed is None:
        printed = parse_printed_table()
    return [root_record(record.index, record.e8_root) for record in printed]


@dataclass(frozen=True)
class RowDiff:
    index: int
    column: str
    printed: tp.Any
    computed: tp.Any

    def __str__(self) -> str:
        return f"root {self.index}: {self.column} printed {self.printed}, computed {self.computed}"


DIFF_COLUMNS = ("xi_root", "uwb", "phi", "line_type", "r_delta", "r_nabla")


def diff_table(
    computed: tp.Sequence[RootRecord] | None = None,
    printed: tp.Sequence[RootRecord] | None = None,
) -> list[RowDiff]:
    if printed is None:
        printed = parse_printed_table()
    if computed is None:
        computed = e8_root_table(printed)
    if len(computed) != len(printed):
        raise ShapeError(f"Cannot diff {len(computed)} computed rows against {len(printed)} printed rows")

    diffs = []
    for ours, theirs in zip(computed, printed):
        for column in DIFF_COLUMNS:
            a, b = getattr(theirs, column), getattr(ours, column)
            if a != b:
                diffs.append(RowDiff(theirs.index, column, a, b))
    if diffs:
        logger.warning(f"{len(diffs)} mismatches between the printed and the recomputed root table")
    else:
        logger.info(f"All {len(printed)} rows of the root table recomputed without differences")
    return diffs


def root_by_index(index: int) -> RootRecord:
    records = parse_printed_table()
    if not 1 <= index <= len(records):
        raise ValueError(f"Root index must lie in 1..{len(records)}, got {index}")
    return records[index - 1]


def xi_to_theta(xi: tp.Sequence[int]) -> np.ndarray:
    """Place an eight-vertex vector on the ten-vertex layout (zeros at 0 and 4′)."""
    r1, r2, r3, r4, r5, r6, r2p, r3p = xi
    return np.array([0, r1, r2, r3, r4, r5, r6, r2p, r3p, 0], dtype=np.int64)


def theta_uwb(x: tp.Sequence[int]) -> tuple[int, int, int]:
    if len(x) != THETA_SIZE:
        raise ShapeError(f"Expected {THETA_SIZE} entries on the ten-vertex layout, got {len(x)}")
    bottom, top = x[:7], x[7:]
    u = int(x[0] + x[1] + sum(top))
    w = int(sum(bottom)) - u
    return (u, w, int(x[3]))


def radical_vector(which: str) -> np.ndarray:
    if which not in RadicalVector.values():
        raise ValueError(f"Unknown radical vector: {which}. Supported vectors are: {RadicalVector.values()}")
    return np.array(RADICAL_VECTORS[which], dtype=np.int64)


@dataclass(frozen=True)
class ShiftedRoot:
    vector: tuple[int, ...]
    uwb: tuple[int, int, int]

    @property
    def point(self) -> PrPoint:
        return PrPoint.from_uwb(self.uwb, 6)


def radical_shift(xi: tp.Sequence[int], which: str, sign: int = 1) -> ShiftedRoot:
    """
    h + r (sign = 1) or h - r (sign = -1) for a radical vector h and an
    eight-vertex root r.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be 1 or -1, got {sign}")
    if len(xi) != 8:
        raise ShapeError(f"Expected 8 entries on the eight-vertex layout, got {len(xi)}")
    vector = radical_vector(which) + sign * xi_to_theta(xi)
    return ShiftedRoot(tuple(int(x) for x in vector), theta_uwb(vector))
