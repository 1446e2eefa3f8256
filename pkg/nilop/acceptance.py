"""
Acceptance checks run by `nilop accept` and the Hydra `accept` task.

Every check returns a CheckResult; a failing check never stops the others.
The heavy scans are bounded to S(3) and the |V| <= 5 part of S(4).
"""

import itertools
import logging
import typing as tp
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from nilop.config import NilopConfig
from nilop.errors import BudgetExceededError, NilopError
from nilop.modules.artrans import central_object, is_reduced, tau, tau_partitions, tau_power
from nilop.modules.comb import (
    SubsetCode,
    count,
    enumerate_count,
    make_picket,
    object_count,
    picket_codes,
    subset_from_heights,
    subset_lambda_bijection,
    t_height_map,
)
from nilop.modules.families import PARAM_ARITY, family
from nilop.modules.filtrations import telescope
from nilop.modules.graded import kronecker_pair_check, kronecker_pair_s6, projective_points
from nilop.modules.homs import enumerate_indecomposables, is_indecomposable, is_isomorphic
from nilop.modules.pair import PartitionTriple, SubspacePair, e_triple, partition_triple, random_pair, uwb
from nilop.modules.partition import Partition
from nilop.observability import progress
from nilop.output import CountKind, FamilyName
from nilop.triangle.geometry import PrPoint, on_phi_lines
from nilop.triangle.roots import diff_table, root_by_index
from nilop.triangle.svg import Overlay, render_svg

logger = logging.getLogger(__name__)

# uwb of the base member of each P^1-family over a small field
FAMILY_UWB = {
    FamilyName.STANDARD_S6: (6, 6, 3),
    FamilyName.S9_P1: (6, 24, 6),
    FamilyName.S7_610: (6, 10, 4),
    FamilyName.S7_S3_714: (7, 14, 5),
    FamilyName.S8_617: (6, 17, 5),
    FamilyName.WIDTH4_Y: (4, 10, 4),
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<22} {self.detail}"


@lru_cache(maxsize=None)
def _corpus(n: int, vmax: int, p: int, budget: int) -> tuple[SubspacePair, ...]:
    return tuple(enumerate_indecomposables(n, vmax, p, NilopConfig(budget=budget, p=p)))


def small_corpus(config: NilopConfig) -> list[SubspacePair]:
    return list(_corpus(3, 4, 2, config.budget)) + list(_corpus(4, 5, 2, config.budget))


def check_s3_classification(config: NilopConfig) -> CheckResult:
    classes = _corpus(3, 4, 2, config.budget)
    pickets = [X for X in classes if X.width == 1]
    bipickets = [partition_triple(X) for X in classes if X.width == 2]
    ok = len(classes) == 10 and len(pickets) == 9 and bipickets == [PartitionTriple.of([2], [3, 1], [2])]
    return CheckResult("s3_classification", ok, f"{len(classes)} classes, {len(pickets)} pickets")


def check_level_bounds(config: NilopConfig) -> CheckResult:
    """u < b only for 0-pickets, w < b only for full pickets, u = b = w exactly twice."""
    exceptions, balanced = 0, []
    for X in small_corpus(config):
        u, w, b = uwb(X)
        if u < b and not (u == 0 and b == 1):
            exceptions += 1
        if w < b and not (w == 0 and b == 1):
            exceptions += 1
        if u == w == b:
            balanced.append(partition_triple(X))
    expected = {PartitionTriple.of([1], [2], [1]), PartitionTriple.of([2], [3, 1], [2])}
    ok = exceptions == 0 and set(balanced) == expected and len(balanced) == 2
    return CheckResult("level_bounds", ok, f"{exceptions} exceptions, {len(balanced)} with u = b = w")


def check_tau_rotation(config: NilopConfig) -> CheckResult:
    failures = 0
    reduced = [X for X in small_corpus(config) if is_reduced(X)]
    for X in progress(reduced, desc="tau^2 rotation", config=config):
        omega, u_part, w_part = e_triple(X)
        Y = tau_power(X, 2)
        if e_triple(Y) != (u_part, w_part, omega) or Y.width != X.width:
            failures += 1
    return CheckResult("tau_rotation", failures == 0, f"{len(reduced)} reduced classes, {failures} failures")


def check_tau6_identity(config: NilopConfig) -> CheckResult:
    failures = 0
    reduced = [X for X in _corpus(3, 4, 2, config.budget) if is_reduced(X)]
    for X in progress(reduced, desc="tau^6", config=config):
        if not is_isomorphic(tau_power(X, 6), X, config):
            failures += 1
    return CheckResult("tau6_identity", failures == 0, f"{len(reduced)} reduced classes, {failures} failures")


def check_tau_partitions(config: NilopConfig) -> CheckResult:
    first = tau_partitions(PartitionTriple.of([2], [4, 2], [3, 1]), 5)
    second = tau_partitions(PartitionTriple.of([2], [5, 1], [4]), 5)
    ok = first == PartitionTriple.of([4, 2], [5, 3, 1], [3]) and second == PartitionTriple.of([1], [4], [3])
    return CheckResult("tau_partitions", ok, f"{first}; {second}")


def check_tau_fixed_points(config: NilopConfig) -> CheckResult:
    fixed = []
    for n in (7, 8):
        X = central_object(n, config.p)
        fixed.append(is_isomorphic(tau(X), X, config))
    return CheckResult("tau_fixed_points", all(fixed), f"n = 7, 8: {fixed}")


def check_counts(config: NilopConfig) -> CheckResult:
    mismatches = []
    for n in range(1, 9):
        cases: list[tuple[str, dict[str, int]]] = [
            (CountKind.PICKETS, {"n": n}),
            (CountKind.BIPICKETS, {"n": n}),
            (CountKind.CYCLIC_BY_HEIGHT, {"n": n}),
            (CountKind.FIBONACCI_P1, {"n": n}),
        ]
        cases += [(CountKind.CYCLIC_HW, {"n": n, "b": b}) for b in range(1, (n + 3) // 2)]
        cases += [(CountKind.CYCLIC_U_HEIGHT, {"n": n, "u": u}) for u in range(1, n + 1)]
        for kind, params in cases:
            if count(kind, **params) != enumerate_count(kind, **params):
                mismatches.append(f"{kind}{params}")
    for n in (1, 2, 3):
        mismatches += cyclic_count_mismatches(n, CYCLIC_VMAX[n], config)
    return CheckResult("counts", not mismatches, ", ".join(mismatches) or "codes n <= 8, objects n <= 3")


# largest |V| of an indecomposable with cyclic U in S(n)
CYCLIC_VMAX = {1: 1, 2: 2, 3: 4, 4: 6}


def cyclic_count_mismatches(n: int, vmax: int, config: NilopConfig) -> list[str]:
    """Cyclic-subspace counts of S(n) against the classes found by enumeration."""
    objects = enumerate_indecomposables(n, vmax, config.p, config, cyclic_only=True)
    widths = range(1, (n + 3) // 2)
    heights = range(1, n + 1)
    cases: list[tuple[str, dict[str, int]]] = [
        (CountKind.CYCLIC_TOTAL, {"n": n}),
        (CountKind.CYCLIC_BY_HEIGHT, {"n": n}),
    ]
    for kind in (CountKind.CYCLIC_HW, CountKind.CYCLIC_HW_RADICAL, CountKind.CYCLIC_HW_NONRADICAL):
        cases += [(kind, {"n": n, "b": b}) for b in widths]
    for kind in (CountKind.CYCLIC_U_HEIGHT, CountKind.CYCLIC_U_HEIGHT_TOTAL):
        cases += [(kind, {"n": n, "u": u}) for u in heights]
    cases += [(CountKind.CYCLIC_UB, {"n": n, "u": u, "b": b}) for u in heights for b in widths]
    mismatches = [
        f"S({n}) {kind}{params}"
        for kind, params in cases
        if object_count(kind, objects, **params) != count(kind, **params)
    ]
    for v in range(1, n + 1):
        if sum(1 for X in objects if X.dim == v) != count(CountKind.CYCLIC_BY_DIM, v=v):
            mismatches.append(f"S({n}) {CountKind.CYCLIC_BY_DIM}{{'v': {v}}}")
    return mismatches


def check_cyclic_objects(config: NilopConfig) -> CheckResult:
    mismatches = cyclic_count_mismatches(4, CYCLIC_VMAX[4], config)
    return CheckResult("cyclic_objects", not mismatches, ", ".join(mismatches) or "S(4), |V| <= 6")


def check_bijections(config: NilopConfig) -> CheckResult:
    failures = 0
    for r in range(1, 9):
        for elements in itertools.combinations(range(1, 9), r):
            E = SubsetCode.of(elements)
            if subset_lambda_bijection(subset_lambda_bijection(E)) != E:
                failures += 1
            if subset_from_heights(t_height_map(E)) != E:
                failures += 1
    E = SubsetCode.of([2, 3, 5, 6, 8, 9])
    worked = subset_lambda_bijection(E) == Partition.of([5, 5, 4, 3, 1]) and t_height_map(E) == (1, 2, 5, 7, 8)
    return CheckResult("bijections", failures == 0 and worked, f"{failures} failures on subsets of 1..8")


def check_families(config: NilopConfig, p: int = 5, samples: int = 3) -> CheckResult:
    problems = []
    family_config = config.replace(p=p)
    for name, expected in progress(list(FAMILY_UWB.items()), desc="families", config=config):
        base = family(name, p=p)
        if uwb(base) != expected:
            problems.append(f"{name} uwb {uwb(base)}")
            continue
        if not is_indecomposable(base, family_config):
            problems.append(f"{name} decomposable")
        if PARAM_ARITY[name] != 2:
            continue
        members = [family(name, c, p=p) for c in projective_points(p)[:samples]]
        for X, Y in itertools.combinations(members, 2):
            if is_isomorphic(X, Y, family_config):
                problems.append(f"{name} has isomorphic members")
                break
    return CheckResult("families", not problems, "; ".join(problems) or f"{len(FAMILY_UWB)} families over F_{p}")


def check_kronecker_pair(config: NilopConfig) -> CheckResult:
    X, Y = kronecker_pair_s6(config.p)
    report = kronecker_pair_check(X, Y)
    ok = report.is_kronecker_pair and report.euler == -2
    return CheckResult("kronecker_pair", ok, str(report.to_dict()))


def check_jordan_extensions(config: NilopConfig, max_ell: int = 2) -> CheckResult:
    problems = []
    for ell in range(1, max_ell + 1):
        X = family(FamilyName.STANDARD_S6, (1, 1), p=config.p, ell=ell)
        if uwb(X) != (6 * ell, 6 * ell, 3 * ell):
            problems.append(f"ell={ell} uwb {uwb(X)}")
        elif not is_indecomposable(X, config):
            problems.append(f"ell={ell} decomposable")
    return CheckResult("jordan_extensions", not problems, "; ".join(problems) or f"ell <= {max_ell}")


def s6_corpus(p: int) -> list[SubspacePair]:
    names = [
        FamilyName.STANDARD_S6,
        FamilyName.WIDTH4_Y,
        FamilyName.WIDTH6_A,
        FamilyName.WIDTH6_B,
        FamilyName.WIDTH6_BPRIME,
        FamilyName.WIDTH6_C,
    ]
    corpus = [family(name, p=p) for name in names]
    corpus += [family(FamilyName.STANDARD_S6, c, p=p) for c in projective_points(p)]
    corpus += [make_picket(code, p) for code in picket_codes(6)]
    return corpus


def check_s6_bounds(config: NilopConfig) -> CheckResult:
    """|u - 2b|, |v - 4b|, |w - 2b| <= 4 on S(6) objects; ([3,1],[6,4,3,1]) reaches u - 2b = -4."""
    violations, extremal = 0, False
    for X in s6_corpus(config.p):
        u, w, b = uwb(X)
        if max(abs(u - 2 * b), abs(u + w - 4 * b), abs(w - 2 * b)) > 4:
            violations += 1
        extremal = extremal or u - 2 * b == -4
    return CheckResult("s6_bounds", violations == 0 and extremal, f"{violations} violations")


def check_phi_lines(config: NilopConfig) -> CheckResult:
    off = []
    for X in s6_corpus(config.p):
        point = PrPoint.from_pair(X)
        if not point.is_central() and not on_phi_lines(point):
            off.append(str(point))
    return CheckResult("phi_lines", not off, ", ".join(off) or "all non-central objects on Φ")


def check_filtrations(config: NilopConfig, samples: int = 50) -> CheckResult:
    rng = np.random.default_rng(config.seed)
    failures = 0
    for k in range(samples):
        lam = Partition.of(int(x) for x in rng.integers(1, 5, size=int(rng.integers(1, 4))))
        X = random_pair(4, lam, int(rng.integers(0, lam.size + 1)), seed=config.seed + k, p=config.p)
        steps = telescope(X)
        if sum(step.factor.uwb[0] for step in steps) != X.u_dim:
            failures += 1
        if [step.factor.v_part[0] for step in steps] != list(X.lam):
            failures += 1
    return CheckResult("filtrations", failures == 0, f"{samples} random pairs, {failures} failures")


def check_root_table(config: NilopConfig) -> CheckResult:
    diffs = diff_table()
    root = root_by_index(47)
    spot = root.uwb == (2, 2, 2) and root.line_type == "D_l" and (root.r_delta, root.r_nabla) == (2, 4)
    return CheckResult("root_table", not diffs and spot, f"{len(diffs)} differences")


def check_svg(config: NilopConfig) -> CheckResult:
    overlay = Overlay.from_dict({"lines": ["phi"], "triangles": ["1"]}, 6)
    first, second = render_svg(6, overlay), render_svg(6, overlay)
    return CheckResult("svg", first == second and first.startswith("<?xml"), f"{len(first)} bytes")


CHECKS: dict[str, tp.Callable[[NilopConfig], CheckResult]] = {
    "s3_classification": check_s3_classification,
    "level_bounds": check_level_bounds,
    "tau_rotation": check_tau_rotation,
    "tau6_identity": check_tau6_identity,
    "tau_partitions": check_tau_partitions,
    "tau_fixed_points": check_tau_fixed_points,
    "counts": check_counts,
    "cyclic_objects": check_cyclic_objects,
    "bijections": check_bijections,
    "families": check_families,
    "kronecker_pair": check_kronecker_pair,
    "jordan_extensions": check_jordan_extensions,
    "s6_bounds": check_s6_bounds,
    "phi_lines": check_phi_lines,
    "filtrations": check_filtrations,
    "root_table": check_root_table,
    "svg": check_svg,
}


def run_acceptance(config: NilopConfig, only: tp.Sequence[str] | None = None) -> list[CheckResult]:
    names = list(only) if only else list(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks: {unknown}. Supported checks are: {list(CHECKS)}")

    results = []
    for name in names:
        try:
            result = CHECKS[name](config)
        except (NilopError, BudgetExceededError) as e:
            result = CheckResult(name, False, f"{type(e).__name__}: {e}")
        logger.info(str(result))
        results.append(result)
    return results
