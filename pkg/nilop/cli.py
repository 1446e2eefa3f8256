"""
Command-line front end: `nilop <command> [flags]`.

Objects are read from and written as compact JSON ({"n","p","lambda","gens"}).
Exit codes: 0 on success, 1 on a domain error, 2 when a scan budget runs out.
"""

import argparse
import json
import logging
import os
import sys
import typing as tp
from pathlib import Path

from hydra import compose, initialize_config_dir

from nilop.acceptance import CHECKS, run_acceptance
from nilop.config import DEFAULT_BUDGET, NilopConfig
from nilop.errors import BudgetExceededError, InvalidObjectError, NilopError
from nilop.modules.artrans import dual, tau_power
from nilop.modules.comb import count
from nilop.modules.families import family, graded_family
from nilop.modules.filtrations import nice_decomposition, nice_steps, telescope
from nilop.modules.graded import graded_op, push_down
from nilop.modules.homs import decompose, enumerate_indecomposables, is_isomorphic, to_json_lines
from nilop.modules.pair import SubspacePair, invariants, partition_triple
from nilop.observability import setup_logging
from nilop.output import CountKind, FamilyName, FiltrationKind, GradedOp
from nilop.triangle.roots import diff_table, format_root, parse_printed_table
from nilop.triangle.svg import Overlay, render_svg
from nilop.utils.parser import load_pair, pair_to_dict, serialize_pair

logger = logging.getLogger(__name__)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

COUNT_PARAMS = ("n", "b", "u", "v", "a", "c")


def load_config(args: argparse.Namespace) -> NilopConfig:
    """configs/config.yaml through Hydra's compose API, then explicit flags on top."""
    if CONFIG_DIR.is_dir():
        with initialize_config_dir(config_dir=str(CONFIG_DIR), version_base="1.1"):
            cfg = compose(config_name="config")
        config = NilopConfig.from_dict(cfg["nilop"])
    else:
        config = NilopConfig(budget=int(os.environ.get("NILOP_BUDGET", DEFAULT_BUDGET)))
    return config.replace(budget=args.budget, seed=args.seed, p=getattr(args, "p", None))


def _pair_json(X: SubspacePair, **extra: tp.Any) -> str:
    return serialize_pair(X, par=partition_triple(X).to_list(), **extra)


def _parse_c(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise InvalidObjectError(f"--c expects comma-separated integers, got {text!r}") from e


def cmd_invariants(args: argparse.Namespace, config: NilopConfig) -> str:
    X = load_pair(args.file)
    doc = invariants(X).to_dict()
    doc["par"] = partition_triple(X).to_list()
    return json.dumps(doc, separators=(",", ":"))


def cmd_tau(args: argparse.Namespace, config: NilopConfig) -> str:
    X = load_pair(args.file)
    Y = tau_power(X, args.power)
    extra = {"tau6_fixed": is_isomorphic(Y, X, config)} if args.power % 6 == 0 else {}
    if args.json:
        return _pair_json(Y, **extra)
    line = f"par {partition_triple(Y)} uwb ({Y.u_dim}, {Y.w_dim}, {Y.width})"
    if extra:
        line += f" tau6_fixed {str(extra['tau6_fixed']).lower()}"
    return line


def cmd_dual(args: argparse.Namespace, config: NilopConfig) -> str:
    return _pair_json(dual(load_pair(args.file)))


def cmd_decompose(args: argparse.Namespace, config: NilopConfig) -> str:
    return to_json_lines(decompose(load_pair(args.file), config)).rstrip("\n")


def cmd_isom(args: argparse.Namespace, config: NilopConfig) -> str:
    X, Y = load_pair(args.file), load_pair(args.other)
    return json.dumps({"isomorphic": is_isomorphic(X, Y, config)}, separators=(",", ":"))


def cmd_enumerate(args: argparse.Namespace, config: NilopConfig) -> str:
    pairs = enumerate_indecomposables(args.n, args.vmax, config.p, config)
    return to_json_lines(pairs).rstrip("\n")


def cmd_count(args: argparse.Namespace, config: NilopConfig) -> str:
    params = {key: getattr(args, key) for key in COUNT_PARAMS if getattr(args, key) is not None}
    return str(count(args.kind, **params))


def cmd_family(args: argparse.Namespace, config: NilopConfig) -> str:
    c = _parse_c(args.c)
    if args.op is None:
        X = family(args.name, c, p=config.p, ell=args.ell, n=args.n)
        return _pair_json(X, uwb=[X.u_dim, X.w_dim, X.width])
    M = graded_op(graded_family(args.name, c, p=config.p, ell=args.ell), args.op, args.z, args.s, args.t)
    X = push_down(M)
    return _pair_json(X, uwb=[X.u_dim, X.w_dim, X.width], dim_vector=str(M.dim_vector()))


def cmd_filtration(args: argparse.Namespace, config: NilopConfig) -> str:
    X = load_pair(args.file)
    if args.kind == FiltrationKind.TELESCOPE:
        steps = telescope(X)
        doc: dict[str, tp.Any] = {}
    else:
        decomposition = nice_decomposition(X, config)
        steps = nice_steps(decomposition)
        doc = {"height_one": pair_to_dict(decomposition.height_one) if decomposition.height_one else None}
    doc["factors"] = [step.factor.to_list() for step in steps]
    return json.dumps(doc, separators=(",", ":"))


def cmd_roots(args: argparse.Namespace, config: NilopConfig) -> str:
    if args.diff:
        diffs = diff_table()
        if diffs:
            raise NilopError("\n".join(str(d) for d in diffs))
        return "no differences"
    lines = []
    for record in parse_printed_table():
        r_delta = "-" if record.r_delta is None else record.r_delta
        r_nabla = "-" if record.r_nabla is None else record.r_nabla
        lines.append(
            f"{record.index} {format_root(record.e8_root)} {format_root(record.xi_root)} "
            f"{' '.join(map(str, record.uwb))} {record.phi} {record.line_type} {r_delta} {r_nabla}"
        )
    return "\n".join(lines)


def cmd_triangle_svg(args: argparse.Namespace, config: NilopConfig) -> str:
    overlay = Overlay.load(args.overlay, args.n) if args.overlay else None
    return render_svg(args.n, overlay).rstrip("\n")


def cmd_accept(args: argparse.Namespace, config: NilopConfig) -> str:
    results = run_acceptance(config, args.only)
    failed = [r.name for r in results if not r.passed]
    lines = [str(r) for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        raise NilopError("\n".join(lines))
    return "\n".join(lines)


COMMANDS: dict[str, tp.Callable[[argparse.Namespace, NilopConfig], str]] = {
    "invariants": cmd_invariants,
    "tau": cmd_tau,
    "dual": cmd_dual,
    "decompose": cmd_decompose,
    "isom": cmd_isom,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "family": cmd_family,
    "filtration": cmd_filtration,
    "roots": cmd_roots,
    "triangle-svg": cmd_triangle_svg,
    "accept": cmd_accept,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilop", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--budget", type=int, default=None, help="scan budget (overrides NILOP_BUDGET)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("invariants", "tau", "dual", "decompose", "isom", "filtration"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--file", required=True, help="JSON object file")
        if name == "tau":
            cmd.add_argument("--power", type=int, default=1)
            cmd.add_argument("--json", action="store_true", help="print the object as JSON with a par field")
        if name == "isom":
            cmd.add_argument("--other", required=True)
        if name == "filtration":
            cmd.add_argument("--kind", choices=FiltrationKind.values(), default=FiltrationKind.TELESCOPE)

    cmd = sub.add_parser("enumerate")
    cmd.add_argument("--n", type=int, required=True)
    cmd.add_argument("--vmax", type=int, required=True)
    cmd.add_argument("--p", type=int, default=None)

    cmd = sub.add_parser("count")
    cmd.add_argument("--kind", choices=CountKind.values(), required=True)
    for key in COUNT_PARAMS:
        cmd.add_argument(f"--{key}", type=int, default=None)

    cmd = sub.add_parser("family")
    cmd.add_argument("--name", choices=FamilyName.values(), required=True)
    cmd.add_argument("--c", default=None, help="parameter, e.g. 1,2 for the point (1 : 2)")
    cmd.add_argument("--p", type=int, default=None)
    cmd.add_argument("--ell", type=int, default=1)
    cmd.add_argument("--n", type=int, default=7, help="height bound of the central family")
    cmd.add_argument("--op", choices=GradedOp.values(), default=None)
    cmd.add_argument("--z", type=int, default=None)
    cmd.add_argument("--s", type=int, default=None)
    cmd.add_argument("--t", type=int, default=None)

    cmd = sub.add_parser("roots")
    cmd.add_argument("--diff", action="store_true")

    cmd = sub.add_parser("triangle-svg")
    cmd.add_argument("--n", type=int, required=True)
    cmd.add_argument("--overlay", default=None, help="JSON file with points, lines, triangles, hexagons")

    cmd = sub.add_parser("accept")
    cmd.add_argument("--only", nargs="*", choices=list(CHECKS), default=None)
    return parser


def run(argv: tp.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        config = load_config(args)
        output = COMMANDS[args.command](args, config)
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        # NilopError, invalid configuration values and unreadable files
        print(str(e), file=sys.stderr)
        return 1
    print(output)
    return 0


def main() -> None:
    sys.exit(run())
