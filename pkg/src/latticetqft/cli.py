"""Command-line interface.

Exit codes: 0 success / all Pass, 1 verification failure, 2 usage or input
error.  All numeric output is exact; identical argv (and seeds) produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import surface as surface_mod
from . import verify as verify_mod
from .algebra import parse_algebra_spec
from .errors import LatticeTqftError
from .grouptheory import (
    DEFAULT_ORDER_CAP,
    DEFAULT_WORK_CAP,
    hom_count_nonorientable,
    hom_count_orientable,
    irrep_data,
    parse_group_spec,
)
from .tqft import invariant_direct
from .verify import format_rational, parse_surface_spec

DEFAULT_DIM_CAP = 256


def _add_surface_source(parser: argparse.ArgumentParser, file_flag: str = "--surface"):
    grp = parser.add_mutually_exclusive_group(required=True)
    grp.add_argument("--genus", type=int, help="orientable fan surface of this genus")
    grp.add_argument("--crosscaps", type=int, help="non-orientable fan surface")
    grp.add_argument(file_flag, metavar="PATH", dest="surface_file",
                     help="read a .tri triangulation file")


def _surface_from_args(args) -> tuple[str, "surface_mod.Triangulation"]:
    if args.surface_file is not None:
        return args.surface_file, parse_surface_spec(args.surface_file)
    if args.genus is not None:
        spec = f"genus:{args.genus}"
    else:
        spec = f"crosscaps:{args.crosscaps}"
    return spec, parse_surface_spec(spec)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticetqft",
        description="Exact state-sum invariants of triangulated surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface", help="build or convert a triangulation")
    _add_surface_source(p, "--in")
    p.add_argument("--out", metavar="PATH", help="write the .tri text here")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("invariant", help="contract the state sum of an algebra")
    p.add_argument("--algebra", required=True,
                   help="group:<g> | matrix:<n>[:transpose|:anti] | swap | "
                        "sum(a,b) | tensor(a,b)")
    _add_surface_source(p)
    p.add_argument("--max-dim", type=int, default=DEFAULT_DIM_CAP)
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="check lhs = rhs (= direct) identities")
    p.add_argument("--group", help="group spec for a single check")
    _grp = p.add_mutually_exclusive_group()
    _grp.add_argument("--direct", dest="direct", action="store_true", default=None,
                      help="force the contraction comparison on")
    _grp.add_argument("--no-direct", dest="direct", action="store_false",
                      help="force the contraction comparison off")
    p.add_argument("--grid", action="store_true",
                   help="verify all --groups x --surfaces combinations")
    p.add_argument("--groups", help="comma-separated group specs (grid mode)")
    p.add_argument("--surfaces", help="comma-separated surface specs (grid mode)")
    p.add_argument("--genus", type=int)
    p.add_argument("--crosscaps", type=int)
    p.add_argument("--surface", metavar="PATH", dest="surface_file")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-work", type=int, default=DEFAULT_WORK_CAP)
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fuzz", help="invariance along random Pachner walks")
    p.add_argument("--algebra", required=True)
    _add_surface_source(p)
    p.add_argument("--walks", type=int, default=5)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("chartable", help="irreducible dimensions and indicators")
    p.add_argument("--group", required=True)
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("homcount", help="count surface-group homomorphisms")
    p.add_argument("--group", required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--genus", type=int)
    grp.add_argument("--crosscaps", type=int)
    p.add_argument("--max-work", type=int, default=DEFAULT_WORK_CAP)
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--json", action="store_true")

    return parser


def _cmd_surface(args) -> int:
    _, tri = _surface_from_args(args)
    text = tri.serialize()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        print(json.dumps({
            "faces": tri.face_count,
            "edges": tri.edge_count,
            "vertices": tri.vertex_count,
            "chi": tri.euler_characteristic,
            "orientable": tri.is_orientable,
        }, indent=2))
    elif not args.out:
        sys.stdout.write(text)
    return 0


def _cmd_invariant(args) -> int:
    algebra = parse_algebra_spec(args.algebra)
    if algebra.dim > args.max_dim:
        print(f"error: algebra dimension {algebra.dim} exceeds --max-dim {args.max_dim}",
              file=sys.stderr)
        return 2
    sspec, tri = _surface_from_args(args)
    value = invariant_direct(algebra, tri)
    if args.json:
        print(json.dumps({
            "algebra": args.algebra,
            "surface": sspec,
            "chi": tri.euler_characteristic,
            "orientable": tri.is_orientable,
            "value": format_rational(value),
        }, indent=2))
    else:
        print(value)
    return 0


def _cmd_verify(args) -> int:
    if args.grid:
        if not args.groups or not args.surfaces:
            print("error: --grid needs --groups and --surfaces", file=sys.stderr)
            return 2
        from .algebra import split_top_level
        reports = verify_mod.verify_grid(
            [g.strip() for g in split_top_level(args.groups)],
            [s.strip() for s in split_top_level(args.surfaces)],
            with_direct=args.direct, threads=args.threads,
            max_work=args.max_work, max_order=args.max_order)
    else:
        if not args.group:
            print("error: need --group (or --grid)", file=sys.stderr)
            return 2
        if args.surface_file is None and args.genus is None and args.crosscaps is None:
            print("error: need one of --genus, --crosscaps, --surface", file=sys.stderr)
            return 2
        sspec, tri = _surface_from_args(args)
        group = parse_group_spec(args.group, args.max_order)
        reports = [verify_mod.verify_mednykh(
            group, tri, args.direct, args.group, sspec, args.max_work)]
    if args.json:
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        print(verify_mod.render_table(reports))
    return 1 if any(r.status == "Fail" for r in reports) else 0


def _cmd_fuzz(args) -> int:
    sspec, _ = _surface_from_args(args)
    result = verify_mod.pachner_fuzz(args.algebra, sspec, args.walks,
                                     args.steps, args.seed)
    if args.json:
        print(json.dumps(result.to_json_dict(), indent=2))
    elif result.passed:
        print(f"Pass value={result.value} walks={result.walks} steps={result.steps}")
    else:
        print(f"Fail {result.detail}")
        sys.stdout.write(result.counterexample)
    return 0 if result.passed else 1


def _cmd_chartable(args) -> int:
    group = parse_group_spec(args.group, args.max_order)
    data = irrep_data(group)
    if args.json:
        print(json.dumps({
            "group": args.group,
            "order": group.order,
            "classes": data.class_count,
            "entries": [{"dimension": d, "indicator": nu} for d, nu in data.entries],
        }, indent=2))
    else:
        print(f"group={args.group} order={group.order} classes={data.class_count}")
        for d, nu in data.entries:
            print(f"d={d} nu={nu:+d}" if nu else f"d={d} nu=0")
    return 0


def _cmd_homcount(args) -> int:
    group = parse_group_spec(args.group, args.max_order)
    if args.genus is not None:
        count = hom_count_orientable(group, args.genus, args.max_work)
        kind, num = "genus", args.genus
    else:
        count = hom_count_nonorientable(group, args.crosscaps, args.max_work)
        kind, num = "crosscaps", args.crosscaps
    if args.json:
        print(json.dumps({"group": args.group, kind: num, "count": count}, indent=2))
    else:
        print(count)
    return 0


_HANDLERS = {
    "surface": _cmd_surface,
    "invariant": _cmd_invariant,
    "verify": _cmd_verify,
    "fuzz": _cmd_fuzz,
    "chartable": _cmd_chartable,
    "homcount": _cmd_homcount,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except LatticeTqftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
