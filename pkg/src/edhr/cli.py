"""Command-line front end: gen, reduce, solve, bench, export-lp."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import emit_report, export_lp, run_bench
from .generators import (
    FAMILIES,
    GeneratorConfig,
    format_instance,
    format_jooken,
    generate,
    read_instance,
    read_jooken,
)
from .kpcore import bounds, normalize_and_sort
from .reduction import (
    DEFAULT_BRANCH_CAP,
    cardinality_constraints,
    dhr_partition,
    edhr_partition,
)
from .solvers import MODES, SolverConfig, solve

DEFAULT_I = 2


def _int_list(text: str) -> list[int]:
    """``"0,1,5-7"`` -> ``[0, 1, 5, 6, 7]``; ``"200-1000:200"`` steps by 200."""
    out = []
    for part in text.split(","):
        if "-" in part.strip()[1:]:
            span, _, step = part.partition(":")
            lo, hi = span.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1, int(step or 1)))
        else:
            out.append(int(part))
    return out


def _load(args):
    return read_jooken(args.input) if args.jooken else read_instance(args.input)


def _labels(s, positions) -> str:
    return " ".join(f"x{j + 1}" for j in sorted(s.to_original(positions))) or "-"


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(args.family, args.n, args.range, args.seed, not args.no_force_break)
    inst = generate(cfg)
    text = format_jooken(inst) if args.jooken else format_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_reduce(args) -> int:
    inst = _load(args)
    s = normalize_and_sort(inst)
    bd = bounds(s)
    part = edhr_partition(s, args.i)
    dhr = dhr_partition(s)
    print(f"n={s.n} C={s.capacity} break=x{s.order[s.break_index] + 1} r={s.residual}")
    print(f"U={bd.upper} L={bd.lower}")
    print(f"i={args.i} |N1..N5|=" + ",".join(str(v) for v in part.sizes()))
    print(f"N{args.i},1: {_labels(s, part.n1)}")
    print(f"N{args.i},4: {_labels(s, part.n4)}")
    print(f"DHR fix 1: {_labels(s, dhr.fixed_one)}")
    print(f"DHR fix 0: {_labels(s, dhr.fixed_zero)}")
    print(f"DHR free: {len(dhr.free)} items, C_F={dhr.reduced_capacity}")
    return 0


def cmd_solve(args) -> int:
    inst = _load(args)
    cfg = SolverConfig(mode=args.mode, i=args.i, branch_cap=args.branch_cap)
    sol, stats = solve(inst, cfg)
    print(f"objective={sol.objective}")
    print("selected=" + (" ".join(f"x{j + 1}" for j in sol.selected) or "-"))
    print(
        f"nodes={stats.nodes_expanded} branches={stats.branches_solved} "
        f"fixed={stats.fixed_by_reduction} time={stats.wall_time:.3f}s"
    )
    return 0


def cmd_bench(args) -> int:
    result = run_bench(
        families=args.families.split(","),
        sizes=_int_list(args.sizes),
        seeds=_int_list(args.seeds),
        i=args.i,
        range_=args.range,
        workers=args.workers,
    )
    text = emit_report(result.rows, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for name, err in result.errors:
        print(f"{name}: {err}", file=sys.stderr)
    return 1 if result.errors else 0


def cmd_export_lp(args) -> int:
    inst = _load(args)
    cons = None
    if args.with_constraints:
        s = normalize_and_sort(inst)
        cons = cardinality_constraints(edhr_partition(s, args.i))
    text = export_lp(inst, cons)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edhr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="instance file")
        p.add_argument("--jooken", action="store_true", help="input uses the index/profit/weight layout")

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--no-force-break", action="store_true")
    p.add_argument("--jooken", action="store_true", help="write the index/profit/weight layout")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="print the partition and DHR fixings")
    add_input(p)
    p.add_argument("--i", type=int, default=DEFAULT_I)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="solve an instance")
    add_input(p)
    p.add_argument("--mode", choices=MODES, default="constrained-bb")
    p.add_argument("--i", type=int, default=DEFAULT_I)
    p.add_argument("--branch-cap", type=int, default=DEFAULT_BRANCH_CAP)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="plain vs constrained branch-and-bound")
    p.add_argument("--families", default=",".join(FAMILIES))
    p.add_argument("--sizes", default="200-2000:200", help="e.g. 200,400 or 200-2000:200")
    p.add_argument("--seeds", default="0")
    p.add_argument("--i", type=int, default=DEFAULT_I)
    p.add_argument("--range", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-lp", help="write the model in LP format")
    add_input(p)
    p.add_argument("--i", type=int, default=DEFAULT_I)
    p.add_argument("--with-constraints", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_lp)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"edhr: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
