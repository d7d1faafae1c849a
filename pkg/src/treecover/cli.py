"""Command-line front end: compute, decompose, cover, verify, gen."""

from __future__ import annotations

import argparse
import json
import sys

from .covers import InvariantError, TreeCover
from .graph import ClassRejection, Graph, GraphError, dump_graph, load_graph, require_accepted

EXIT_OK, EXIT_INPUT, EXIT_CLASS, EXIT_INTERNAL = 0, 1, 2, 3

PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan",
           "gold", "gray"]


def _read(path: str) -> Graph:
    if path == "-":
        return load_graph(sys.stdin.read())
    with open(path) as fh:
        return load_graph(fh.read())


def to_dot(g: Graph, cover: TreeCover | None = None) -> str:
    lines = ["graph G {"]
    part_of = {}
    if cover is not None:
        for i, p in enumerate(cover.parts):
            for e in p:
                part_of[e] = i
    for e, (u, v) in enumerate(g.edges):
        attr = ""
        if e in part_of:
            i = part_of[e]
            attr = f' [color={PALETTE[i % len(PALETTE)]}, label="{i}"]'
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_compute(args) -> int:
    from .treenum import analyze, construct_cover
    from .elements import Context

    g = _read(args.path)
    require_accepted(g)
    rep = analyze(Context(g).whole())
    if args.json:
        print(json.dumps({"schema": 1, "tau": rep.tau, "report": rep.to_json()}, indent=2))
    else:
        print(f"tau={rep.tau}")
    if args.witness or args.dot:
        cover = construct_cover(rep.element, report=rep)
        if args.witness:
            print("\n".join(cover.lines(g)))
        if args.dot:
            sys.stdout.write(to_dot(g, cover))
    return EXIT_OK


def cmd_cover(args) -> int:
    from .treenum import construct_cover

    g = _read(args.path)
    cover = construct_cover(g)
    if args.dot:
        sys.stdout.write(to_dot(g, cover))
    else:
        print("\n".join(cover.lines(g)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    from .decomposition import decompose

    g = _read(args.path)
    require_accepted(g)
    print(json.dumps(decompose(g).to_json(), indent=2))
    return EXIT_OK


def cmd_gen(args) -> int:
    from . import generators as gens

    fam = args.family
    if fam == "cycle":
        g = gens.gen_cycle(args.n)
    elif fam == "diamond":
        g = gens.gen_diamond()
    elif fam == "fan":
        g = gens.gen_fan(args.n)
    elif fam == "necklace":
        g = gens.gen_necklace(args.n)
    else:
        g = gens.gen_random_cut_outerplanar(args.seed, args.blocks, args.max_block_size,
                                            args.density)
    sys.stdout.write(dump_graph(g))
    return EXIT_OK


def verify_rows(instances, budget: int) -> list[dict]:
    """One row per (name, graph): algorithm, oracle and literal-recurrence tree numbers."""
    from .oracle import BudgetExceeded, bf_tree_number
    from .treenum import step4_literal_tau, tree_number

    rows = []
    for name, g in instances:
        algo = tree_number(g)
        row = {"instance": name, "edges": g.m, "algo_tau": algo,
               "step4_literal_tau": step4_literal_tau(g)}
        try:
            oracle = bf_tree_number(g, budget)
            row.update(oracle_tau=oracle, match=oracle == algo, skipped=False)
        except BudgetExceeded:
            row.update(oracle_tau=None, match=None, skipped=True)
        rows.append(row)
    rows.sort(key=lambda r: r["instance"])
    return rows


def _verify_instances(args):
    from . import generators as gens

    out = []
    for path in args.paths:
        out.append((path, _read(path)))
    if args.max_edges > 0:
        for i, g in enumerate(gens.exhaustive_corpus(args.max_edges, args.max_blocks)):
            out.append((f"corpus-{i:05d}", g))
    for n in range(1, args.necklace + 1):
        out.append((f"necklace-{n:02d}", gens.gen_necklace(n)))
    for s in range(args.seeds):
        g = gens.gen_random_cut_outerplanar(s, 1 + s % 3, 3 + s % 5)
        out.append((f"random-{s:04d}", g))
    return out


def cmd_verify(args) -> int:
    for _, g in (items := _verify_instances(args)):
        require_accepted(g)
    rows = verify_rows(items, args.budget)
    print(json.dumps({"schema": 1, "rows": rows}, indent=2))
    return EXIT_INTERNAL if any(r["match"] is False for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treecover", description="Tree numbers of cut-outerplanar graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print the tree number of an edge-list file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="print the full element report")
    p.add_argument("--witness", action="store_true", help="also print a validated minimal cover")
    p.add_argument("--dot", action="store_true", help="also print the cover as DOT")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("cover", help="print a minimal tree cover")
    p.add_argument("path")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("decompose", help="print blocks, outer cycles and chords as JSON")
    p.add_argument("path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="compare against the brute-force oracle")
    p.add_argument("paths", nargs="*")
    p.add_argument("--max-edges", type=int, default=0, help="exhaustive corpus size (0 = none)")
    p.add_argument("--max-blocks", type=int, default=7)
    p.add_argument("--seeds", type=int, default=0, help="number of seeded random instances")
    p.add_argument("--necklace", type=int, default=0, help="include necklace(1..N)")
    p.add_argument("--budget", type=int, default=16, help="oracle edge budget")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="print a generated instance as an edge list")
    p.add_argument("--family", choices=["cycle", "diamond", "fan", "necklace", "random"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--blocks", type=int, default=5)
    p.add_argument("--max-block-size", type=int, default=8)
    p.add_argument("--density", type=float, default=0.5)
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClassRejection as e:
        print(f"error: graph rejected: {e}", file=sys.stderr)
        return EXIT_CLASS
    except InvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GraphError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
