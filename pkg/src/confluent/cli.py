"""Command-line entry point: ``confluent <generate|check|enumerate|reduce|draw>``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import graph as gc
from .enumeration import directed_bicliques, list_max_bicliques, list_max_cliques
from .graph import Graph, GraphFormatError, format_graph, parse_graph
from .oracle import Budget, SizeCapError, decide_confluence
from .planarity import is_planar
from .reduction import ReductionResult, Status, reduce_graph
from .render import RenderOptions, draw_network
from .tracks import (
    TrackError,
    build_cocycle_track_for,
    build_cograph_track,
    build_cotree_track,
    build_interval_track,
    from_reduction,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _rng() -> random.Random:
    return random.Random(int(os.environ.get("CONFLUENT_SEED", "0")))


def _interval_params(params: list[str]) -> gc.IntervalModel:
    tokens = [t for p in params for t in p.replace(",", " ").split()]
    if not tokens or len(tokens) % 2:
        raise UsageError("interval needs endpoint pairs, e.g. `0 2 1 4` or `0,2 1,4`")
    nums = [Fraction(t) for t in tokens]
    return gc.IntervalModel.of(zip(nums[::2], nums[1::2]))


def _generate(family: str, params: list[str], source: bool) -> str:
    family = family.replace("-", "_")
    if family == "interval":
        model = _interval_params(params)
        return gc.format_intervals(model) if source else format_graph(gc.interval_graph(model))
    if family == "cograph":
        if len(params) != 1:
            raise UsageError("cograph takes one quoted expression, e.g. '~U(a, b)'")
        expr = gc.parse_cograph(params[0])
        return gc.format_cograph(expr) + "\n" if source else format_graph(gc.cograph(expr))
    if source:
        raise UsageError("--source applies to interval and cograph families only")
    if family in ("subdivided", "triangle_augmented"):
        if not params:
            raise UsageError(f"{family} needs a base family")
        inner = [params[0]] + [int(p) for p in params[1:]]
        return format_graph(gc.generate(family, *inner, rng=_rng()))
    try:
        ints = [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"{family} expects integer parameters") from exc
    if family == "tree":
        return format_graph(gc.tree_from_prufer(ints))
    return format_graph(gc.generate(family, *ints, rng=_rng()))


def cmd_generate(args) -> int:
    try:
        text = _generate(args.family, args.params, args.source)
    except (IndexError, TypeError) as exc:
        raise UsageError(f"missing or malformed parameters for {args.family}") from exc
    _write(text, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args.file)
    if args.planar:
        planar = is_planar(g)
        print("planar" if planar else "non-planar")
        return EXIT_OK if planar else EXIT_FAIL
    if g.directed:
        raise UsageError("the oracle handles undirected graphs only")
    budget = Budget(max_states=args.max_states, max_depth=args.max_depth)
    try:
        verdict = decide_confluence(g, budget)
    except SizeCapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(verdict.describe())
    s = verdict.stats
    print(f"states={s.states} memo_hits={s.memo_hits} steps={len(verdict.steps)}")
    if verdict.reducible and args.witness:
        from .reduction import replay

        reduced = replay(g, verdict.steps).graph()
        log = ReductionResult(g, verdict.steps, reduced, Status.PLANAR)
        Path(args.witness).write_text(log.dumps() + "\n", encoding="utf-8")
    return EXIT_OK if verdict.reducible else EXIT_FAIL


def cmd_enumerate(args) -> int:
    g = _load_graph(args.file)
    lines = []
    if args.cliques:
        for c in list_max_cliques(g.underlying() if g.directed else g, args.min_size):
            lines.append(" ".join(map(str, sorted(c))))
    elif args.bicliques:
        for b in list_max_bicliques(g.underlying() if g.directed else g):
            lines.append(f"{' '.join(map(str, sorted(b.side_a)))} | {' '.join(map(str, sorted(b.side_b)))}")
    else:
        if not g.directed:
            raise UsageError("--directed-bicliques needs a directed graph")
        for b in directed_bicliques(g):
            lines.append(f"{' '.join(map(str, sorted(b.side_a)))} | {' '.join(map(str, sorted(b.side_b)))}")
    _write("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _load_graph(args.file)
    r = reduce_graph(g)
    _write(r.dumps() + "\n", args.output)
    if not r.succeeded:
        print("heuristic failed: no admissible clique or biclique is left", file=sys.stderr)
    return EXIT_OK if r.succeeded else EXIT_FAIL


def cmd_draw(args) -> int:
    text = _read(args.file)
    labels: dict[int, str] = {}
    if args.construction == "interval":
        network = build_interval_track(gc.parse_intervals(text))
    elif args.construction == "cograph":
        expr = gc.parse_cograph(text.strip())
        network = build_cograph_track(expr)
        labels = dict(enumerate(gc.cograph_leaves(expr)))
    elif args.construction in ("cotree", "cocycle"):
        g = parse_graph(text)
        labels = dict(g.labels)
        network = build_cotree_track(g) if args.construction == "cotree" else build_cocycle_track_for(g)
    else:
        g = parse_graph(text)
        labels = dict(g.labels)
        r = reduce_graph(g)
        if not r.succeeded:
            name = args.file if args.file != "-" else "<file>"
            print(
                f"heuristic failed after {len(r.steps)} replacements; "
                f"the graph may still be confluent, try `confluent check {name} --oracle`",
                file=sys.stderr,
            )
            return EXIT_FAIL
        network = from_reduction(r)
    if args.network:
        Path(args.network).write_text(network.dumps() + "\n", encoding="utf-8")
    options = RenderOptions(width=args.size, height=args.size, labels=not args.no_labels)
    _write(draw_network(network, options, labels), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="confluent", description="Confluent drawings of non-planar graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a named graph family as an edge list")
    gen.add_argument("family", choices=sorted(gc.FAMILIES + ("bipartite",)))
    gen.add_argument("params", nargs="*")
    gen.add_argument("-o", "--output")
    gen.add_argument("--source", action="store_true", help="emit the interval model or cograph expression instead")
    gen.set_defaults(func=cmd_generate)

    chk = sub.add_parser("check", help="planarity test or exhaustive confluence search")
    mode = chk.add_mutually_exclusive_group(required=True)
    mode.add_argument("--planar", action="store_true")
    mode.add_argument("--oracle", action="store_true")
    chk.add_argument("file")
    chk.add_argument("--max-states", type=int, default=Budget.max_states)
    chk.add_argument("--max-depth", type=int, default=Budget.max_depth)
    chk.add_argument("--witness", help="write the reduction log here when one is found")
    chk.set_defaults(func=cmd_check)

    en = sub.add_parser("enumerate", help="list maximal cliques or bicliques")
    what = en.add_mutually_exclusive_group(required=True)
    what.add_argument("--cliques", action="store_true")
    what.add_argument("--bicliques", action="store_true")
    what.add_argument("--directed-bicliques", action="store_true")
    en.add_argument("file")
    en.add_argument("--min-size", type=int, default=1)
    en.add_argument("-o", "--output")
    en.set_defaults(func=cmd_enumerate)

    red = sub.add_parser("reduce", help="run the clique/biclique replacement heuristic")
    red.add_argument("file")
    red.add_argument("-o", "--output")
    red.set_defaults(func=cmd_reduce)

    dr = sub.add_parser("draw", help="render a confluent drawing as SVG")
    dr.add_argument("file", help="input file, or - for stdin")
    dr.add_argument("-o", "--output")
    dr.add_argument("--construction", choices=["interval", "cotree", "cograph", "cocycle"])
    dr.add_argument("--network", help="also write the track network as JSON")
    dr.add_argument("--size", type=float, default=640.0)
    dr.add_argument("--no-labels", action="store_true")
    dr.set_defaults(func=cmd_draw)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, TrackError, ValueError) as exc:
        print(f"confluent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
