"""Command-line driver: ``lowstretch {build,stretch,mc,audit,profile,gen}``."""
from __future__ import annotations

import argparse
import sys

from .errors import DisconnectedError, InvalidTreeError, ParseError, PreconditionError
from .formats import KINDS, WEIGHTS, dump_report, format_edges, format_graph, generate, parse_graph
from .harness import (audit_star_partition, audit_trace, decomposition_stretch_profile,
                      expected_stretch_mc, stretch_report)
from .hierarchy import build_low_stretch_tree
from .rng import Stream
from .schedule import Params
from .star import star_partition
from .tree import SpanningTree


def _add_params(p):
    p.add_argument("--mode", choices=("paper", "demo"), default="demo")
    p.add_argument("--schedule", choices=("basic", "iterated", "fixed"), default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--base-radius", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--root", default=None, help="root vertex (name as in the input file)")
    p.add_argument("--shuffle", action="store_true")
    p.add_argument("--random-root", action="store_true")
    p.add_argument("--per-component", action="store_true")
    p.add_argument("--contract", type=float, default=0.0, metavar="C",
                   help="contract edges shorter than C*Delta/n at every level (0 = off)")


def _add_io(p, graph=True):
    if graph:
        p.add_argument("graph", nargs="?", default="-", help="graph file ('-' = stdin)")
    p.add_argument("--format", choices=("edges", "dimacs"), default="edges")
    p.add_argument("--out", default="-")


def _params(args, g):
    flags = dict(seed=args.seed, per_component=args.per_component, shuffle=args.shuffle,
                 random_root=args.random_root, contraction=args.contract)
    if args.mode == "paper":
        sched = args.schedule or "basic"
        if sched == "fixed":
            raise PreconditionError("paper mode has no fixed-eps schedule")
        return Params.paper(n=g.n, schedule=sched, **flags)
    c = 2 if args.c is None else args.c
    c = int(c) if float(c).is_integer() else c
    eps = 0.5 if args.eps is None else args.eps
    br = args.base_radius
    br = int(br) if float(br).is_integer() else br
    return Params.demo(c=c, eps=eps, base_radius=br, schedule=args.schedule or "fixed",
                       t=args.t, **flags)


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _root(g, name):
    if name is None:
        return None
    labels = list(g.labels) if g.labels else [str(i) for i in range(g.n)]
    if name not in labels:
        raise PreconditionError(f"root {name!r} is not a vertex")
    return labels.index(name)


def _trace_summary(trace):
    levels = []
    for rec in trace.records:
        levels.append({"depth": rec.depth, "path": list(rec.path), "size": rec.size,
                       "Delta": rec.Delta, "eps": rec.eps, "r0": rec.r0,
                       "contracted": rec.contracted,
                       "cones": [[chi, N, h, r] for chi, N, h, r in rec.cones]})
    return {"levels": levels, "base_cases": len(trace.base_cases),
            "added_points": len(getattr(trace.graph, "imaginary", {}))}


def cmd_gen(args):
    g = generate(args.kind, args.size, seed=args.seed, p=args.p, weights=args.weights)
    _write(args.out, format_graph(g, args.format))
    return 0


def cmd_build(args):
    g = parse_graph(_read(args.graph), args.format)
    params = _params(args, g)
    tree, trace = build_low_stretch_tree(g, root=_root(g, args.root), params=params)
    _write(args.out, format_edges(tree.edges(), g.unit, g.labels))
    if args.report:
        rep = stretch_report(g, tree, seed=params.seed, params=params)
        body = {"stretch": rep.to_dict(), "trace": _trace_summary(trace),
                "labels": list(g.labels) if g.labels else None}
        _write(args.report, dump_report("build", body))
    return 0


def cmd_stretch(args):
    g = parse_graph(_read(args.graph), args.format)
    t = parse_graph(_read(args.tree), "edges")
    names = {lab: k for k, lab in enumerate(g.labels)}
    edges = []
    for u, v, w in t.edges:
        a, b = names.get(t.labels[u]), names.get(t.labels[v])
        if a is None or b is None:
            raise InvalidTreeError("tree vertex not in graph")
        edges.append((a, b, w))
    root = _root(g, args.root) or 0
    tree = SpanningTree.from_edges((root,), edges, vertices=range(g.n))
    rep = stretch_report(g, tree)
    _write(args.out, dump_report("stretch", rep.to_dict()))
    return 0


def cmd_mc(args):
    g = parse_graph(_read(args.graph), args.format)
    params = _params(args, g)
    est = expected_stretch_mc(g, params, args.trials, args.seed, workers=args.workers)
    body = est.to_dict()
    body["params"] = params.to_dict()
    _write(args.out, dump_report("mc", body))
    return 0


def cmd_audit(args):
    g = parse_graph(_read(args.graph), args.format)
    params = _params(args, g)
    if args.all_levels:
        _, trace = build_low_stretch_tree(g, root=_root(g, args.root), params=params)
        rep = audit_trace(trace)
    else:
        from .weighted import AugmentedGraph

        root = _root(g, args.root) or 0
        work = g if g.unit else AugmentedGraph(g)
        q = [v for v in range(g.n) if v != root]
        if params.shuffle:
            Stream(params.seed).child("queue", 0).rng().shuffle(q)
        dec = star_partition(work, work.vertex_set, root, q, params,
                             Stream(params.seed, "audit").rng(), augment=not g.unit)
        if dec is None:
            raise PreconditionError("contracted graph collapsed to a single vertex")
        rep = audit_star_partition(work, dec, params)
    _write(args.out, dump_report("audit", rep.to_dict()))
    return 0 if rep.ok else 2


def cmd_profile(args):
    g = parse_graph(_read(args.graph), args.format)
    params = _params(args, g)
    names = {lab: k for k, lab in enumerate(g.labels)}
    try:
        edge = (names[args.edge[0]], names[args.edge[1]])
    except KeyError:
        raise PreconditionError("edge endpoints must be vertices") from None
    prof = decomposition_stretch_profile(g, edge, params, args.trials, args.seed)
    _write(args.out, dump_report("profile", prof.to_dict()))
    return 0


def parser():
    ap = argparse.ArgumentParser(prog="lowstretch", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--weights", choices=WEIGHTS, default="unit")
    _add_io(p, graph=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build one tree; writes its edges")
    _add_io(p)
    _add_params(p)
    p.add_argument("--report", default=None, help="also write a JSON report here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stretch", help="stretch of a given tree")
    _add_io(p)
    p.add_argument("--tree", required=True, help="tree edge list")
    p.add_argument("--root", default=None)
    p.set_defaults(func=cmd_stretch)

    p = sub.add_parser("mc", help="Monte-Carlo expected stretch")
    _add_io(p)
    _add_params(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("audit", help="cut one level and check every invariant")
    _add_io(p)
    _add_params(p)
    p.add_argument("--all-levels", action="store_true", help="audit every level of a full build")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("profile", help="per-depth separation profile of one edge")
    _add_io(p)
    _add_params(p)
    p.add_argument("--edge", nargs=2, required=True, metavar=("U", "V"))
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_profile)
    return ap


def main(argv=None):
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, PreconditionError, DisconnectedError, InvalidTreeError, OSError) as e:
        print(f"lowstretch: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
