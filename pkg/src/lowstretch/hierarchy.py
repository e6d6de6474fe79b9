"""Recursive star partitioning and tree assembly."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DisconnectedError, PreconditionError
from .graph import as_subset, canonical_parent, components, memo, sssp
from .replay import cached_partition
from .rng import Stream, as_stream
from .schedule import Params
from .star import StarDecomposition, star_partition
from .tree import SpanningTree
from .weighted import AugmentedGraph, expand_tree


@dataclass
class LevelRecord:
    depth: int
    path: tuple
    size: int
    root: int
    Delta: float
    eps: float
    r0: float
    cones: list          # (chi, N, h, r) per cone; chi is None for the first cone
    contracted: bool
    dec: StarDecomposition


@dataclass
class BuildTrace:
    records: list = field(default_factory=list)
    base_cases: list = field(default_factory=list)   # (depth, path, cluster, center, radius)
    graph: object = None      # working graph (with any added portal points)
    root: int = None
    queue: tuple = ()
    params: Params = None

    def by_depth(self):
        out = {}
        for rec in self.records:
            out.setdefault(rec.depth, []).append(rec)
        return out


def _record(dec, depth, path):
    cones = []
    for j, s in enumerate(dec.radii):
        gr = dec.growth[j]
        cones.append((None if gr is None else gr.chi, s.N, s.h, s.r))
    return LevelRecord(depth, path, len(dec.X), dec.x0, dec.Delta, dec.eps, dec.r0,
                       cones, dec.contracted, dec)


def _spt_parents(g, X, x0, dm):
    def compute():
        out = {}
        for v in dm.dist:
            if v != x0:
                p = canonical_parent(g, X, dm.dist, v)
                out[v] = (p, g.length(p, v))
        return out

    return memo(g, X, ("spt", X, x0), compute, size=len(X))


def hierarchical_star_partition(g, X, x0, Q, params: Params, rng=None, trace=None,
                                augment=None, n_total=None) -> SpanningTree:
    """Tree on ``X`` rooted at ``x0``.

    Small-radius clusters get an exact shortest-path tree; larger ones are
    star-partitioned and each piece handled the same way, joined back by
    its portal edge.  Each cluster draws from its own stream, derived from
    ``rng`` and the cluster's index path, so the result does not depend on
    the order siblings are processed in.
    """
    X = as_subset(g, X)
    stream = as_stream(rng, params.seed)
    if augment is None:
        augment = isinstance(g, AugmentedGraph)
    threshold = params.base_threshold()
    parent = {}
    # child streams are derived lazily: base-case clusters never draw
    stack = [(X, x0, tuple(Q), stream, (), 0, ())]
    while stack:
        C, c0, q, st, idx, depth, path = stack.pop()
        dm = sssp(g, C, c0)
        if not dm.connected:
            raise DisconnectedError(f"cluster of size {len(C)} is not connected from {c0}")
        rad = dm.eccentricity()
        dec = None
        if len(C) > 1 and not g.leq(rad, threshold):
            if idx:
                st = st.child(*idx)
            if trace is None and g.unit:
                dec = cached_partition(g, C, c0, q, params, st.rng())
            else:
                dec = star_partition(g, C, c0, q, params, st.rng(), augment=augment,
                                     n_total=n_total)
        if dec is None:
            parent.update(_spt_parents(g, C, c0, dm))
            if trace is not None:
                trace.base_cases.append((depth, path, C, c0, rad))
            continue
        if trace is not None:
            trace.records.append(_record(dec, depth, path))
        for y, x in dec.portals:
            parent[x] = (y, g.length(y, x))
        centers = dec.centers
        for j in range(len(dec.clusters) - 1, -1, -1):
            stack.append((dec.clusters[j], centers[j], dec.queues[j], st, (j,),
                          depth + 1, path + (j,)))
    return SpanningTree((x0,), parent)


def _pick_root(n, params, stream, root):
    if root is not None:
        if not (0 <= root < n):
            raise PreconditionError(f"root {root} outside graph")
        return root
    if params.random_root:
        return stream.child("root").rng().randrange(n)
    return 0


def build_low_stretch_tree(g, root=None, params: Params = None, rng=None, *, record=True):
    """Returns ``(tree, trace)``.  ``rng`` may be None (use ``params.seed``), an int, or a Stream.

    ``record=False`` skips the trace (returned as None), which lets unit
    graphs reuse cached partitions across calls; the tree is the same.
    """
    if params is None:
        params = Params()
    if g.n == 0:
        raise PreconditionError("empty graph")
    top = as_stream(rng, params.seed)
    root = _pick_root(g.n, params, top, root)
    comps = memo(g, g.vertex_set, ("components",), lambda: components(g), size=g.n)
    if len(comps) > 1 and not params.per_component:
        raise DisconnectedError(f"graph has {len(comps)} components")
    work = g if g.unit else AugmentedGraph(g)
    trace = BuildTrace(graph=work, params=params)
    sink = trace if record else None
    parent, roots = {}, []
    for k, comp in enumerate(comps):
        r = root if root in comp else min(comp)
        q = [v for v in sorted(comp) if v != r]
        if params.shuffle:
            top.child("queue", k).rng().shuffle(q)
        st = top.child("build") if len(comps) == 1 else top.child("build", k)
        t = hierarchical_star_partition(work, comp, r, q, params, st, sink,
                                        augment=not g.unit, n_total=g.n)
        if r == root:
            roots.insert(0, r)
            trace.queue = tuple(q)
        else:
            roots.append(r)
        parent.update(t.parent)
    trace.root = root
    tree = SpanningTree(roots, parent)
    if isinstance(work, AugmentedGraph):
        tree = expand_tree(tree, work)
    return tree, (trace if record else None)
