"""Extensions for graphs with arbitrary positive lengths.

Two tools:

* portal splitting: an added vertex ``y'`` subdivides the portal edge
  ``(y, x)`` so that ``y'`` sits exactly at distance ``rad(X0)`` from the
  center.  The host edge stays in the working graph as a parallel route of
  the same length, so no distance anywhere changes and cached distance
  maps stay valid.
* short-edge contraction: edges shorter than ``c * Delta / n`` are merged
  into supernodes before a level is cut.
"""
from __future__ import annotations

from collections import defaultdict

from .errors import InternalConsistencyError, PreconditionError
from .graph import TOL, Graph, as_subset
from .tree import SpanningTree


class AugmentedGraph(Graph):
    """A graph that can grow added portal vertices during one build."""

    def __init__(self, base: Graph):
        self.base = base
        self.n = base.n
        self.adj = base.adj          # copied on first write
        self._len = base._len
        self._own = False
        self.edges = base.edges
        self.exact = base.exact
        self.unit = base.unit
        self.min_length = base.min_length
        self.vertex_set = base.vertex_set
        self.labels = base.labels
        self._cache = {}
        self._cache_size = 0
        self.imaginary = {}          # id -> (y, x, a, b): a from y, b from x

    def _cache_for(self, subset):
        if self.n == self.base.n or max(subset) < self.base.n:
            return self.base._cache_for(subset)
        return self

    def is_imaginary(self, v):
        return v >= self.base.n

    def add_point(self, y, x, a):
        """New vertex on edge ``(y, x)`` at distance ``a`` from ``y``."""
        if y >= self.base.n or x >= self.base.n:
            raise PreconditionError("added points never subdivide added edges")
        w = self.base.length(y, x)
        b = w - a
        if not (a > 0 and b > 0):
            raise PreconditionError(f"split lengths ({a}, {b}) must both be positive")
        if not self._own:
            self.adj = list(self.adj)
            self._len = dict(self._len)
            self.edges = list(self.edges)
            self._own = True
        v = self.n
        self.n += 1
        self.adj.append(tuple(sorted(((y, a), (x, b)))))
        self.adj[y] = tuple(sorted(self.adj[y] + ((v, a),)))
        self.adj[x] = tuple(sorted(self.adj[x] + ((v, b),)))
        self._len[(y, v)] = a
        self._len[(x, v)] = b
        self.edges.extend([(y, v, a), (x, v, b)])
        self.exact = self.exact and isinstance(a, int) and isinstance(b, int)
        self.min_length = min(self.min_length, a, b)
        self.vertex_set = frozenset(range(self.n))
        self.imaginary[v] = (y, x, a, b)
        return v


def split_portal(ag: AugmentedGraph, X0, y, x, target, *, root_distance=None):
    """Put the portal tail at distance ``target`` from the center.

    Returns the new vertex, or ``y`` itself when ``target`` already equals
    ``d(x0, y)``.  ``root_distance`` is ``d_{X0}(x0, y)``.
    """
    if y not in X0:
        raise PreconditionError("portal tail must lie in the central ball")
    if root_distance is None:
        raise PreconditionError("need the distance from the center to the portal tail")
    w = ag.length(y, x)
    a = target - root_distance
    if ag.same(a, 0):
        return y
    if a < 0 or not ag.leq(a, w):
        raise PreconditionError(f"target {target} is off the edge ({y}, {x})")
    if ag.same(a, w):
        # only reachable through rounding; the apex itself is at the target
        return y
    return ag.add_point(y, x, a)


class Contraction:
    """Supernodes from merging short edges inside a cluster."""

    def __init__(self, g, X, threshold, supernode, members, graph, lifted):
        self.g = g
        self.X = X
        self.threshold = threshold
        self.supernode = supernode      # original vertex -> supernode id
        self.members = members          # supernode id -> frozenset
        self.graph = graph              # contracted Graph on supernode ids
        self.lifted = lifted            # (s, t) with s < t -> all original edges between them

    def lift(self, S):
        out = set()
        for s in S:
            out |= self.members[s]
        return frozenset(out)

    def lift_portal(self, hy, hx, dist_x0):
        """Actual edge between two supernodes minimising d(x0, y) + len."""
        key = (hy, hx) if hy < hx else (hx, hy)
        best = None
        for u, v, w in self.lifted[key]:
            y, x = (u, v) if self.supernode[u] == hy else (v, u)
            cand = (dist_x0[y] + w, x, y)
            if best is None or cand < best:
                best = cand
        return best[2], best[1]

    def short_edges(self):
        out = []
        for u, v, w in self.g.edges:
            if u in self.X and v in self.X and self.supernode[u] == self.supernode[v] \
                    and w < self.threshold:
                out.append((u, v, w))
        return out


def contract_short_edges(g, X, Delta, c, n=None):
    """Merge edges shorter than ``c * Delta / n`` inside ``X``.

    Returns ``None`` when nothing is short enough (identity mapping).
    """
    X = as_subset(g, X)
    n = g.n if n is None else n
    threshold = c * Delta / n
    parent = {v: v for v in X}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merged = False
    for v in X:
        for u, w in g.adj[v]:
            if u > v and u in X and w < threshold:
                a, b = find(u), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
                    merged = True
    if not merged:
        return None
    groups = defaultdict(set)
    for v in X:
        groups[find(v)].add(v)
    reps = sorted(groups)
    sid = {r: i for i, r in enumerate(reps)}
    supernode = {v: sid[find(v)] for v in X}
    members = [frozenset(groups[r]) for r in reps]
    best = {}
    lifted = defaultdict(list)
    for v in X:
        for u, w in g.adj[v]:
            if u > v and u in X:
                s, t = supernode[v], supernode[u]
                if s == t:
                    continue
                key = (s, t) if s < t else (t, s)
                lifted[key].append((v, u, w))
                if key not in best or w < best[key]:
                    best[key] = w
    H = Graph(len(reps), [(s, t, w) for (s, t), w in sorted(best.items())])
    return Contraction(g, X, threshold, supernode, members, H, dict(lifted))


def _expand_augmented(t: SpanningTree, ag: AugmentedGraph) -> SpanningTree:
    base = ag.base
    incident = defaultdict(list)
    kept = []
    for u, v, w in t.edges():
        if ag.is_imaginary(u) or ag.is_imaginary(v):
            p = u if ag.is_imaginary(u) else v
            incident[p].append((u, v, w))
        else:
            kept.append((u, v, w))
    for p, es in incident.items():
        y, x, a, b = ag.imaginary[p]
        if len(es) == 2:
            kept.append((min(y, x), max(y, x), base.length(y, x)))
        elif len(es) != 1:
            raise InternalConsistencyError(f"added vertex {p} has tree degree {len(es)}")
    for root in t.roots:
        if ag.is_imaginary(root):
            raise InternalConsistencyError("tree rooted at an added vertex")
    verts = [v for v in t.vertices if not ag.is_imaginary(v)]
    return SpanningTree.from_edges(t.roots, kept, vertices=verts)


def _expand_contracted(t: SpanningTree, ctr: Contraction, root=None) -> SpanningTree:
    from .graph import shortest_path_tree

    g = ctr.g
    edges = []
    for u, v, _ in t.edges():
        key = (u, v) if u < v else (v, u)
        a, b, w = min(ctr.lifted[key], key=lambda e: (e[2], min(e[0], e[1]), max(e[0], e[1])))
        edges.append((min(a, b), max(a, b), w))
    # inside each supernode: a shortest-path tree over the contracted edges only
    short = Graph(g.n, ctr.short_edges())
    for S in ctr.members:
        if len(S) > 1:
            edges.extend(shortest_path_tree(short, S, min(S)).edges())
    if root is None:
        root = min(ctr.members[t.root])
    return SpanningTree.from_edges((root,), edges, vertices=ctr.X)


def expand_tree(t: SpanningTree, ag=None, root=None) -> SpanningTree:
    """Map a tree on a working graph back to the graph it was derived from."""
    if ag is None:
        return t
    if isinstance(ag, AugmentedGraph):
        if not ag.imaginary:
            return t
        return _expand_augmented(t, ag)
    if isinstance(ag, Contraction):
        return _expand_contracted(t, ag, root)
    raise PreconditionError("nothing to expand against")
