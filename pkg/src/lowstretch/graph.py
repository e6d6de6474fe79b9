"""Undirected graphs with positive lengths and induced-subgraph distances.

Vertex sets are plain ``frozenset`` objects.  All distance queries take the
subset explicitly, so ``d_X`` for any cluster ``X`` is just
``sssp(g, X, source)``.
"""
from __future__ import annotations

import heapq
import math
from collections import deque

from .errors import DisconnectedError, PreconditionError
from .tree import SpanningTree

# absolute tolerance for comparisons when lengths are not all integers
TOL = 1e-9

_CACHE_BUDGET = 4_000_000  # total stored distance entries before a flush


def _normalize_length(w):
    if isinstance(w, bool):
        raise PreconditionError(f"edge length must be a number, got {w!r}")
    if isinstance(w, int):
        return w
    w = float(w)
    if w.is_integer():
        return int(w)
    return w


class Graph:
    """Immutable undirected graph on vertices ``0..n-1``.

    ``edges`` holds ``(u, v)`` or ``(u, v, length)`` items; a missing length
    means 1.  Integral lengths are stored as ``int`` so that graphs with
    integer lengths get exact arithmetic everywhere (``exact``); ``unit`` is
    set when every length is 1 and BFS replaces Dijkstra.
    """

    def __init__(self, n, edges=(), labels=None):
        n = int(n)
        if n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        adj = [[] for _ in range(n)]
        lengths = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1
            else:
                u, v, w = e
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            w = _normalize_length(w)
            if not (w > 0) or (isinstance(w, float) and not math.isfinite(w)):
                raise PreconditionError(f"edge ({u}, {v}) has nonpositive length {w!r}")
            key = (u, v) if u < v else (v, u)
            if key in lengths:
                raise PreconditionError(f"duplicate edge {key}")
            lengths[key] = w
            adj[u].append((v, w))
            adj[v].append((u, w))
        self.n = n
        self.adj = [tuple(sorted(a)) for a in adj]
        self._len = lengths
        self.edges = tuple(sorted((u, v, w) for (u, v), w in lengths.items()))
        self.exact = all(isinstance(w, int) for w in lengths.values())
        self.unit = self.exact and all(w == 1 for w in lengths.values())
        self.min_length = min(lengths.values()) if lengths else math.inf
        self.vertex_set = frozenset(range(n))
        self.labels = tuple(labels) if labels is not None else None
        self._cache = {}
        self._cache_size = 0

    @property
    def m(self):
        return len(self.edges)

    def neighbors(self, v):
        return self.adj[v]

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self._len

    def length(self, u, v):
        try:
            return self._len[(u, v) if u < v else (v, u)]
        except KeyError:
            raise PreconditionError(f"({u}, {v}) is not an edge") from None

    def leq(self, a, b):
        """``a <= b`` under the graph's arithmetic (exact or tolerant)."""
        if self.exact:
            return a <= b
        return a <= b + TOL

    def same(self, a, b):
        if self.exact:
            return a == b
        return abs(a - b) <= TOL

    def _cache_for(self, subset):
        return self

    def is_imaginary(self, v):
        return False

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        kind = "unit" if self.unit else ("int" if self.exact else "weighted")
        return f"Graph(n={self.n}, m={self.m}, {kind})"


class DistanceMap:
    """Distances from ``source`` inside the subgraph induced by ``subset``.

    Vertices of the subset that cannot be reached map to ``math.inf``.
    """

    __slots__ = ("source", "subset", "dist")

    def __init__(self, source, subset, dist):
        self.source = source
        self.subset = subset
        self.dist = dist

    def __getitem__(self, v):
        if v not in self.subset:
            raise KeyError(v)
        return self.dist.get(v, math.inf)

    def __contains__(self, v):
        return v in self.subset

    def reachable(self, v):
        return v in self.dist

    @property
    def connected(self):
        return len(self.dist) == len(self.subset)

    def items(self):
        return self.dist.items()

    def eccentricity(self):
        return max(self.dist.values())


def as_subset(g, subset) -> frozenset:
    if subset is None:
        return g.vertex_set
    if isinstance(subset, frozenset):
        return subset
    s = frozenset(subset)
    for v in s:
        if not (0 <= v < g.n):
            raise PreconditionError(f"vertex {v} outside graph")
    return s


def _bfs(g, subset, source, limit=math.inf):
    dist = {source: 0}
    q = deque([source])
    adj = g.adj
    while q:
        u = q.popleft()
        du = dist[u] + 1
        if du > limit:
            continue
        for v, _ in adj[u]:
            if v not in dist and v in subset:
                dist[v] = du
                q.append(v)
    return dist


def _dijkstra(g, subset, source, limit=math.inf):
    dist = {source: 0}
    done = set()
    heap = [(0, source)]
    adj = g.adj
    slack = 0 if g.exact else TOL
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in adj[u]:
            if v in done or v not in subset:
                continue
            nd = d + w
            if nd > limit + slack:
                continue
            old = dist.get(v)
            if old is None or nd < old:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def memo(g, subset, key, compute, size=1):
    """Per-graph memo for pure functions of an induced subgraph.

    ``subset`` decides which cache owns the entry (an augmented graph shares
    its base graph's cache for subsets without added vertices).  ``size``
    is a rough cost estimate used for the flush budget.
    """
    owner = g._cache_for(subset)
    cache = owner._cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    val = compute()
    if owner._cache_size > _CACHE_BUDGET:
        cache.clear()
        owner._cache_size = 0
    cache[key] = val
    owner._cache_size += size
    return val


def sssp(g, subset, source) -> DistanceMap:
    """Exact shortest-path distances from ``source`` within ``subset``."""
    s = as_subset(g, subset)
    if source not in s:
        raise PreconditionError(f"source {source} not in subset")
    owner = g._cache_for(s)
    key = (s, source)
    hit = owner._cache.get(key)
    if hit is not None:
        return hit
    dist = _bfs(g, s, source) if g.unit else _dijkstra(g, s, source)
    dm = DistanceMap(source, s, dist)
    if owner._cache_size > _CACHE_BUDGET:
        owner._cache.clear()
        owner._cache_size = 0
    owner._cache[key] = dm
    owner._cache_size += len(dist)
    return dm


def radius(g, subset, center):
    dm = sssp(g, subset, center)
    if not dm.connected:
        raise DisconnectedError(f"subset is not connected from {center}")
    return dm.eccentricity()


def ball(g, subset, center, r) -> frozenset:
    """All subset vertices within induced distance ``r`` of ``center``."""
    if r < 0:
        raise PreconditionError("ball radius must be nonnegative")
    s = as_subset(g, subset)
    if center not in s:
        raise PreconditionError(f"center {center} not in subset")
    if not g.leq(g.min_length, r):
        return frozenset((center,))
    hit = g._cache_for(s)._cache.get((s, center))
    if hit is not None:
        leq = g.leq
        return frozenset(v for v, d in hit.dist.items() if leq(d, r))
    if g.unit:
        dist = _bfs(g, s, center, limit=r)
        return frozenset(dist)
    dist = _dijkstra(g, s, center, limit=r)
    return frozenset(v for v, d in dist.items() if g.leq(d, r))


def canonical_parent(g, subset, dist, v):
    """Lowest-id neighbour of ``v`` inside ``subset`` that lies on a shortest path.

    ``dist`` maps vertices to their distance from the search source.
    """
    dv = dist[v]
    same = g.same
    for u, w in g.adj[v]:  # sorted by neighbour id
        if u in subset:
            du = dist.get(u)
            if du is not None and same(du + w, dv):
                return u
    return None


def shortest_path(g, subset, u, v) -> list:
    s = as_subset(g, subset)
    if v not in s:
        raise PreconditionError(f"vertex {v} not in subset")
    dm = sssp(g, s, u)
    if not dm.reachable(v):
        raise DisconnectedError(f"{v} unreachable from {u}")
    return path_from(g, s, dm.dist, u, v)


def path_from(g, subset, dist, source, target) -> list:
    """Walk canonical parents from ``target`` back to ``source``."""
    path = [target]
    x = target
    while x != source:
        x = canonical_parent(g, subset, dist, x)
        if x is None:
            raise DisconnectedError(f"no shortest path back to {source}")
        path.append(x)
    path.reverse()
    return path


def shortest_path_tree(g, subset, root) -> SpanningTree:
    s = as_subset(g, subset)
    dm = sssp(g, s, root)
    if not dm.connected:
        raise DisconnectedError(f"subset is not connected from {root}")
    parent = {}
    for v in dm.dist:
        if v != root:
            p = canonical_parent(g, s, dm.dist, v)
            parent[v] = (p, g.length(p, v))
    return SpanningTree((root,), parent)


def components(g, subset=None) -> list:
    """Connected components of the induced subgraph, ordered by smallest vertex."""
    s = as_subset(g, subset)
    seen = set()
    out = []
    for v in sorted(s):
        if v in seen:
            continue
        comp = _bfs(g, s, v)
        seen.update(comp)
        out.append(frozenset(comp))
    return out
