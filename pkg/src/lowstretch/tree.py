"""Rooted spanning trees (and forests) over a graph's vertices."""
from __future__ import annotations

from collections import defaultdict, deque

from .errors import InvalidTreeError, PreconditionError


class SpanningTree:
    """Parent-pointer tree.

    ``parent`` maps every non-root vertex to ``(parent, edge_length)``.
    Several roots make it a forest (one tree per connected component).
    """

    def __init__(self, roots, parent):
        self.roots = tuple(roots)
        self.parent = dict(parent)
        self._dist = None
        self._depth = None

    @property
    def root(self):
        return self.roots[0]

    @classmethod
    def from_edges(cls, roots, edges, vertices=()):
        """Orient an undirected edge list ``(u, v, length)`` away from ``roots``."""
        roots = tuple(roots)
        nbrs = defaultdict(list)
        for u, v, w in edges:
            nbrs[u].append((v, w))
            nbrs[v].append((u, w))
        parent = {}
        seen = set(roots)
        q = deque(roots)
        while q:
            u = q.popleft()
            for v, w in sorted(nbrs[u]):
                if v in seen:
                    continue
                seen.add(v)
                parent[v] = (u, w)
                q.append(v)
        everything = set(nbrs) | set(vertices) | seen
        if len(seen) != len(everything):
            missing = sorted(everything - seen)[:5]
            raise InvalidTreeError(f"edges do not connect {missing} to a root")
        if len(parent) != len(edges):
            raise InvalidTreeError("edge list contains a cycle")
        return cls(roots, parent)

    @property
    def vertices(self):
        return frozenset(self.parent) | frozenset(self.roots)

    def __len__(self):
        return len(self.parent) + len(self.roots)

    def edges(self):
        """Canonical ``(u, v, length)`` list with ``u < v``, sorted."""
        out = []
        for v, (p, w) in self.parent.items():
            out.append((p, v, w) if p < v else (v, p, w))
        out.sort()
        return out

    def _prepare(self):
        if self._dist is not None:
            return
        children = defaultdict(list)
        for v, (p, w) in self.parent.items():
            children[p].append((v, w))
        dist, depth = {}, {}
        for r in self.roots:
            dist[r], depth[r] = 0, 0
            stack = [r]
            while stack:
                u = stack.pop()
                for v, w in children[u]:
                    dist[v] = dist[u] + w
                    depth[v] = depth[u] + 1
                    stack.append(v)
        if len(dist) != len(self):
            raise InvalidTreeError("parent pointers contain a cycle")
        self._dist, self._depth = dist, depth

    def root_distance(self, v):
        self._prepare()
        return self._dist[v]

    def distance(self, u, v):
        """Length of the unique tree path between ``u`` and ``v``."""
        self._prepare()
        if u not in self._depth or v not in self._depth:
            raise PreconditionError(f"vertex {u if u not in self._depth else v} not in tree")
        du, dv = self._dist[u], self._dist[v]
        a, b = u, v
        while self._depth[a] > self._depth[b]:
            a = self.parent[a][0]
        while self._depth[b] > self._depth[a]:
            b = self.parent[b][0]
        while a != b:
            if a in self.parent and b in self.parent:
                a = self.parent[a][0]
                b = self.parent[b][0]
            else:
                raise PreconditionError(f"{u} and {v} lie in different trees of the forest")
        return du + dv - 2 * self._dist[a]

    def __eq__(self, other):
        return isinstance(other, SpanningTree) and self.roots == other.roots and self.parent == other.parent

    def __repr__(self):
        return f"SpanningTree(root={self.root}, size={len(self)})"


def tree_distance(t: SpanningTree, u, v):
    return t.distance(u, v)


def validate_spanning_tree(g, t: SpanningTree, vertices=None):
    """Raise ``InvalidTreeError`` unless ``t`` spans ``vertices`` using graph edges.

    ``vertices`` defaults to all of ``g``.  Edges must exist in ``g`` with the
    same length; the structure must be acyclic and reach every vertex.
    """
    target = frozenset(range(g.n)) if vertices is None else frozenset(vertices)
    if t.vertices != target:
        raise InvalidTreeError(
            f"tree covers {len(t.vertices)} vertices, expected {len(target)}")
    for v, (p, w) in t.parent.items():
        if not g.has_edge(p, v):
            raise InvalidTreeError(f"({p}, {v}) is not a graph edge")
        if not g.same(g.length(p, v), w):
            raise InvalidTreeError(f"({p}, {v}) has length {w}, graph says {g.length(p, v)}")
    t._prepare()  # detects cycles in the parent pointers
    if len(t.parent) != len(target) - len(t.roots):
        raise InvalidTreeError("wrong edge count")
