"""Cone pseudo-metric and cone balls.

For ``inner`` ⊂ ``ambient``, a root ``x`` outside ``inner`` and an apex ``y``
inside it, each vertex ``u`` of ``inner`` gets the potential
``d_ambient(x, u) - d_inner(y, u)``; the cone distance is the absolute
difference of potentials.  A cone ball of radius ``r`` around the apex is
the set of ``z`` whose detour through the apex costs at most ``r``:
``d_ambient(x, y) + d_inner(y, z) - d_ambient(x, z) <= r``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionError
from .graph import DistanceMap, as_subset, sssp


@dataclass(frozen=True, eq=False)
class ConeContext:
    graph: object
    ambient: frozenset
    inner: frozenset
    root: int
    apex: int
    root_dist: DistanceMap
    apex_dist: DistanceMap

    @classmethod
    def build(cls, g, ambient, inner, root, apex, root_dist=None, apex_dist=None):
        """Validate the configuration and compute (or adopt) the two distance maps.

        ``root_dist`` may be a map over a superset of ``ambient`` when the
        caller knows distances from the root to ``inner`` agree (the
        star-partition invariant guarantees this for its own cones).
        """
        ambient = as_subset(g, ambient)
        inner = as_subset(g, inner)
        if not inner < ambient:
            raise PreconditionError("inner set must be a proper subset of the ambient set")
        if root not in ambient or root in inner:
            raise PreconditionError("root must lie in ambient \\ inner")
        if apex not in inner:
            raise PreconditionError("apex must lie in the inner set")
        if root_dist is None:
            root_dist = sssp(g, ambient, root)
        if apex_dist is None:
            apex_dist = sssp(g, inner, apex)
        return cls(g, ambient, inner, root, apex, root_dist, apex_dist)

    def potential(self, u):
        return self.root_dist.dist.get(u, math.inf) - self.apex_dist.dist.get(u, math.inf)

    def threshold(self, z):
        """Extra length paid by reaching ``z`` through the apex (inf if cut off)."""
        dz = self.apex_dist.dist.get(z)
        if dz is None:
            return math.inf
        rd = self.root_dist.dist
        return rd[self.apex] + dz - rd[z]


def cone_distance(ctx: ConeContext, u, v):
    if u not in ctx.inner or v not in ctx.inner:
        raise PreconditionError("cone distance is defined on the inner set only")
    if u == v:
        return 0
    reach = ctx.apex_dist.dist
    if u not in reach or v not in reach:
        return math.inf
    return abs(ctx.potential(u) - ctx.potential(v))


def cone_ball(ctx: ConeContext, r) -> frozenset:
    if r < 0:
        raise PreconditionError("cone radius must be nonnegative")
    g = ctx.graph
    rd = ctx.root_dist.dist
    base = rd[ctx.apex]
    leq = g.leq
    return frozenset(z for z, dz in ctx.apex_dist.dist.items() if leq(base + dz - rd[z], r))
