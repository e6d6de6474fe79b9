"""Carving one cone off the unassigned part of a cluster.

The anchor ``p`` is the vertex of ``Y`` with the largest ball of radius
``eps * Delta / 16`` (smallest growth rate chi).  The cone hangs off the
first ``X0 -> Y`` edge of the canonical shortest path from ``x0`` to ``p``,
and its radius comes from a capped fair-coin choice among ``N`` equal
subintervals of ``[eps/4, eps/2]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .cones import ConeContext, cone_ball
from .errors import InternalConsistencyError, PreconditionError
from .graph import as_subset, ball, memo, path_from, radius, sssp


@dataclass(frozen=True)
class GrowthRate:
    cluster_size: int
    ball_size: int
    anchor: int
    ball: frozenset

    @property
    def chi(self) -> Fraction:
        return Fraction(self.cluster_size, self.ball_size)


@dataclass(frozen=True)
class RadiusSample:
    r: float
    h: int
    N: int
    coin_trace: tuple
    eps: float

    @property
    def interval(self):
        w = (self.eps / 4) / self.N
        lo = self.eps / 4 + (self.h - 1) * w
        return lo, lo + w


class ConeCut(NamedTuple):
    cluster: frozenset
    portal: tuple  # (y, x): y on the central side, x the cone's apex
    sample: RadiusSample
    growth: GrowthRate


BIT = ("bit",)


def interval_count(chi) -> int:
    """max(1, ceil(2 log2 chi)), i.e. the least N >= 1 with 2**N >= chi**2."""
    if isinstance(chi, int):
        a, b = chi * chi, 1
    else:
        chi = Fraction(chi)
        a, b = chi.numerator ** 2, chi.denominator ** 2
    if a < b:
        raise PreconditionError("growth rate must be at least 1")
    n = max(0, a.bit_length() - b.bit_length() - 1)
    while (b << n) < a:
        n += 1
    return max(1, n)


def sample_truncated_radius(chi, eps, rng, scale=1) -> RadiusSample:
    """``scale`` is the factor the caller multiplies ``r`` by (Delta); it only
    labels the draw for :mod:`replay` and does not affect the sample."""
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    N = interval_count(chi)
    note = getattr(rng, "note", None)
    h = 1
    coins = []
    while h < N:
        bit = rng.getrandbits(1)
        if note:
            note(BIT, bit)
        head = bit == 1
        coins.append(head)
        if not head:
            break
        h += 1
    w = (eps / 4) / N
    lo = eps / 4 + (h - 1) * w
    r = min(lo + w * rng.random(), eps / 2)
    if note:
        note(("u", lo, w, eps / 2, scale), math.floor(r * scale))
    return RadiusSample(r, h, N, tuple(coins), eps)


def _threshold_key(g, r):
    # exact lengths: an integer threshold f(z) <= r iff f(z) <= floor(r)
    return math.floor(r) if g.exact else None


def crossing_edge(g, ambient, root_dist, x0, X0, Y, target):
    """First X0 -> Y edge on the canonical shortest path from ``x0`` to ``target``."""
    path = path_from(g, ambient, root_dist.dist, x0, target)
    for i, v in enumerate(path):
        if v in Y:
            break
    else:
        raise InternalConsistencyError(f"path to {target} never enters Y")
    y = path[i - 1]
    if y not in X0:
        raise InternalConsistencyError(f"portal tail {y} is not in the central ball")
    if any(u not in Y for u in path[i:]):
        raise InternalConsistencyError(f"path to {target} leaves Y after entering it")
    return y, v


def growth_rate(g, X, Y, eps, Delta):
    """Vertex of ``Y`` whose ``eps*Delta/16`` ball inside ``Y`` is largest."""
    rad = eps * Delta / 16
    key = ("growth", Y, len(X), _threshold_key(g, rad) if g.exact else rad)

    def compute():
        best = None
        for z in sorted(Y):
            b = ball(g, Y, z, rad)
            if best is None or len(b) > len(best[1]):
                best = (z, b)
        return GrowthRate(len(X), len(best[1]), best[0], best[1])

    return memo(g, Y, key, compute, size=len(Y))


def select_portal(g, X, x0, X0, Y, eps, *, Delta=None, dist_x0=None):
    """Returns ``(p, y, x, growth)``.

    ``Delta`` defaults to ``rad_{x0}(X)``; pass it explicitly to keep the
    radius of the cluster at partition entry while ``Y`` shrinks.
    """
    X, X0, Y = as_subset(g, X), as_subset(g, X0), as_subset(g, Y)
    if not X0 or not Y:
        raise PreconditionError("central part and remainder must be nonempty")
    if X0 & Y:
        raise PreconditionError("central part and remainder overlap")
    if Delta is None:
        Delta = radius(g, X, x0)
    gr = growth_rate(g, X, Y, eps, Delta)
    ambient = X0 | Y
    if dist_x0 is None:
        dist_x0 = sssp(g, ambient, x0)
    y, x = crossing_edge(g, ambient, dist_x0, x0, X0, Y, gr.anchor)
    return gr.anchor, y, x, gr


def cone_set(g, ctx: ConeContext, r):
    """Cone ball, memoised on exact graphs by the integer part of the radius."""
    if not g.exact:
        return cone_ball(ctx, r)
    k = math.floor(r)
    key = ("cone", ctx.ambient, ctx.inner, ctx.root, ctx.apex, k)
    return memo(g, ctx.ambient, key, lambda: cone_ball(ctx, k), size=len(ctx.inner))


def cut_cone(g, X, x0, X0, Y, Delta, eps, rng) -> ConeCut:
    X0, Y = as_subset(g, X0), as_subset(g, Y)
    ambient = X0 | Y
    dist_x0 = sssp(g, ambient, x0)
    p, y, x, gr = select_portal(g, X, x0, X0, Y, eps, Delta=Delta, dist_x0=dist_x0)
    sample = sample_truncated_radius(gr.chi, eps, rng, scale=Delta)
    ctx = ConeContext.build(g, ambient, Y, x0, x, root_dist=dist_x0)
    Xj = cone_set(g, ctx, sample.r * Delta)
    return ConeCut(Xj, (y, x), sample, gr)
