"""One level of the decomposition: central ball, cones, and the child queues.

A cluster ``X`` with center ``x0`` and ordering ``Q`` (a permutation of
``X - {x0}``) is cut into a central ball ``X0`` and cones ``X1..Xm``.  Cone
``j`` hangs off ``X0`` through the portal edge ``(y_j, x_j)``.  The first
cone is anchored on the head of ``Q`` so that the tree path from ``x0`` to
``Q[0]`` ends up a shortest path (the "highway").
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .cone_cut import (GrowthRate, RadiusSample, crossing_edge, cone_set, cut_cone,
                       sample_truncated_radius)
from .cones import ConeContext
from .errors import InternalConsistencyError, PreconditionError
from .graph import as_subset, ball, memo, radius, sssp
from .schedule import epsilon_for


@dataclass
class StarDecomposition:
    X: frozenset
    x0: int
    Q: tuple
    clusters: list                 # X0, X1, ..., Xm
    portals: list                  # (y_j, x_j) for j = 1..m
    r0: float
    radii: list                    # RadiusSample for j = 1..m
    growth: list                   # GrowthRate for j >= 2 (None for the first cone)
    Delta: float
    eps: float
    c: float
    anchor: int                    # vertex the first cone was aimed at
    queues: list = None            # Q0, Q1, ..., Qm
    head: int = None
    ball_queue: tuple = ()
    fat_queue: tuple = ()
    reg_queue: tuple = ()
    fat_triggers: tuple = ()       # (i, j, A) per fat insertion, in order
    added: tuple = ()              # imaginary vertices that joined X0 at this level
    splits: dict = field(default_factory=dict)   # j -> (old portal tail, new one)
    reused: frozenset = frozenset()  # cones whose portal already touched an added vertex
    contracted: bool = False

    @property
    def m(self):
        return len(self.portals)

    @property
    def centers(self):
        return [self.x0] + [x for _, x in self.portals]

    @property
    def z1(self):
        return self.Q[0] if self.Q else None

    @property
    def cluster(self):
        """All vertices of this level, including any added portal points."""
        return self.X | frozenset(self.added)


class QueueSet(NamedTuple):
    queues: list
    head: int
    ball: tuple
    fat: tuple
    reg: tuple
    fat_triggers: tuple


def _ball_set(g, X, x0, r):
    if not g.exact:
        return ball(g, X, x0, r)
    k = math.floor(r)
    return memo(g, X, ("ball", X, x0, k), lambda: ball(g, X, x0, k), size=len(X))


def cut_central_ball(g, X, x0, params, rng, Delta=None, c=None):
    X = as_subset(g, X)
    if Delta is None:
        Delta = radius(g, X, x0)
    if not Delta > 0:
        raise PreconditionError("cluster radius must be positive")
    c = params.c if c is None else c
    w = Delta / (16 * c)
    r0 = w + w * rng.random()
    note = getattr(rng, "note", None)
    if note:
        note(("u", w, w, math.inf, 1), math.floor(r0))
    return _ball_set(g, X, x0, r0), r0


def cut_first_cone(g, X, x0, X0, Y0, q_head, Delta, eps, rng):
    """Cone aimed at ``q_head``; its radius is uniform on ``[eps/4, eps/2]``."""
    if not Y0:
        raise PreconditionError("nothing left to put in a cone")
    if q_head not in Y0:
        raise PreconditionError("first-cone anchor must be unassigned")
    ambient = X0 | Y0
    dist_x0 = sssp(g, ambient, x0)
    y1, x1 = crossing_edge(g, ambient, dist_x0, x0, X0, Y0, q_head)
    sample = sample_truncated_radius(1, eps, rng, scale=Delta)
    ctx = ConeContext.build(g, ambient, Y0, x0, x1, root_dist=dist_x0)
    return cone_set(g, ctx, sample.r * Delta), (y1, x1), sample


def _cut_star(g, X, x0, Q, Delta, eps, c, rng, params) -> StarDecomposition:
    X0, r0 = cut_central_ball(g, X, x0, params, rng, Delta=Delta, c=c)
    Y = X - X0
    anchor = Q[0] if Q[0] in Y else next(q for q in Q if q in Y)
    X1, portal, s1 = cut_first_cone(g, X, x0, X0, Y, anchor, Delta, eps, rng)
    clusters, portals, radii, growth = [X0, X1], [portal], [s1], [None]
    Y = Y - X1
    while Y:
        cut = cut_cone(g, X, x0, X0, Y, Delta, eps, rng)
        if not cut.cluster or not cut.cluster <= Y:
            raise InternalConsistencyError("cone is empty or leaves the unassigned set")
        clusters.append(cut.cluster)
        portals.append(cut.portal)
        radii.append(cut.sample)
        growth.append(cut.growth)
        Y = Y - cut.cluster
    return StarDecomposition(X, x0, tuple(Q), clusters, portals, r0, radii, growth,
                             Delta, eps, c, anchor)


def build_queues(dec: StarDecomposition, Q) -> QueueSet:
    clusters, portals, x0 = dec.clusters, dec.portals, dec.x0
    owner = {}
    for j, C in enumerate(clusters):
        for v in C:
            owner[v] = j
    m = len(portals)
    sub = [[] for _ in range(m + 1)]
    first = [None] * (m + 1)
    counts = [0] * (m + 1)
    ball_q = []
    fat_q, fat_seen, triggers = [], set(), []
    for i, z in enumerate(Q, 1):
        j = owner.get(z)
        if j is None:
            raise PreconditionError(f"queue element {z} is outside the cluster")
        if j == 0:
            ball_q.append(z)
            continue
        if z != portals[j - 1][1]:
            sub[j].append(z)
        if first[j] is None:
            first[j] = i
        counts[j] += 1
        y = portals[j - 1][0]
        if counts[j] * counts[j] >= i and y not in fat_seen:
            fat_seen.add(y)
            fat_q.append(y)
            A = frozenset(z2 for z2 in Q[:i] if owner[z2] == j)
            triggers.append((i, j, A))
    # a cone whose only Q-free vertex is its apex never happens (apexes come from Q)
    order = sorted(range(1, m + 1), key=lambda j: (first[j] if first[j] is not None else math.inf, j))
    reg_q, seen = [], set()
    for j in order:
        y = portals[j - 1][0]
        if y not in seen:
            seen.add(y)
            reg_q.append(y)

    z1 = Q[0] if len(Q) else None
    if m == 0 or (z1 is not None and owner[z1] == 0):
        head = z1
    else:
        head = portals[0][0]
    emitted = {x0}
    Q0 = []
    if head is not None and head not in emitted:
        emitted.add(head)
        Q0.append(head)
    streams = [ball_q, fat_q, reg_q]
    pos = [0, 0, 0]
    live = True
    while live:
        live = False
        for k in range(3):
            s = streams[k]
            p = pos[k]
            while p < len(s) and s[p] in emitted:
                p += 1
            if p < len(s):
                emitted.add(s[p])
                Q0.append(s[p])
                p += 1
                live = True
            pos[k] = p
    if len(Q0) != len(clusters[0]) - 1 or set(Q0) != clusters[0] - {x0}:
        raise InternalConsistencyError("central queue is not a permutation of X0 - {x0}")
    queues = [tuple(Q0)] + [tuple(s) for s in sub[1:]]
    return QueueSet(queues, head, tuple(ball_q), tuple(fat_q), tuple(reg_q), tuple(triggers))


def _attach_queues(dec, Q):
    qs = build_queues(dec, Q)
    dec.queues = qs.queues
    dec.head, dec.ball_queue, dec.fat_queue, dec.reg_queue = qs.head, qs.ball, qs.fat, qs.reg
    dec.fat_triggers = qs.fat_triggers
    return dec


def _split_portals(g, dec):
    """Move each portal tail onto its edge at distance rad(X0) from x0."""
    from .weighted import split_portal

    X0 = dec.clusters[0]
    d0 = sssp(g, X0, dec.x0)
    target = d0.eccentricity()
    added, reused = [], set()
    for j, (y, x) in enumerate(dec.portals, 1):
        if g.is_imaginary(y) or g.is_imaginary(x):
            reused.add(j)
            continue
        y2 = split_portal(g, X0, y, x, target, root_distance=d0[y])
        if y2 != y:
            dec.portals[j - 1] = (y2, x)
            dec.splits[j] = (y, y2)
            added.append(y2)
    if added:
        dec.clusters[0] = X0 | frozenset(added)
    dec.added = tuple(added)
    dec.reused = frozenset(reused)


def _contracted_star(g, X, x0, Q, Delta, eps, rng, params, n_total):
    from .weighted import contract_short_edges

    ctr = contract_short_edges(g, X, Delta, params.contraction, n=n_total)
    if ctr is None:
        return None
    H = ctr.graph
    if H.n == 1:
        return "base"
    hx0 = ctr.supernode[x0]
    hQ, seen = [], {hx0}
    for q in Q:
        s = ctr.supernode[q]
        if s not in seen:
            seen.add(s)
            hQ.append(s)
    hdec = _cut_star(H, H.vertex_set, hx0, tuple(hQ), radius(H, H.vertex_set, hx0),
                     eps, params.c, rng, params)
    dx = sssp(g, X, x0)
    clusters = [ctr.lift(C) for C in hdec.clusters]
    portals = [ctr.lift_portal(hy, hx, dx) for hy, hx in hdec.portals]
    dec = StarDecomposition(X, x0, tuple(Q), clusters, portals, hdec.r0, hdec.radii,
                            hdec.growth, Delta, eps, params.c, hdec.anchor, contracted=True)
    return dec


def star_partition(g, X, x0, Q, params, rng, augment=None, n_total=None):
    """Cut ``X`` once.  ``augment`` (bool) enables portal splitting on weighted graphs.

    Returns ``None`` when a contracted level collapses to a single supernode
    (the caller then treats the cluster as a base case).
    """
    X = as_subset(g, X)
    Q = tuple(Q)
    if x0 not in X:
        raise PreconditionError("center must lie in the cluster")
    if len(Q) != len(X) - 1 or set(Q) != X - {x0}:
        raise PreconditionError("queue must be a permutation of X - {x0}")
    Delta = radius(g, X, x0)
    if not Delta > 0:
        raise PreconditionError("cluster radius must be positive")
    eps = epsilon_for(len(X), params)
    dec = None
    if params.contraction > 0 and not g.unit:
        dec = _contracted_star(g, X, x0, Q, Delta, eps, rng, params, n_total or g.n)
        if dec == "base":
            return None
    if dec is None:
        dec = _cut_star(g, X, x0, Q, Delta, eps, params.c, rng, params)
        if augment:
            _split_portals(g, dec)
    return _attach_queues(dec, Q)
