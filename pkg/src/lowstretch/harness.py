"""Measuring trees and auditing decompositions."""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cone_cut import interval_count
from .cones import ConeContext
from .errors import PreconditionError
from .graph import as_subset, sssp
from .hierarchy import build_low_stretch_tree
from .rng import Stream
from .schedule import Params, epsilon_for
from .tree import SpanningTree, validate_spanning_tree


# --- stretch ---------------------------------------------------------------

def graph_distance(g, u, v):
    if g.unit and g.has_edge(u, v):
        return 1
    return sssp(g, None, u)[v]


@dataclass
class StretchReport:
    per_edge: dict          # (u, v) -> d_T(u, v) / d_G(u, v)
    avg_stretch: float
    max_stretch: float
    radius_stretch: float   # max_z d_T(root, z) / rad_G(root)
    tree_edges: list
    seed: int = None
    params: dict = None

    def to_dict(self):
        return {
            "avg_stretch": self.avg_stretch,
            "max_stretch": self.max_stretch,
            "radius_stretch": self.radius_stretch,
            "per_edge": [[u, v, s] for (u, v), s in sorted(self.per_edge.items())],
            "tree_edges": [list(e) for e in self.tree_edges],
            "seed": self.seed,
            "params": self.params,
        }


def edge_stretches(g, t):
    out = {}
    for u, v, _ in g.edges:
        out[(u, v)] = t.distance(u, v) / graph_distance(g, u, v)
    return out


def stretch_report(g, t: SpanningTree, seed=None, params=None) -> StretchReport:
    validate_spanning_tree(g, t, vertices=t.vertices if len(t.roots) > 1 else None)
    per_edge = edge_stretches(g, t)
    vals = list(per_edge.values())
    avg = math.fsum(vals) / len(vals) if vals else 1.0
    mx = max(vals) if vals else 1.0
    root = t.root
    dm = sssp(g, None, root)
    rad = max(d for d in dm.dist.values())
    rs = max(t.root_distance(z) for z in dm.dist) / rad if rad > 0 else 1.0
    return StretchReport(per_edge, avg, mx, rs, t.edges(), seed,
                         params.to_dict() if isinstance(params, Params) else params)


# --- Monte Carlo -------------------------------------------------------------

@dataclass
class McEstimate:
    edges: list             # (u, v) in canonical order
    mean: list              # per-edge mean stretch
    stderr: list            # per-edge sample std / sqrt(trials)
    trials: int
    seed: int
    seed_schedule: str = "Stream(seed, 'mc', (k,)) for k in range(trials)"
    avg_mean: float = 0.0   # mean over trials of the tree's average stretch
    avg_stderr: float = 0.0
    distinct_trees: int = 0

    def per_edge(self):
        return dict(zip(self.edges, self.mean))

    def to_dict(self):
        return {
            "trials": self.trials,
            "seed": self.seed,
            "seed_schedule": self.seed_schedule,
            "avg_mean": self.avg_mean,
            "avg_stderr": self.avg_stderr,
            "distinct_trees": self.distinct_trees,
            "per_edge": [[u, v, m, s] for (u, v), m, s in zip(self.edges, self.mean, self.stderr)],
        }


def _count_trees(g, params, seed, ks):
    counts = Counter()
    for k in ks:
        t, _ = build_low_stretch_tree(g, params=params, rng=Stream(seed, "mc", (k,)), record=False)
        counts[tuple(t.edges())] += 1
    return counts


def expected_stretch_mc(g, params: Params, trials, seed, workers=1) -> McEstimate:
    """Per-edge mean stretch over ``trials`` independently seeded trees.

    Trees are tallied by identity and the statistics computed from the
    tallies in a fixed order, so the result does not depend on ``workers``.
    """
    if trials < 1:
        raise PreconditionError("need at least one trial")
    params = params or Params()
    ks = range(trials)
    if workers > 1:
        chunks = [ks[i::workers] for i in range(workers)]
        counts = Counter()
        with ProcessPoolExecutor(workers) as ex:
            for c in ex.map(_count_trees, [g] * workers, [params] * workers,
                            [seed] * workers, chunks):
                counts.update(c)
    else:
        counts = _count_trees(g, params, seed, ks)
    edges = [(u, v) for u, v, _ in g.edges]
    rows, weights = [], []
    for key in sorted(counts):
        t = SpanningTree.from_edges((key[0][0],) if key else (0,), key, vertices=range(g.n))
        st = edge_stretches(g, t)
        rows.append([st[e] for e in edges])
        weights.append(counts[key])
    S = np.array(rows, dtype=float).reshape(len(rows), len(edges))
    w = np.array(weights, dtype=float)
    mean, stderr = [], []
    for e in range(len(edges)):
        col = S[:, e]
        mu = math.fsum(col * w) / trials
        var = math.fsum(w * (col - mu) ** 2) / (trials - 1) if trials > 1 else 0.0
        mean.append(mu)
        stderr.append(math.sqrt(var / trials))
    if edges:
        avgs = S.mean(axis=1)
        amu = math.fsum(avgs * w) / trials
        avar = math.fsum(w * (avgs - amu) ** 2) / (trials - 1) if trials > 1 else 0.0
    else:
        amu, avar = 1.0, 0.0
    return McEstimate(edges, mean, stderr, trials, seed, avg_mean=amu,
                      avg_stderr=math.sqrt(avar / trials), distinct_trees=len(counts))


# --- audit -------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail="", skipped=False):
        self.checks.append(Check(name, bool(passed), detail, skipped))

    def skip(self, name, why):
        self.checks.append(Check(name, True, why, True))

    def to_dict(self):
        return {"ok": self.ok,
                "checks": [{"name": c.name, "passed": c.passed, "skipped": c.skipped,
                            "detail": c.detail} for c in self.checks]}


def _first_failure(items):
    for ok, msg in items:
        if not ok:
            return False, msg
    return True, ""


def audit_star_partition(g, dec, params: Params = None) -> AuditReport:
    """Re-derive every structural guarantee of one star partition from scratch."""
    rep = AuditReport()
    x0, Delta, eps, c = dec.x0, dec.Delta, dec.eps, dec.c
    clusters, portals, centers = dec.clusters, dec.portals, dec.centers
    added = frozenset(dec.added)
    whole = dec.X | added
    X0_orig = clusters[0] - added
    tol = 0 if g.exact else 1e-9

    # partition
    seen, dup = set(), None
    for C in clusters:
        for v in C:
            if v in seen:
                dup = v
            seen.add(v)
    rep.add("partition", dup is None and seen == whole,
            f"vertex {dup} in two clusters" if dup is not None else
            ("" if seen == whole else "clusters do not cover the cluster"))

    # strong diameter: connected induced subgraphs containing their centers
    items = []
    for j, C in enumerate(clusters):
        if centers[j] not in C:
            items.append((False, f"center {centers[j]} not in cluster {j}"))
            continue
        items.append((sssp(g, C, centers[j]).connected, f"cluster {j} is disconnected"))
    rep.add("strong_diameter", *_first_failure(items))

    # portals
    items = []
    for j, (y, x) in enumerate(portals, 1):
        items.append((y in clusters[0], f"portal tail {y} not in X0"))
        items.append((x in clusters[j], f"portal head {x} not in X{j}"))
        items.append((g.has_edge(y, x), f"({y}, {x}) is not an edge"))
    rep.add("portals", *_first_failure(items))

    # central radius
    if dec.contracted:
        rep.skip("central_radius", "contracted level")
    else:
        lo, hi = Delta / (16 * c), Delta / (8 * c)
        r0_ok = lo - 1e-12 <= dec.r0 <= hi + 1e-12
        rad0 = sssp(g, clusters[0], x0).eccentricity() if len(clusters[0]) > 1 else 0
        rep.add("central_radius", r0_ok and g.leq(rad0, dec.r0),
                f"r0={dec.r0}, rad(X0)={rad0}, interval=[{lo}, {hi}]")

    distance_exact = not dec.contracted
    # what is left after each cut keeps its distances from x0
    if distance_exact:
        dX = sssp(g, dec.X, x0).dist
        Y = dec.X - X0_orig
        items = []
        for j in range(1, len(clusters)):
            Y = Y - clusters[j]
            if not Y:
                break
            dj = sssp(g, X0_orig | Y, x0).dist
            for z in Y:
                dz = dj.get(z, math.inf)
                items.append((abs(dz - dX[z]) <= tol, f"after cone {j}: d({x0},{z}) {dz} != {dX[z]}"))
        rep.add("kept_distances", *_first_failure(items))
    else:
        rep.skip("kept_distances", "contracted level")

    # rad(X0) + d(y_j, x_j) + rad(X_j) <= (1 + eps) Delta
    if distance_exact:
        rad0 = sssp(g, clusters[0], x0).eccentricity()
        items = []
        for j, (y, x) in enumerate(portals, 1):
            if j in dec.reused:
                continue
            radj = sssp(g, clusters[j], x).eccentricity()
            total = rad0 + g.length(y, x) + radj
            items.append((g.leq(total, (1 + eps) * Delta),
                          f"cone {j}: {total} > (1+eps)*Delta = {(1 + eps) * Delta}"))
        rep.add("cone_radius", *_first_failure(items))
    else:
        rep.skip("cone_radius", "contracted level")

    # radius shrink: the strong form needs eps <= 1/(80c)
    if distance_exact and eps <= 1 / (80 * c):
        bound = (1 - 1 / (20 * c)) * Delta
        items = []
        for j, C in enumerate(clusters):
            rj = sssp(g, C, centers[j]).eccentricity()
            items.append((rj < bound + tol, f"cluster {j}: radius {rj} >= {bound}"))
        rep.add("radius_shrink", *_first_failure(items))
    else:
        rep.skip("radius_shrink", "eps above 1/(80c) or contracted level")
    items = [(len(C) < len(dec.X), f"cone {j} is the whole cluster")
             for j, C in enumerate(clusters) if j >= 1]
    rep.add("progress", *_first_failure(items))

    # growth rates
    grs = [gr for gr in dec.growth[1:]]
    chi_sum = sum((Fraction(gr.ball_size, gr.cluster_size) for gr in grs), Fraction(0))
    rep.add("chi_inverse_sum", chi_sum <= 1, f"sum of 1/chi = {chi_sum}")
    items = []
    for a in range(len(grs)):
        for b in range(a + 1, len(grs)):
            inter = grs[a].ball & grs[b].ball
            items.append((not inter, f"growth balls of cones {a + 2} and {b + 2} meet"))
    if not dec.contracted:
        for j, gr in enumerate(grs, 2):
            items.append((gr.ball <= clusters[j], f"growth ball of cone {j} not inside it"))
    rep.add("growth_balls", *_first_failure(items))

    # sampled radii
    items = []
    for j, s in enumerate(dec.radii, 1):
        lo, hi = s.interval
        items.append((1 <= s.h <= s.N, f"cone {j}: h={s.h}, N={s.N}"))
        items.append((lo - 1e-12 <= s.r <= hi + 1e-12 and s.r <= eps / 2 + 1e-12,
                      f"cone {j}: r={s.r} outside [{lo}, {hi}]"))
        want = 1 if j == 1 else interval_count(dec.growth[j - 1].chi)
        items.append((s.N == want, f"cone {j}: N={s.N}, expected {want}"))
    rep.add("radii", *_first_failure(items))

    # queues
    Q = dec.Q
    items = []
    for j, C in enumerate(clusters):
        q = dec.queues[j]
        items.append((len(q) == len(set(q)) and set(q) == C - {centers[j]},
                      f"Q{j} is not a permutation of X{j} minus its center"))
    pos = {v: i for i, v in enumerate(Q)}
    for j in range(1, len(clusters)):
        q = dec.queues[j]
        items.append((all(v in pos for v in q) and all(pos[a] < pos[b] for a, b in zip(q, q[1:])),
                      f"Q{j} does not follow Q"))
    z1 = Q[0] if Q else None
    if z1 is not None and portals:
        want_head = z1 if z1 in clusters[0] else portals[0][0]
        items.append((dec.head == want_head, f"head {dec.head}, expected {want_head}"))
        if want_head != x0:
            items.append((dec.queues[0][:1] == (want_head,), "Q0 does not start with its head"))
    rep.add("queues", *_first_failure(items))

    # highway: the first cone swallows z1 at zero detour
    if z1 is None or z1 in X0_orig:
        rep.skip("highway", "z1 is in the central ball")
    elif dec.contracted:
        rep.skip("highway", "contracted level")
    else:
        y1, x1 = portals[0]
        Y0 = dec.X - X0_orig
        ctx = ConeContext.build(g, dec.X, Y0, x0, x1)
        th = ctx.threshold(z1)
        rep.add("highway", z1 in clusters[1] and dec.anchor == z1 and g.same(th, 0),
                f"z1={z1}, in X1: {z1 in clusters[1]}, threshold {th}")

    # fat insertions
    items = []
    owner = {v: j for j, C in enumerate(clusters) for v in C}
    trig_sets = []
    for k, (i, j, A) in enumerate(dec.fat_triggers, 1):
        want = frozenset(z for z in Q[:i] if owner[z] == j)
        items.append((A == want, f"trigger {k}: wrong set"))
        items.append((len(A) ** 2 >= i, f"trigger {k}: |A|^2 = {len(A) ** 2} < i = {i}"))
        items.append((len(A) ** 2 >= k, f"trigger {k}: |A|^2 < k"))
        for B in trig_sets:
            items.append((not (A & B), f"trigger {k} overlaps an earlier one"))
        trig_sets.append(A)
    items.append((tuple(portals[j - 1][0] for _, j, _ in dec.fat_triggers) == tuple(dec.fat_queue),
                  "fat queue does not match its triggers"))
    rep.add("fat_triggers", *_first_failure(items))
    return rep


def audit_trace(trace) -> AuditReport:
    """All levels of one build, merged (check names carry the level path)."""
    out = AuditReport()
    for rec in trace.records:
        r = audit_star_partition(trace.graph, rec.dec, trace.params)
        for ch in r.checks:
            out.checks.append(Check(f"{rec.path}:{ch.name}", ch.passed, ch.detail, ch.skipped))
    return out


# --- decomposition stretch profile -------------------------------------------

@dataclass
class ProfileRow:
    depth: int
    p_separated: float
    mean_radius: float      # mean radius of the cluster holding both ends (when it exists)
    contribution: float     # E[1{separated at depth} * radius]
    running: float


@dataclass
class StretchProfile:
    edge: tuple
    distance: float
    trials: int
    rows: list
    total: float
    budget: float
    budget_constant: float
    eps: float

    @property
    def within_budget(self):
        return self.total <= self.budget

    def to_dict(self):
        return {"edge": list(self.edge), "distance": self.distance, "trials": self.trials,
                "total": self.total, "budget": self.budget,
                "budget_constant": self.budget_constant, "eps": self.eps,
                "within_budget": self.within_budget,
                "rows": [[r.depth, r.p_separated, r.mean_radius, r.contribution, r.running]
                         for r in self.rows]}


BUDGET_CONSTANT = 200


def decomposition_stretch_profile(g, edge, params: Params, trials, seed,
                                  constant=BUDGET_CONSTANT) -> StretchProfile:
    u, v = edge
    if not g.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    sep_rad, sep_n = Counter(), Counter()
    rad_sum, rad_n = Counter(), Counter()
    for k in range(trials):
        _, tr = build_low_stretch_tree(g, params=params, rng=Stream(seed, "profile", (k,)))
        for rec in tr.records:
            dec = rec.dec
            if u in dec.X and v in dec.X:
                rad_sum[rec.depth] += dec.Delta
                rad_n[rec.depth] += 1
                ju = next(j for j, C in enumerate(dec.clusters) if u in C)
                if v not in dec.clusters[ju]:
                    sep_rad[rec.depth] += dec.Delta
                    sep_n[rec.depth] += 1
    rows, running = [], 0.0
    for d in sorted(rad_n):
        contrib = sep_rad[d] / trials
        running += contrib
        rows.append(ProfileRow(d, sep_n[d] / trials, rad_sum[d] / rad_n[d], contrib, running))
    dist = graph_distance(g, u, v)
    eps = epsilon_for(max(g.n, 2), params)
    n = max(g.n, 2)
    budget = constant * dist * math.log2(n) * math.log2(1 / eps) / eps
    return StretchProfile((u, v), dist, trials, rows, running, budget, constant, eps)


# --- exhaustive oracle for tiny graphs -----------------------------------------

def spanning_trees(g):
    """Every spanning tree as a tuple of edge indices into ``g.edges``."""
    n, E = g.n, g.edges
    need = n - 1
    out = []

    def rec(i, comp, chosen):
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        if len(E) - i < need - len(chosen):
            return
        u, v, _ = E[i]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            merged = [cu if x == cv else x for x in comp]
            chosen.append(i)
            rec(i + 1, merged, chosen)
            chosen.pop()
        rec(i + 1, comp, chosen)

    if n == 1:
        return [()]
    rec(0, list(range(n)), [])
    return out


def kirchhoff_count(g):
    """Number of spanning trees by the matrix-tree theorem (unweighted count)."""
    if g.n == 1:
        return 1
    L = np.zeros((g.n, g.n))
    for u, v, _ in g.edges:
        L[u, u] += 1
        L[v, v] += 1
        L[u, v] -= 1
        L[v, u] -= 1
    return int(round(np.linalg.det(L[1:, 1:])))


def _avg_stretch_batch(g, trees, dG):
    n = g.n
    E = np.array([(u, v) for u, v, _ in g.edges], dtype=int)
    W = np.array([w for _, _, w in g.edges], dtype=float)
    T = np.array(trees, dtype=int).reshape(len(trees), n - 1)
    D = np.full((len(trees), n, n), np.inf)
    idx = np.arange(n)
    D[:, idx, idx] = 0
    rows = np.arange(len(trees))[:, None]
    D[rows, E[T, 0], E[T, 1]] = W[T]
    D[rows, E[T, 1], E[T, 0]] = W[T]
    for k in range(n):
        D = np.minimum(D, D[:, :, k:k + 1] + D[:, k:k + 1, :])
    st = D[:, E[:, 0], E[:, 1]] / dG
    return st.mean(axis=1)


def brute_force_best_tree(g, chunk=20000):
    """Minimum average-stretch spanning tree by exhaustive enumeration (n <= 8)."""
    if g.n > 8:
        raise PreconditionError("exhaustive search is limited to 8 vertices")
    if g.m == 0:
        if g.n == 1:
            return SpanningTree((0,), {}), 1.0
        raise PreconditionError("graph is not connected")
    trees = spanning_trees(g)
    if not trees:
        raise PreconditionError("graph is not connected")
    dG = np.array([graph_distance(g, u, v) for u, v, _ in g.edges], dtype=float)
    best, best_val = None, math.inf
    for s in range(0, len(trees), chunk):
        part = trees[s:s + chunk]
        vals = _avg_stretch_batch(g, part, dG)
        i = int(np.argmin(vals))
        if vals[i] < best_val - 1e-12:
            best, best_val = part[i], float(vals[i])
    edges = [g.edges[i] for i in best]
    return SpanningTree.from_edges((0,), edges, vertices=range(g.n)), best_val


# --- queue radius profile ------------------------------------------------------

@dataclass
class QueueProfile:
    highway_exact: bool           # d_T(x0, z1) == d_X(x0, z1) at every recorded level
    worst_highway: tuple          # (path, d_T, d_X) with the largest gap
    max_ratio: float              # max_i d_T(x0, z_i) / (max(1, loglog i) * rad)
    levels: int


def queue_radius_profile(tree, trace) -> QueueProfile:
    g = trace.graph
    exact, worst, gap, ratio = True, None, -1.0, 0.0
    # distances inside the working graph's tree; rebuild tree over the working graph
    wt = trace_tree(trace)
    for rec in trace.records:
        dec = rec.dec
        if not dec.Q:
            continue
        z1 = dec.Q[0]
        dT = wt.distance(dec.x0, z1)
        dX = sssp(g, dec.X, dec.x0)[z1]
        if not g.same(dT, dX):
            exact = False
        if dT - dX > gap:
            gap, worst = dT - dX, (rec.path, dT, dX)
        for i, z in enumerate(dec.Q, 1):
            ll = math.log2(math.log2(i)) if i > 2 else 0.0
            ratio = max(ratio, wt.distance(dec.x0, z) / (max(1.0, ll) * dec.Delta))
    return QueueProfile(exact, worst, ratio, len(trace.records))


def trace_tree(trace) -> SpanningTree:
    """The tree over the working graph (added portal points included)."""
    g = trace.graph
    parent = {}
    for rec in trace.records:
        for y, x in rec.dec.portals:
            parent[x] = (y, g.length(y, x))
    from .graph import canonical_parent
    for depth, path, C, c0, rad in trace.base_cases:
        dm = sssp(g, C, c0)
        for v in dm.dist:
            if v != c0:
                p = canonical_parent(g, C, dm.dist, v)
                parent[v] = (p, g.length(p, v))
    roots = sorted({rec.dec.x0 for rec in trace.records if rec.depth == 0} |
                   {c0 for d, _, _, c0, _ in trace.base_cases if d == 0})
    if trace.root in roots:
        roots.remove(trace.root)
        roots.insert(0, trace.root)
    return SpanningTree(roots, parent)
