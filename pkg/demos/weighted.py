# Weighted graphs: added portal points and short-edge contraction.
# usage: python3 demos/weighted.py
from lowstretch import Graph, Params, build_low_stretch_tree, generate, stretch_report
from lowstretch.harness import audit_trace

g = generate("random_connected", 120, seed=4, weights="float")
t, trace = build_low_stretch_tree(g, params=Params.demo(seed=1))
rep = stretch_report(g, t)
added = trace.graph.imaginary
print(f"n={g.n} m={g.m}: {len(trace.records)} stars, {len(added)} added portal points")
for v, (y, x, a, b) in list(added.items())[:5]:
    print(f"  point {v} on edge ({y},{x}) split {a:.3f} + {b:.3f}")
print(f"tree over the original graph: {len(t.parent)} edges, avg stretch {rep.avg_stretch:.3f}")
print(f"all levels audit clean: {audit_trace(trace).ok}")

# lengths over five orders of magnitude: contraction merges the tiny edges first
import random
rnd = random.Random(0)
h = Graph(g.n, [(u, v, w * 10 ** rnd.randint(-3, 2)) for u, v, w in g.edges])
for c in (0.0, 0.5, 2.0):
    t, trace = build_low_stretch_tree(h, params=Params.demo(seed=1, contraction=c))
    contracted = sum(r.contracted for r in trace.records)
    print(f"contraction {c}: {len(trace.records)} stars ({contracted} contracted), "
          f"{len(trace.base_cases)} base clusters, avg stretch {stretch_report(h, t).avg_stretch:.3f}")
