# Average stretch of the decomposition trees vs a plain BFS tree on grids.
# usage: python3 demos/grid_stretch.py [side] [trials]
import sys

from lowstretch import (Params, build_low_stretch_tree, expected_stretch_mc, generate,
                        shortest_path_tree, stretch_report)

side = int(sys.argv[1]) if len(sys.argv) > 1 else 12
trials = int(sys.argv[2]) if len(sys.argv) > 2 else 200

g = generate("grid", side)
bfs = stretch_report(g, shortest_path_tree(g, None, 0))
print(f"{side}x{side} grid, n={g.n} m={g.m}")
print(f"BFS tree from a corner: avg {bfs.avg_stretch:.3f}  max {bfs.max_stretch:.0f}")

for eps in (0.5, 0.25, 0.1):
    params = Params.demo(eps=eps)
    t, trace = build_low_stretch_tree(g, params=params)
    rep = stretch_report(g, t)
    depth = max((r.depth for r in trace.records), default=-1) + 1
    print(f"eps={eps:<5} one tree: avg {rep.avg_stretch:.3f}  max {rep.max_stretch:.0f}  "
          f"levels {depth}  stars {len(trace.records)}")
    est = expected_stretch_mc(g, params, trials, seed=0)
    worst = max(est.mean)
    print(f"           {trials} trees: mean avg {est.avg_mean:.3f} +- {est.avg_stderr:.3f}  "
          f"worst edge expectation {worst:.2f}")
