# Monte-Carlo expected stretch vs the best single tree, by exhaustive search.
# usage: python3 demos/small_oracle.py
from lowstretch import Params, brute_force_best_tree, expected_stretch_mc, generate
from lowstretch.harness import kirchhoff_count

cases = [("complete", 4), ("complete", 6), ("cycle", 8), ("grid", 2), ("torus", 3)]
for kind, size in cases:
    g = generate(kind, size)
    if g.n > 8:
        continue
    _, best = brute_force_best_tree(g)
    for name, params in [("fixed root", Params.demo()),
                         ("random root+queue", Params.demo(shuffle=True, random_root=True))]:
        est = expected_stretch_mc(g, params, 5000, seed=0)
        print(f"{kind}{size:<3} trees={kirchhoff_count(g):<6} best={best:.3f}  {name:18s} "
              f"mc={est.avg_mean:.3f}  ratio={est.avg_mean / best:.2f}  "
              f"distinct={est.distinct_trees}")
