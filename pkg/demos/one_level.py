# Cut one star partition and print everything the audit looks at.
# usage: python3 demos/one_level.py [seed]
import sys

from lowstretch import Params, generate, star_partition
from lowstretch.harness import audit_star_partition
from lowstretch.rng import Stream

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 3
g = generate("torus", 9)
params = Params.demo(c=2, eps=0.5)
Q = list(range(1, g.n))
Stream(seed, "queue").rng().shuffle(Q)

dec = star_partition(g, g.vertex_set, 0, Q, params, Stream(seed).rng())
print(f"torus 9x9, x0=0, Delta={dec.Delta}, r0={dec.r0:.3f}, z1={dec.z1}")
print(f"central ball X0 = {sorted(dec.clusters[0])}")
for j, (C, (y, x)) in enumerate(zip(dec.clusters[1:], dec.portals), 1):
    s = dec.radii[j - 1]
    gr = dec.growth[j - 1]
    chi = f"chi={float(gr.chi):.2f}" if gr else "first cone"
    print(f"  cone {j}: portal ({y},{x}) |X|={len(C):3d}  r={s.r:.4f} (h={s.h}/{s.N})  {chi}")
print(f"Q0 = {dec.queues[0]}  (head {dec.head})")
print(f"ball {dec.ball_queue}  fat {dec.fat_queue}  reg {dec.reg_queue}")

rep = audit_star_partition(g, dec, params)
for c in rep.checks:
    tag = "skip" if c.skipped else ("ok" if c.passed else "FAIL")
    print(f"  {tag:4s} {c.name}")
