"""
The four stages on a near-regular graph
=======================================

Follow one run through reservation, the initial colouring and random
uncolouring, the naive recolouring from reserved lists, and the greedy finish.
"""

from collections import Counter

import numpy as np

from avdchoice import generators as gen
from avdchoice.graph import Stage, verify
from avdchoice.pipeline import colour_with_trace

rng = np.random.default_rng(7)
g = gen.random_near_regular(400, 48, rng)
delta = g.max_degree
lists = gen.random_lists(g, 2 * delta, 4 * delta, rng)
print(g, "lists of size", 2 * delta)

# route="pipeline" skips the greedy shortcut (lists are too short for it anyway)
run = colour_with_trace(g, lists, "desk", seed=1, route="pipeline")
sr = run.stages
print("profile:", sr.profile.to_dict())

# Stage I: per-edge reserved and leftover list sizes
res = [len(r) for r in sr.reserved.edge_reserves.values()]
left = [len(r) for r in sr.reserved.leftover.values()]
print(f"reserved |R_e| min/mean {min(res)}/{np.mean(res):.1f}, leftover min/mean {min(left)}/{np.mean(left):.1f}")

# Stage II: how many edges were uncoloured, and at each vertex
per_vertex = Counter(x for e in sr.uncolour.uncoloured for x in g.endpoints(e))
print(f"uncoloured {len(sr.uncolour.uncoloured)} edges, per vertex between "
      f"{min(per_vertex.values())} and {max(per_vertex.values())}")

# Stage III: clashes left after the naive colouring
print("left for the greedy finish:", len(sr.leftover_u.uncoloured))

# Stage IV and the result
print("stage tags:", dict(Counter(s.value for _, (_, s) in run.colouring.items())))
print("resamplings:", sr.resample_counts)
print("margin histogram |S(u) ^ S(v)| over equal-degree edges:", run.margin_histogram())
print("report empty:", verify(g, lists, run.colouring).ok)
assert all(run.colouring.stage(e) != Stage.SMALL_DELTA_GREEDY for e in range(g.m))
