"""
Low-degree vertices and total colourings
========================================

A graph with a few low-degree vertices is contracted, doubled until every
degree is at least a quarter of the maximum, coloured, and lifted back.
Then the same machinery colours vertices and edges together.
"""

import numpy as np

from avdchoice import generators as gen
from avdchoice.graph import MultiGraph, verify
from avdchoice.pipeline import colour_with_trace
from avdchoice.total import total_with_trace, verify_total

rng = np.random.default_rng(3)
core = gen.random_near_regular(40, 20, rng)
edges = list(core.edges)
# two adjacent low vertices (contracted) and one vertex of degree 3 (doubled)
edges += [(40, 41), (0, 40), (1, 40), (2, 40), (3, 41), (4, 41), (5, 41)]
edges += [(6, 42), (7, 42), (8, 42)]
g = MultiGraph(43, edges)
delta = g.max_degree
lists = gen.random_lists(g, 2 * delta, 4 * delta, rng)

run = colour_with_trace(g, lists, seed=2, route="pipeline")
print("input", g, "-> reduced", run.reduced_graph)
print("contractions (kept, absorbed, edge):", run.log.contractions)
print("doubling steps:", run.log.n_doublings)
low_edges = [e for e, (_, s) in run.colouring.items() if s.value == "LowDegreeFinish"]
print("edges recoloured inside the low set:", low_edges)
print("report empty:", verify(g, lists, run.colouring).ok)

# Total colouring: vertex colours join the palettes and must differ from
# neighbouring vertices and from incident edges.
small = gen.random_connected(30, 6, 40, rng)
d = small.max_degree
vl = gen.random_vertex_lists(small.n, 4 * d + 4, 8 * d, rng)
el = gen.random_lists(small, 4 * d + 4, 8 * d, rng)
total = total_with_trace(small, vl, el, seed=0)
print("total colouring of", small)
print("vertices recoloured for low degree:", total.recoloured_low)
print("vertices recoloured to separate equal total palettes:", total.recoloured_repair)
print("report:", verify_total(small, vl, el, total.colouring).ok)
