"""
Exact values on toy graphs
==========================

The exhaustive oracle next to the greedy route on the same graphs.
"""

from avdchoice import generators as gen
from avdchoice.graph import ListAssignment, palette, verify
from avdchoice.oracle import check_choosability, chromatic_avd_index, connected_graphs
from avdchoice.reduction import greedy_small_delta

# The smallest number of colours that keeps every pair of neighbours apart.
for name, g in [("P3", gen.path(2)), ("K3", gen.complete(3)), ("C4", gen.cycle(4)),
                ("C5", gen.cycle(5)), ("C6", gen.cycle(6))]:
    print(f"{name}: max degree {g.max_degree}, index {chromatic_avd_index(g)}")

# Across every connected graph on at most five vertices, only one needs more
# than max degree + 2 colours.
over = [g.edges for g in connected_graphs(5) if chromatic_avd_index(g) > g.max_degree + 2]
print("above max degree + 2:", over)

# Lists of four colours are not enough for C5; the oracle hands back a witness.
ok, witness = check_choosability(gen.cycle(5), 4)
print("C5 4-choosable:", ok, "witness list on edge 0:", sorted(witness[0]))

# With lists longer than 4(max degree - 1), one greedy pass always works.
g = gen.cycle(5)
lists = ListAssignment({e: range(10 * e, 10 * e + 5) for e in range(5)})
c = greedy_small_delta(g, lists)
print("colours:", c.colours())
print("palettes:", [sorted(palette(g, c, v)) for v in range(g.n)])
print("report:", verify(g, lists, c).to_dict())
