"""Reduce an arbitrary graph to a min-degree-boosted multigraph and lift back.

Low-degree means ``d(v) < delta / 4`` with ``delta`` the maximum degree of
the input graph; the comparison is done in integers as ``4 * d < delta``.
Isolated vertices are ignored throughout.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import (DoublingBudgetExceeded, InvalidInput, ListTooShort,
                     ReductionLogError)
from .graph import ListAssignment, MultiGraph, PartialColouring, Stage

DEFAULT_MAX_DOUBLINGS = 12

ListFactory = Callable[[int, np.random.Generator], Iterable[int]]


def is_low(d: int, delta: int) -> bool:
    return 4 * d < delta


def low_vertices(g: MultiGraph, delta: int) -> list[int]:
    return [v for v, d in enumerate(g.degrees()) if is_low(d, delta)]


@dataclass
class ReductionLog:
    """Everything needed to rebuild G'' from G and to map colourings back.

    ``edge_map[i]`` is the input edge behind edge ``i`` of the contracted
    graph. Doubling step ``k`` maps vertex ``v`` to its twin
    ``v + copy_maps[k]["n"]`` and edge ``e`` to ``e + copy_maps[k]["m"]``;
    ``doublings[k]`` lists the matching edges added at that step.
    """

    n_original: int
    m_original: int
    contractions: list[tuple[int, int, int]] = field(default_factory=list)
    edge_map: list[int] = field(default_factory=list)
    doublings: list[list[tuple[int, int]]] = field(default_factory=list)
    copy_maps: list[dict[str, int]] = field(default_factory=list)

    @property
    def m_contracted(self) -> int:
        return len(self.edge_map)

    @property
    def n_doublings(self) -> int:
        return len(self.doublings)

    def contracted_graph(self, g: MultiGraph) -> MultiGraph:
        """Rebuild G' from the input graph; raises if the log does not fit ``g``."""
        if g.n != self.n_original or g.m != self.m_original:
            raise ReductionLogError("log was recorded for a graph of different size")
        rep = list(range(g.n))
        contracted = set()
        for kept, absorbed, e in self.contractions:
            if not (0 <= e < g.m) or set(g.endpoints(e)) != {kept, absorbed}:
                raise ReductionLogError(f"contraction record {(kept, absorbed, e)} does not match graph")
            rep[absorbed] = kept
            contracted.add(e)
        expected = [e for e in range(g.m) if e not in contracted]
        if expected != self.edge_map:
            raise ReductionLogError("edge map inconsistent with contractions")
        return MultiGraph(g.n, [(rep[a], rep[b]) for a, b in (g.endpoints(e) for e in expected)])

    def replay(self, g: MultiGraph) -> MultiGraph:
        cur = self.contracted_graph(g)
        for step, matching in zip(self.copy_maps, self.doublings):
            if step["n"] != cur.n or step["m"] != cur.m:
                raise ReductionLogError("copy map does not match the replayed graph")
            cur = _double(cur, [v for v, _ in matching])
        return cur

    def to_dict(self) -> dict:
        return {
            "n_original": self.n_original,
            "m_original": self.m_original,
            "contractions": [list(t) for t in self.contractions],
            "edge_map": list(self.edge_map),
            "doublings": [[list(p) for p in step] for step in self.doublings],
            "copy_maps": [dict(c) for c in self.copy_maps],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> ReductionLog:
        return cls(
            n_original=d["n_original"], m_original=d["m_original"],
            contractions=[tuple(t) for t in d["contractions"]],
            edge_map=list(d["edge_map"]),
            doublings=[[tuple(p) for p in step] for step in d["doublings"]],
            copy_maps=[dict(c) for c in d["copy_maps"]],
        )


def contract_low_degree_edges(g: MultiGraph, delta: int) -> tuple[MultiGraph, ReductionLog]:
    """Contract ``uv`` whenever low ``u`` has exactly one low neighbour ``v``.

    One ascending pass over the original degrees. A qualifying edge is
    skipped when one of its endpoints was already merged in this pass, so the
    contracted edges form a matching: every mutually-unique low pair (the
    only pairs that would otherwise leave a one-edge component behind) is
    always contracted, multiplicity stays at most 2 and the merged degree
    ``d(u) + d(v) - 2`` stays below ``delta / 2``.
    """
    if not g.is_simple():
        raise InvalidInput("contraction expects a simple graph")
    g.require_no_isolated_edges()
    deg = g.degrees()
    low = [is_low(d, delta) for d in deg]
    touched = [False] * g.n
    log = ReductionLog(g.n, g.m)
    rep = list(range(g.n))
    for u in range(g.n):
        if not low[u] or touched[u]:
            continue
        low_inc = [e for e in g.incident(u) if low[g.other(e, u)]]
        if len(low_inc) != 1:
            continue
        e = low_inc[0]
        v = g.other(e, u)
        if touched[v]:
            continue
        kept, absorbed = (u, v) if (deg[u], -u) > (deg[v], -v) else (v, u)
        touched[u] = touched[v] = True
        rep[absorbed] = kept
        log.contractions.append((kept, absorbed, e))
    contracted = {e for _, _, e in log.contractions}
    log.edge_map = [e for e in range(g.m) if e not in contracted]
    out = MultiGraph(g.n, [(rep[a], rep[b]) for a, b in (g.endpoints(e) for e in log.edge_map)])
    return out, log


def _double(g: MultiGraph, matched: list[int]) -> MultiGraph:
    n = g.n
    out = MultiGraph(2 * n, g.edges + [(a + n, b + n) for a, b in g.edges])
    for v in matched:
        out.add_edge(v, v + n)
    return out


def degree_deficit(g: MultiGraph, delta: int) -> int:
    """Doubling steps needed: ceil(delta/4) minus the minimum non-zero degree."""
    target = -(-delta // 4)
    return max(0, target - g.min_degree) if g.m else 0


def boost_min_degree(g: MultiGraph, delta: int, max_doublings: int = DEFAULT_MAX_DOUBLINGS,
                     log: ReductionLog | None = None) -> tuple[MultiGraph, ReductionLog]:
    """Double the graph and match low vertices to their twins until ``delta`` >= d/4 everywhere."""
    if log is None:
        log = ReductionLog(g.n, g.m, edge_map=list(range(g.m)))
    deficit = degree_deficit(g, delta)
    if deficit > max_doublings:
        raise DoublingBudgetExceeded(
            f"degree deficit {deficit} exceeds the doubling budget {max_doublings}")
    cur = g
    while True:
        deg = cur.degrees()
        low = [v for v in range(cur.n) if deg[v] > 0 and is_low(deg[v], delta)]
        if not low:
            return cur, log
        log.copy_maps.append({"n": cur.n, "m": cur.m})
        log.doublings.append([(v, v + cur.n) for v in low])
        cur = _double(cur, low)


def random_list_factory(size: int, universe: Iterable[int]) -> ListFactory:
    pool = np.array(sorted(set(universe)), dtype=np.int64)
    if size > len(pool):
        extra = np.arange(pool.max(initial=-1) + 1, pool.max(initial=-1) + 1 + size - len(pool))
        pool = np.concatenate([pool, extra])

    def make(edge_id: int, rng: np.random.Generator) -> list[int]:
        return sorted(int(x) for x in rng.choice(pool, size=size, replace=False))

    return make


def reduced_lists(g_reduced: MultiGraph, lists: Mapping[int, frozenset], log: ReductionLog,
                  factory: ListFactory, rng: np.random.Generator) -> ListAssignment:
    """Input lists on the first-copy edges, factory lists on every edge created by doubling."""
    out = {i: lists[orig] for i, orig in enumerate(log.edge_map)}
    for e in range(log.m_contracted, g_reduced.m):
        out[e] = factory(e, rng)
    return ListAssignment(out)


def lift_and_strip(g_original: MultiGraph, c_on_reduced: PartialColouring,
                   log: ReductionLog, delta: int) -> PartialColouring:
    """Restrict to the first copy, un-contract, and uncolour edges inside the low set."""
    log.contracted_graph(g_original)
    deg = g_original.degrees()
    out = PartialColouring()
    for i, orig in enumerate(log.edge_map):
        col = c_on_reduced.colour(i)
        if col is None:
            continue
        a, b = g_original.endpoints(orig)
        if is_low(deg[a], delta) and is_low(deg[b], delta):
            continue
        out.assign(orig, col, c_on_reduced.stage(i))
    return out


def _bfs_edge_order(g: MultiGraph, edges: Iterable[int]) -> list[int]:
    """Edges of the subgraph spanned by ``edges``, component by component in BFS order."""
    sub = set(edges)
    inc: dict[int, list[int]] = {}
    for e in sorted(sub):
        for x in g.endpoints(e):
            inc.setdefault(x, []).append(e)
    order, seen_e, seen_v = [], set(), set()
    for s in sorted(inc):
        if s in seen_v:
            continue
        seen_v.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in inc[x]:
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                y = g.other(e, x)
                if y not in seen_v:
                    seen_v.add(y)
                    queue.append(y)
    return order


def _distinguishing_greedy(g: MultiGraph, lists: Mapping[int, frozenset], c: PartialColouring,
                           order: list[int], stage: Stage) -> PartialColouring:
    """Colour ``order`` one edge at a time keeping partial palettes apart.

    For ``e = uv`` the chosen colour avoids every colour at ``u`` and ``v``
    and makes the new palette of ``u`` differ from the current palette of
    each neighbour of ``u`` other than ``v`` (symmetrically for ``v``). At
    most ``2(d(u)-1) + 2(d(v)-1)`` colours are excluded.
    """
    out = c.copy()
    pal: list[set[int]] = [set() for _ in range(g.n)]
    for e, col in out.colours().items():
        for x in g.endpoints(e):
            pal[x].add(col)
    nbrs = {}
    for e in order:
        u, v = g.endpoints(e)
        banned = pal[u] | pal[v]
        for x, y in ((u, v), (v, u)):
            if x not in nbrs:
                nbrs[x] = g.neighbours(x)
            px = pal[x]
            for w in nbrs[x]:
                if w == y:
                    continue
                pw = pal[w]
                if len(pw) == len(px) + 1 and px <= pw:
                    banned.add(next(iter(pw - px)))
        free = sorted(lists[e] - banned)
        if not free:
            raise ListTooShort(f"edge {e}: every colour of its list is excluded")
        col = free[0]
        out.assign(e, col, stage)
        pal[u].add(col)
        pal[v].add(col)
    return out


def greedy_small_delta(g: MultiGraph, lists: Mapping[int, frozenset]) -> PartialColouring:
    """Complete AVD colouring when every list is longer than ``4(delta - 1)``."""
    g.require_no_isolated_edges()
    delta = g.max_degree
    if delta < 2:
        raise InvalidInput("maximum degree must be at least 2")
    short = [e for e in range(g.m) if len(lists[e]) <= 4 * (delta - 1)]
    if short:
        raise ListTooShort(
            f"{len(short)} list(s) have size <= 4(delta-1) = {4 * (delta - 1)}, e.g. edge {short[0]}")
    return _distinguishing_greedy(g, lists, PartialColouring(), _bfs_edge_order(g, range(g.m)),
                                  Stage.SMALL_DELTA_GREEDY)


def finish_low_degree(g: MultiGraph, lists: Mapping[int, frozenset], c: PartialColouring,
                      delta: int) -> PartialColouring:
    """Greedily colour the uncoloured edges, all of which must lie inside the low set.

    Each such edge needs ``|L_uv| > 2(d(u)-1) + 2(d(v)-1)``, which is below
    ``delta`` for low endpoints and never more than ``4(delta - 1)``.
    """
    deg = g.degrees()
    h_edges = c.uncoloured_edges(g)
    for e in h_edges:
        a, b = g.endpoints(e)
        if not (is_low(deg[a], delta) and is_low(deg[b], delta)):
            raise InvalidInput(f"uncoloured edge {e} has an endpoint of degree >= delta/4")
        need = 2 * (deg[a] - 1) + 2 * (deg[b] - 1)
        if len(lists[e]) <= need:
            raise ListTooShort(f"edge {e}: list size {len(lists[e])} <= {need}")
    if not h_edges:
        return c.copy()
    return _distinguishing_greedy(g, lists, c, _bfs_edge_order(g, h_edges), Stage.LOW_DEGREE_FINISH)
