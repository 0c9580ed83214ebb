"""Exhaustive ground truth for toy graphs.

Nothing here shares code with :func:`avdchoice.graph.verify` beyond the
graph container, so the two can cross-check each other.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping

from .errors import OracleCapExceeded
from .graph import ListAssignment, MultiGraph, PartialColouring, Stage, VerifyReport

DEFAULT_EDGE_CAP = 12
CHOOSABILITY_EDGE_CAP = 5
CHOOSABILITY_K_CAP = 5


def _search_order(g: MultiGraph) -> list[int]:
    deg = g.degrees()
    return sorted(range(g.m), key=lambda e: (-(deg[g.endpoints(e)[0]] + deg[g.endpoints(e)[1]]), e))


def find_avd_colouring(g: MultiGraph, lists: Mapping[int, frozenset],
                       symmetric: bool = False) -> dict[int, int] | None:
    """First on-list proper AVD colouring in search order, or ``None``.

    With ``symmetric=True`` all lists are assumed equal to ``{1..k}`` and a
    new colour may only be the next unused one, which fixes colour 1 on
    the first edge and removes colour permutations.
    """
    order = _search_order(g)
    deg = g.degrees()
    left = list(deg)
    pal = [0] * g.n
    nbrs = [g.neighbours(v) for v in range(g.n)]
    choice = {e: sorted(lists[e]) for e in range(g.m)}
    col: dict[int, int] = {}

    def saturated_clash(x: int) -> bool:
        return any(left[w] == 0 and pal[w] == pal[x] for w in nbrs[x])

    def rec(i: int, top: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        u, v = g.endpoints(e)
        for c in choice[e]:
            if symmetric and c > top + 1:
                break
            bit = 1 << c
            if pal[u] & bit or pal[v] & bit:
                continue
            pal[u] |= bit
            pal[v] |= bit
            left[u] -= 1
            left[v] -= 1
            ok = not ((left[u] == 0 and saturated_clash(u)) or (left[v] == 0 and saturated_clash(v)))
            if ok:
                col[e] = c
                if rec(i + 1, max(top, c)):
                    return True
                del col[e]
            pal[u] &= ~bit
            pal[v] &= ~bit
            left[u] += 1
            left[v] += 1
        return False

    return dict(sorted(col.items())) if rec(0, 0) else None


def _check_input(g: MultiGraph, cap: int) -> None:
    g.require_no_isolated_edges()
    if g.m > cap:
        raise OracleCapExceeded(f"{g.m} edges exceed the oracle cap of {cap}")


def chromatic_avd_index(g: MultiGraph, k_max: int | None = None,
                        cap: int = DEFAULT_EDGE_CAP) -> int | None:
    """Least ``k`` admitting a proper AVD colouring with colours ``1..k``.

    Returns ``None`` if no ``k <= k_max`` works. Without ``k_max`` the
    search is unbounded; ``|E|`` colours always suffice.
    """
    _check_input(g, cap)
    if g.m == 0:
        return 0
    k_max = g.m if k_max is None else k_max
    for k in range(max(1, g.max_degree), k_max + 1):
        if find_avd_colouring(g, ListAssignment.uniform(g, range(1, k + 1)), symmetric=True) is not None:
            return k
    return None


def _canonical_assignments(m: int, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every ``k``-list assignment of ``m`` edges up to renaming colours.

    Colours appear in order of first use: a list is a subset of the colours
    already used plus the next fresh ones. Larger reused subsets come
    first, so the very first assignment is the uniform one.
    """
    def rec(i: int, used: int, acc: list):
        if i == m:
            yield tuple(acc)
            return
        for r in range(min(k, used), -1, -1):
            fresh = tuple(range(used, used + k - r))
            for old in itertools.combinations(range(used), r):
                acc.append(old + fresh)
                yield from rec(i + 1, used + k - r, acc)
                acc.pop()

    yield from rec(0, 0, [])


def check_choosability(g: MultiGraph, k: int) -> tuple[bool, ListAssignment | None]:
    """Whether every ``k``-list assignment admits an on-list AVD colouring.

    Lists are drawn from ``k * |E|`` colours, which is enough since no more
    colours can appear. On failure the violating assignment is returned.
    """
    _check_input(g, CHOOSABILITY_EDGE_CAP)
    if k > CHOOSABILITY_K_CAP:
        raise OracleCapExceeded(f"k={k} exceeds the choosability cap of {CHOOSABILITY_K_CAP}")
    if k < 0:
        raise OracleCapExceeded("k must be non-negative")
    for assignment in _canonical_assignments(g.m, k):
        lists = ListAssignment(dict(enumerate(assignment)))
        if find_avd_colouring(g, lists) is None:
            return False, lists
    return True, None


def naive_verify(g: MultiGraph, lists: Mapping[int, frozenset], c: PartialColouring) -> VerifyReport:
    """Double-loop re-implementation of :func:`avdchoice.graph.verify`."""
    edges = g.edges
    colour = {e: c.colour(e) for e in range(len(edges))}
    proper = []
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            if colour[a] is None or colour[b] is None or colour[a] != colour[b]:
                continue
            if set(edges[a]) & set(edges[b]):
                proper.append((a, b))
    pal = {}
    for v in range(g.n):
        pal[v] = set()
        for e in range(len(edges)):
            if v in edges[e] and colour[e] is not None:
                pal[v].add(colour[e])
    avd = set()
    for u, v in edges:
        if pal[u] == pal[v]:
            avd.add((min(u, v), max(u, v)))
    off = [e for e in range(len(edges)) if colour[e] is not None and colour[e] not in set(lists[e])]
    missing = [e for e in range(len(edges)) if colour[e] is None]
    return VerifyReport(proper, sorted(avd), off, missing)


def naive_chromatic_avd_index(g: MultiGraph, k_max: int | None = None) -> int | None:
    """Plain enumeration of proper colourings in edge-id order, checked by :func:`naive_verify`."""
    g.require_no_isolated_edges()
    if g.m == 0:
        return 0
    k_max = g.m if k_max is None else k_max
    edges = g.edges
    for k in range(1, k_max + 1):
        lists = {e: frozenset(range(1, k + 1)) for e in range(g.m)}
        assignment: list[int] = []

        def extend() -> bool:
            i = len(assignment)
            if i == len(edges):
                pc = PartialColouring({e: (col, Stage.INITIAL_PROPER) for e, col in enumerate(assignment)})
                return naive_verify(g, lists, pc).ok
            for col in range(1, k + 1):
                if any(assignment[j] == col and set(edges[j]) & set(edges[i]) for j in range(i)):
                    continue
                assignment.append(col)
                if extend():
                    return True
                assignment.pop()
            return False

        if extend():
            return k
    return None


def canonical_form(g: MultiGraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least sorted edge list over all vertex relabelings."""
    best = None
    for perm in itertools.permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in g.edges))
        if best is None or key < best:
            best = key
    return g.n, best


def connected_graphs(max_n: int) -> list[MultiGraph]:
    """All connected simple graphs on 3..max_n vertices, one per isomorphism class."""
    out = []
    for n in range(3, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            if len(edges) < n - 1:
                continue
            g = MultiGraph(n, edges)
            if len(g.components()) != 1:
                continue
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                out.append(MultiGraph(n, list(key[1])))
    return out
