"""Seeded graph families and random list assignments."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput
from .graph import ListAssignment, MultiGraph


def path(length: int) -> MultiGraph:
    """Path with ``length`` edges."""
    return MultiGraph(length + 1, [(i, i + 1) for i in range(length)])


def cycle(n: int) -> MultiGraph:
    if n < 3:
        raise InvalidInput("a cycle needs at least 3 vertices")
    return MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> MultiGraph:
    return MultiGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return MultiGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def random_gnm(n: int, m: int, rng: np.random.Generator) -> MultiGraph:
    total = n * (n - 1) // 2
    if m > total:
        raise InvalidInput(f"G(n={n}, m={m}) has at most {total} edges")
    idx = np.sort(rng.choice(total, size=m, replace=False))
    # row i of the upper triangle starts at i*n - i*(i+1)/2
    starts = np.array([i * n - i * (i + 1) // 2 for i in range(n)])
    rows = np.searchsorted(starts, idx, side="right") - 1
    cols = idx - starts[rows] + rows + 1
    return MultiGraph(n, zip(rows.tolist(), cols.tolist()))


def random_near_regular(n: int, d: int, rng: np.random.Generator) -> MultiGraph:
    """Random stub pairing with loops and repeated pairs discarded.

    Degrees lie in ``[d - k, d]`` for a small ``k``; the maximum degree is
    ``d`` whenever some vertex loses no stub.
    """
    if d >= n:
        raise InvalidInput("degree must be below the vertex count")
    stubs = np.repeat(np.arange(n), d)
    rng.shuffle(stubs)
    if len(stubs) % 2:
        stubs = stubs[:-1]
    seen = set()
    edges = []
    for a, b in stubs.reshape(-1, 2).tolist():
        key = (min(a, b), max(a, b))
        if a != b and key not in seen:
            seen.add(key)
            edges.append(key)
    return MultiGraph(n, sorted(edges))


def random_connected(n: int, max_degree: int, extra: int, rng: np.random.Generator) -> MultiGraph:
    """Random spanning tree plus up to ``extra`` chords, degrees capped at ``max_degree``."""
    if n < 2 or max_degree < 2:
        raise InvalidInput("need n >= 2 and max_degree >= 2")
    deg = [0] * n
    edges = set()
    order = rng.permutation(n).tolist()
    for i in range(1, n):
        v = order[i]
        cands = [u for u in order[:i] if deg[u] < max_degree]
        u = cands[int(rng.integers(len(cands)))]
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    for _ in range(extra):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        key = (min(u, v), max(u, v))
        if key in edges or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        edges.add(key)
        deg[u] += 1
        deg[v] += 1
    return MultiGraph(n, sorted(edges))


def random_lists(g: MultiGraph, size: int, universe: int, rng: np.random.Generator) -> ListAssignment:
    """Independent uniform ``size``-subsets of ``{0, ..., universe-1}`` per edge."""
    if size > universe:
        raise InvalidInput(f"list size {size} exceeds universe {universe}")
    return ListAssignment({e: rng.choice(universe, size=size, replace=False).tolist() for e in range(g.m)})


def random_vertex_lists(n: int, size: int, universe: int, rng: np.random.Generator) -> dict[int, frozenset]:
    return {v: frozenset(rng.choice(universe, size=size, replace=False).tolist()) for v in range(n)}


FAMILIES = {
    "path": (1, lambda p, rng: path(*p)),
    "cycle": (1, lambda p, rng: cycle(*p)),
    "complete": (1, lambda p, rng: complete(*p)),
    "complete-bipartite": (2, lambda p, rng: complete_bipartite(*p)),
    "random-gnm": (2, lambda p, rng: random_gnm(*p, rng)),
    "random-near-regular": (2, lambda p, rng: random_near_regular(*p, rng)),
}


def generate(family: str, params: list[int], rng: np.random.Generator) -> MultiGraph:
    if family not in FAMILIES:
        raise InvalidInput(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    arity, make = FAMILIES[family]
    if len(params) != arity:
        raise InvalidInput(f"{family} takes {arity} integer parameter(s), got {len(params)}")
    return make(params, rng)
