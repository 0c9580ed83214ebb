"""Instance builders and recounts written without the library's bookkeeping."""

from __future__ import annotations

import numpy as np

from avdchoice import generators as gen
from avdchoice.graph import MultiGraph


def core_with_low_part(seed: int, n_core: int = 40, d_core: int = 20, pairs: int = 2,
                       singles: int = 2) -> MultiGraph:
    """Near-regular core plus adjacent low pairs and single low vertices hanging off it.

    Each low pair contracts; each single has degree 3 to 5 and forces doublings.
    """
    rng = np.random.default_rng(seed)
    core = gen.random_near_regular(n_core, d_core, rng)
    edges = list(core.edges)
    n = n_core
    for _ in range(pairs):
        a, b = n, n + 1
        n += 2
        edges.append((a, b))
        for x in (a, b):
            for w in rng.choice(n_core, size=3, replace=False).tolist():
                edges.append((w, x))
    for _ in range(singles):
        x = n
        n += 1
        for w in rng.choice(n_core, size=int(rng.integers(3, 6)), replace=False).tolist():
            edges.append((w, x))
    return MultiGraph(n, edges)


def degrees(g: MultiGraph) -> list[int]:
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def equal_degree_edges(g: MultiGraph) -> set[tuple[int, int]]:
    deg = degrees(g)
    return {(min(u, v), max(u, v)) for u, v in g.edges if deg[u] == deg[v]}


def palettes(g: MultiGraph, colour_of: dict[int, int]) -> list[set[int]]:
    out = [set() for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if e in colour_of:
            out[u].add(colour_of[e])
            out[v].add(colour_of[e])
    return out


def recount_stage_conditions(sr) -> list[str]:
    """Re-derive conditions (i)-(vi) and the final margin from an accepted stage record.

    Returns human-readable failures; an empty list means every condition holds.
    """
    g, lists, prof, res = sr.graph, sr.lists, sr.profile, sr.reserved
    bad = []
    deg = degrees(g)
    R = res.vertex_reserves
    for e, (u, v) in enumerate(g.edges):
        L = set(lists[e])
        reserved = L & set(R[u]) & set(R[v])
        leftover = L - set(R[u]) - set(R[v])
        if set(res.edge_reserves[e]) != reserved or set(res.leftover[e]) != leftover:
            bad.append(f"split identity at edge {e}")
        if len(reserved) < prof.t_reserve:
            bad.append(f"(i) at edge {e}")
        if len(leftover) < prof.t_leftover:
            bad.append(f"(ii) at edge {e}")
    initial = {e: sr.initial.colour(e) for e in range(g.m)}
    U = set(sr.uncolour.uncoloured)
    for v in range(g.n):
        if deg[v] == 0:
            continue
        k = sum(1 for e, ends in enumerate(g.edges) if v in ends and e in U)
        if not prof.u_lo <= k <= prof.u_hi:
            bad.append(f"(iii) at vertex {v}: {k}")
    S = palettes(g, {e: c for e, c in initial.items() if e not in U})
    pairs = equal_degree_edges(g)
    for u, v in sorted(pairs):
        if len(S[u] ^ S[v]) < prof.t_diff2:
            bad.append(f"(iv) at {u},{v}")
    U2 = set(sr.leftover_u.uncoloured)
    if not U2 <= U:
        bad.append("U' not inside U")
    for v in range(g.n):
        k = sum(1 for e, ends in enumerate(g.edges) if v in ends and e in U2)
        if k > prof.t_u3:
            bad.append(f"(v) at vertex {v}: {k}")
    naive = {e: sr.naive.colour(e) for e in range(g.m) if sr.naive.colour(e) is not None}
    if set(naive) != set(range(g.m)) - U2:
        bad.append("naive colouring does not cover exactly E - U'")
    S2 = palettes(g, naive)
    for u, v in sorted(pairs):
        if len(S2[u] ^ S2[v]) < prof.t_diff3:
            bad.append(f"(vi) at {u},{v}")
    final = {e: sr.final.colour(e) for e in range(g.m)}
    S3 = palettes(g, final)
    for u, v in sorted(pairs):
        if len(S3[u] ^ S3[v]) < prof.t_final:
            bad.append(f"final margin at {u},{v}")
    return bad


def stage_separation_failures(sr) -> list[str]:
    """InitialProper colours avoid R_u | R_v; Reserved and GreedyFinish colours lie in R_u & R_v & L_e."""
    g, R, lists = sr.graph, sr.reserved.vertex_reserves, sr.lists
    bad = []
    for e, (u, v) in enumerate(g.edges):
        col, tag = sr.final.colour(e), sr.final.stage(e).value
        if tag == "InitialProper" and (col in R[u] or col in R[v]):
            bad.append(f"edge {e}: InitialProper colour {col} is reserved")
        elif tag in ("Reserved", "GreedyFinish") and not (col in R[u] and col in R[v] and col in lists[e]):
            bad.append(f"edge {e}: {tag} colour {col} outside R_u & R_v & L_e")
        elif tag not in ("InitialProper", "Reserved", "GreedyFinish"):
            bad.append(f"edge {e}: unexpected tag {tag}")
    return bad
