"""The four-stage randomized AVD list edge colouring.

I.   reserve colours at every vertex, splitting each list into a reserved
     part ``R_uv = R_u & R_v & L_uv`` and a leftover ``L_uv - (R_u | R_v)``;
II.  properly colour from the leftovers, then uncolour edges at random;
III. colour the uncoloured edges from their reserved lists and drop clashes;
IV.  finish the remaining edges greedily from the reserved lists.

The bad events of every stage are cleared by resampling their underlying
random choices (see :mod:`avdchoice.resample`).
"""

from __future__ import annotations

import time
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import (AVDError, ColouringNotFound, InfeasibleThresholds,
                     InvalidInput, NoFreeReservedColour)
from .graph import (ListAssignment, MultiGraph, PartialColouring, Stage,
                    equal_degree_pairs, margins, verify)
from .profile import ThresholdProfile, resolve_profile
from .reduction import (DEFAULT_MAX_DOUBLINGS, ListFactory, ReductionLog,
                        boost_min_degree, contract_low_degree_edges,
                        finish_low_degree, greedy_small_delta, lift_and_strip,
                        random_list_factory, reduced_lists)
from .resample import resample_until_clear


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an int, a SeedSequence or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class ReservedLists:
    vertex_reserves: dict[int, frozenset[int]]
    edge_reserves: dict[int, frozenset[int]]
    leftover: dict[int, frozenset[int]]
    resamples: int = 0


@dataclass
class UncolourState:
    """Uncoloured edge set together with the partial colouring it leaves."""

    uncoloured: frozenset[int]
    colouring: PartialColouring
    resamples: int = 0

    def at(self, g: MultiGraph, v: int) -> list[int]:
        return [e for e in g.incident(v) if e in self.uncoloured]

    def partial_palette(self, g: MultiGraph, v: int) -> frozenset[int]:
        cols = (self.colouring.colour(e) for e in g.incident(v) if e not in self.uncoloured)
        return frozenset(c for c in cols if c is not None)


def _check_reserve_feasible(g: MultiGraph, lists: Mapping[int, frozenset], prof: ThresholdProfile):
    for e in range(g.m):
        size = len(lists[e])
        if prof.t_reserve > size or prof.t_leftover > size:
            raise InfeasibleThresholds(
                f"edge {e}: list size {size} cannot meet t_reserve={prof.t_reserve} "
                f"and t_leftover={prof.t_leftover}")
    if g.m and prof.p1 <= 0.0 and prof.t_reserve > 0:
        raise InfeasibleThresholds("p1 = 0 cannot reserve any colour")
    if g.m and prof.p1 >= 1.0 and prof.t_leftover > 0:
        raise InfeasibleThresholds("p1 >= 1 reserves every colour, leaving no leftover list")


def reserve_colours(g: MultiGraph, lists: Mapping[int, frozenset], prof: ThresholdProfile,
                    seed=0, audit: bool = False) -> ReservedLists:
    """Sample the vertex reserves and resample until every edge meets (i) and (ii).

    The random variables are the coins "colour ``c`` joins ``R_w``" for each
    vertex ``w`` and colour ``c`` on a list at ``w``. The event at ``e = uv``
    depends on the coins ``(u, c)`` and ``(v, c)`` for ``c`` in ``L_e``, and
    exactly those are redrawn when it is violated.
    """
    _check_reserve_feasible(g, lists, prof)
    rng = make_rng(seed)
    R: list[set[int]] = []
    for v in range(g.n):
        pool = set()
        for e in g.incident(v):
            pool |= lists[e]
        pool = np.array(sorted(pool), dtype=np.int64)
        R.append({int(c) for c in pool[rng.random(len(pool)) < prof.p1]})
    sorted_lists = {e: sorted(lists[e]) for e in range(g.m)}

    def split(e: int) -> tuple[frozenset, frozenset]:
        u, v = g.endpoints(e)
        L = lists[e]
        return frozenset(L & R[u] & R[v]), frozenset(L - R[u] - R[v])

    def violated(e: int) -> bool:
        res, left = split(e)
        return len(res) < prof.t_reserve or len(left) < prof.t_leftover

    def redo(e: int):
        cols = sorted_lists[e]
        for w in g.endpoints(e):
            coins = rng.random(len(cols)) < prof.p1
            Rw = R[w]
            for c, keep in zip(cols, coins.tolist()):
                if keep:
                    Rw.add(c)
                else:
                    Rw.discard(c)
        u, v = g.endpoints(e)
        near = sorted(set(g.incident(u)) | set(g.incident(v)))
        if audit:
            for f in near:
                _audit_split(g, lists, R, f, *split(f))
        return near

    count = resample_until_clear(range(g.m), violated, redo, prof.max_resample, "reserve (i)/(ii)")
    edge_res, left = {}, {}
    for e in range(g.m):
        edge_res[e], left[e] = split(e)
        if audit:
            _audit_split(g, lists, R, e, edge_res[e], left[e])
    return ReservedLists({v: frozenset(R[v]) for v in range(g.n)}, edge_res, left, count)


def _audit_split(g, lists, R, e, res, left):
    u, v = g.endpoints(e)
    L = lists[e]
    assert res == (R[u] & R[v] & L)
    assert left == (L - (R[u] | R[v]))
    assert not (res & left) and res <= L and left <= L


def initial_proper_colouring(g: MultiGraph, leftover: Mapping[int, frozenset], seed=0,
                             max_steps: int | None = None) -> PartialColouring:
    """Proper colouring with every edge coloured from its leftover list.

    First-fit greedy, always successful when every list has at least
    ``2 * delta - 1`` colours. Otherwise a blocked edge first tries to move
    the (at most two) edges holding one of its colours; failing that it
    takes a colour anyway and evicts the holders, which are re-queued.
    ``max_steps`` bounds the evictions.
    """
    rng = make_rng(seed)
    if max_steps is None:
        max_steps = 200 * g.m + 1000
    col = [-1] * g.m
    at: list[dict[int, int]] = [dict() for _ in range(g.n)]
    lst = [sorted(leftover[e]) for e in range(g.m)]
    for e in range(g.m):
        if not lst[e]:
            raise ColouringNotFound(f"edge {e} has an empty leftover list")

    def put(e: int, c: int) -> None:
        col[e] = c
        for x in g.endpoints(e):
            at[x][c] = e

    def drop(e: int) -> None:
        c = col[e]
        for x in g.endpoints(e):
            if at[x].get(c) == e:
                del at[x][c]
        col[e] = -1

    def free_colour(e: int, avoid: int = -1) -> int:
        u, v = g.endpoints(e)
        au, av = at[u], at[v]
        for c in lst[e]:
            if c != avoid and c not in au and c not in av:
                return c
        return -1

    def shift(e: int) -> bool:
        u, v = g.endpoints(e)
        for c in lst[e]:
            blockers = {b for b in (at[u].get(c), at[v].get(c)) if b is not None}
            moves = []
            for b in blockers:
                alt = free_colour(b, avoid=c)
                if alt < 0:
                    break
                moves.append((b, alt))
            else:
                # two blockers may compete for the same new colour at a shared endpoint
                if len(moves) == 2 and moves[0][1] == moves[1][1] and \
                        set(g.endpoints(moves[0][0])) & set(g.endpoints(moves[1][0])):
                    continue
                for b, alt in moves:
                    drop(b)
                    put(b, alt)
                put(e, c)
                return True
        return False

    steps = 0
    stack: list[int] = []
    for e0 in range(g.m):
        stack.append(e0)
        while stack:
            e = stack.pop()
            if col[e] >= 0:
                continue
            c = free_colour(e)
            if c >= 0:
                put(e, c)
                continue
            if shift(e):
                continue
            steps += 1
            if steps > max_steps:
                raise ColouringNotFound(
                    f"no proper colouring from the leftover lists within {max_steps} evictions")
            u, v = g.endpoints(e)
            c = lst[e][int(rng.integers(len(lst[e])))]
            for b in {at[u].get(c), at[v].get(c)} - {None}:
                drop(b)
                stack.append(b)
            put(e, c)
    return PartialColouring({e: (col[e], Stage.INITIAL_PROPER) for e in range(g.m)})


def _nonisolated(g: MultiGraph) -> list[int]:
    return [v for v in range(g.n) if g.incident(v)]


def random_uncolour(g: MultiGraph, c: PartialColouring, prof: ThresholdProfile, seed=0,
                    reserved: ReservedLists | None = None) -> UncolourState:
    """Uncolour each edge with probability ``p2`` and resample until (iii) and (iv) hold.

    With ``reserved`` given, an extra event per uncoloured edge ``e = uv``
    demands ``|R_e| >= |U_u | U_v|``, the counting condition that makes the
    final greedy stage always succeed.
    """
    deg = g.degrees()
    verts = _nonisolated(g)
    for v in verts:
        if prof.u_lo > deg[v]:
            raise InfeasibleThresholds(f"vertex {v} has degree {deg[v]} < u_lo={prof.u_lo}")
    rng = make_rng(seed)
    colour = [c.colour(e) for e in range(g.m)]
    if any(x is None for x in colour):
        raise InvalidInput("random_uncolour expects a complete colouring")
    unc = [False] * g.m
    cnt = [0] * g.n

    def flip(e: int) -> None:
        new = bool(rng.random() < prof.p2)
        if new != unc[e]:
            unc[e] = new
            d = 1 if new else -1
            for x in g.endpoints(e):
                cnt[x] += d

    for e in range(g.m):
        flip(e)

    pairs = equal_degree_pairs(g)
    pairs_at: dict[int, list] = {}
    for p in pairs:
        for x in p:
            pairs_at.setdefault(x, []).append(("B",) + p)

    def S(x: int) -> set[int]:
        return {colour[e] for e in g.incident(x) if not unc[e]}

    def u_union(e: int) -> int:
        u, v = g.endpoints(e)
        return len({f for f in g.incident(u) if unc[f]} | {f for f in g.incident(v) if unc[f]})

    def violated(ev) -> bool:
        kind = ev[0]
        if kind == "A":
            return not (prof.u_lo <= cnt[ev[1]] <= prof.u_hi)
        if kind == "B":
            return len(S(ev[1]) ^ S(ev[2])) < prof.t_diff2
        e = ev[1]
        return unc[e] and len(reserved.edge_reserves[e]) < u_union(e)

    def redo(ev):
        kind = ev[0]
        if kind == "A":
            centre = (ev[1],)
        elif kind == "B":
            centre = (ev[1], ev[2])
        else:
            centre = g.endpoints(ev[1])
        redraw = sorted({e for x in centre for e in g.incident(x)})
        for e in redraw:
            flip(e)
        touched = sorted({x for e in redraw for x in g.endpoints(e)})
        out = [("A", x) for x in touched]
        for x in touched:
            out.extend(pairs_at.get(x, ()))
        if reserved is not None:
            out.extend(("C", f) for f in sorted({f for x in touched for f in g.incident(x)}))
        return out

    events = [("A", v) for v in verts] + [("B",) + p for p in pairs]
    if reserved is not None:
        events += [("C", e) for e in range(g.m)]
    count = resample_until_clear(events, violated, redo, prof.max_resample, "uncolour (iii)/(iv)")
    U = frozenset(e for e in range(g.m) if unc[e])
    partial = PartialColouring({e: (colour[e], c.stage(e)) for e in range(g.m) if not unc[e]})
    return UncolourState(U, partial, count)


def reserved_naive_colour(g: MultiGraph, st: UncolourState, res: ReservedLists,
                          prof: ThresholdProfile, seed=0) -> tuple[PartialColouring, UncolourState]:
    """Colour U from the reserved lists, uncolour clashes, resample until (v) and (vi) hold."""
    U = sorted(st.uncoloured)
    empty = [e for e in U if not res.edge_reserves[e]]
    if empty:
        raise InfeasibleThresholds(f"uncoloured edge {empty[0]} has an empty reserved list")
    rng = make_rng(seed)
    in_u = set(U)
    choices = {e: sorted(res.edge_reserves[e]) for e in U}
    draw: dict[int, int] = {}
    cnt: list[Counter] = [Counter() for _ in range(g.n)]
    u_at = [[e for e in g.incident(v) if e in in_u] for v in range(g.n)]
    base = [frozenset(st.colouring.colour(e) for e in g.incident(v) if e not in in_u)
            for v in range(g.n)]

    def set_draw(e: int) -> None:
        opts = choices[e]
        new = opts[int(rng.integers(len(opts)))]
        old = draw.get(e)
        if old is not None:
            for x in g.endpoints(e):
                cnt[x][old] -= 1
        draw[e] = new
        for x in g.endpoints(e):
            cnt[x][new] += 1

    for e in U:
        set_draw(e)

    def clashed(e: int) -> bool:
        c = draw[e]
        u, v = g.endpoints(e)
        return cnt[u][c] >= 2 or cnt[v][c] >= 2

    def S(x: int) -> set[int]:
        return set(base[x]) | {draw[e] for e in u_at[x] if not clashed(e)}

    pairs = equal_degree_pairs(g)
    pairs_at: dict[int, list] = {}
    for p in pairs:
        for x in p:
            pairs_at.setdefault(x, []).append(("B",) + p)

    def violated(ev) -> bool:
        if ev[0] == "A":
            return sum(clashed(e) for e in u_at[ev[1]]) > prof.t_u3
        return len(S(ev[1]) ^ S(ev[2])) < prof.t_diff3

    def redo(ev):
        centre = ev[1:]
        near = {e for x in centre for e in u_at[x]}
        redraw = sorted({f for e in near for x in g.endpoints(e) for f in u_at[x]})
        for e in redraw:
            set_draw(e)
        ends = {x for e in redraw for x in g.endpoints(e)}
        touched = sorted({y for x in ends for f in u_at[x] for y in g.endpoints(f)})
        out = [("A", x) for x in touched]
        for x in touched:
            out.extend(pairs_at.get(x, ()))
        return out

    events = [("A", v) for v in _nonisolated(g) if len(u_at[v]) > prof.t_u3] + [("B",) + p for p in pairs]
    count = resample_until_clear(events, violated, redo, prof.max_resample, "naive colouring (v)/(vi)")
    coloured = st.colouring.copy()
    still = []
    for e in U:
        if clashed(e):
            still.append(e)
        else:
            coloured.assign(e, draw[e], Stage.RESERVED)
    return coloured, UncolourState(frozenset(still), coloured, count)


def greedy_finish(g: MultiGraph, c: PartialColouring, u_prime: UncolourState,
                  res: ReservedLists) -> PartialColouring:
    """Give each remaining edge the smallest reserved colour unused at both ends."""
    out = c.copy()
    for e in sorted(u_prime.uncoloured):
        u, v = g.endpoints(e)
        used = {out.colour(f) for f in g.incident(u)} | {out.colour(f) for f in g.incident(v)}
        free = sorted(res.edge_reserves[e] - used)
        if not free:
            raise NoFreeReservedColour(f"edge {e}: all of R_e = {sorted(res.edge_reserves[e])} is taken")
        out.assign(e, free[0], Stage.GREEDY_FINISH)
    return out


@dataclass
class StageRun:
    """Every accepted intermediate state of one run of stages I-IV."""

    graph: MultiGraph
    lists: ListAssignment
    profile: ThresholdProfile
    reserved: ReservedLists
    initial: PartialColouring
    uncolour: UncolourState
    naive: PartialColouring
    leftover_u: UncolourState
    final: PartialColouring
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def resample_counts(self) -> dict[str, int]:
        return {"reserve": self.reserved.resamples, "uncolour": self.uncolour.resamples,
                "naive": self.leftover_u.resamples}


def _staged(name: str, fn, *args, timings: dict, **kw):
    t0 = time.perf_counter()
    try:
        return fn(*args, **kw)
    except AVDError as exc:
        if exc.stage is None:
            exc.stage = name
        raise
    finally:
        timings[name] = time.perf_counter() - t0


def run_stages(g: MultiGraph, lists: ListAssignment, prof: ThresholdProfile, seed=0,
               audit: bool = False) -> StageRun:
    """Stages I-IV on a multigraph whose minimum degree is already at least delta/4."""
    ss = np.random.SeedSequence(seed) if not isinstance(seed, np.random.SeedSequence) else seed
    s_res, s_init, s_unc, s_naive = ss.spawn(4)
    tm: dict[str, float] = {}
    res = _staged("reserve", reserve_colours, g, lists, prof, s_res, audit=audit, timings=tm)
    c2 = _staged("initial", initial_proper_colouring, g, res.leftover, s_init, timings=tm)
    st = _staged("uncolour", random_uncolour, g, c2, prof, s_unc, reserved=res, timings=tm)
    c3, u3 = _staged("naive", reserved_naive_colour, g, st, res, prof, s_naive, timings=tm)
    c4 = _staged("finish", greedy_finish, g, c3, u3, res, timings=tm)
    low = [m for m in margins(g, c4).values() if m < prof.t_final]
    if low:
        exc = AVDError(f"{len(low)} equal-degree pair(s) below the final margin {prof.t_final}")
        exc.stage = "finish"
        raise exc
    return StageRun(g, lists, prof, res, c2, st, c3, u3, c4, tm)


@dataclass
class PipelineRun:
    """Result of :func:`colour_with_trace`."""

    colouring: PartialColouring
    route: str
    delta: int
    profile: ThresholdProfile | None = None
    reduced_graph: MultiGraph | None = None
    log: ReductionLog | None = None
    stages: StageRun | None = None
    timings: dict[str, float] = field(default_factory=dict)

    def margin_histogram(self) -> dict[int, int]:
        if self.stages is None:
            return {}
        return dict(sorted(Counter(margins(self.stages.graph, self.stages.final).values()).items()))


def colour_with_trace(g: MultiGraph, lists: Mapping[int, frozenset],
                      prof: ThresholdProfile | str | None = None, seed=0, route: str = "auto",
                      max_doublings: int = DEFAULT_MAX_DOUBLINGS,
                      list_factory: ListFactory | None = None, audit: bool = False) -> PipelineRun:
    """AVD list edge colouring keeping every intermediate state.

    ``route`` is ``"auto"`` (greedy whenever every list exceeds
    ``4(delta - 1)``), ``"greedy"`` or ``"pipeline"``.
    """
    if route not in ("auto", "greedy", "pipeline"):
        raise InvalidInput(f"unknown route {route!r}")
    if not isinstance(lists, ListAssignment):
        lists = ListAssignment(lists)
    lists.check_covers(g)
    g.require_no_isolated_edges()
    delta = g.max_degree
    if delta < 2:
        raise InvalidInput("maximum degree must be at least 2")
    tm: dict[str, float] = {}
    if route == "greedy" or (route == "auto" and lists.min_size > 4 * (delta - 1)):
        c = _staged("small-delta", greedy_small_delta, g, lists, timings=tm)
        _final_check(g, lists, c)
        return PipelineRun(c, "greedy", delta, timings=tm)

    ss = np.random.SeedSequence(seed)
    s_lists, s_stages = ss.spawn(2)
    sizes = sorted(lists.sizes().values())
    profile = resolve_profile(prof, delta)

    def reduce():
        if g.is_simple():
            g1, log = contract_low_degree_edges(g, delta)
        else:
            g1 = g
            log = ReductionLog(g.n, g.m, edge_map=list(range(g.m)))
        g2, log = boost_min_degree(g1, delta, max_doublings, log)
        factory = list_factory or random_list_factory(max(sizes), lists.universe())
        return g2, reduced_lists(g2, lists, log, factory, make_rng(s_lists)), log

    g2, lists2, log = _staged("reduce", reduce, timings=tm)
    sr = run_stages(g2, lists2, profile, s_stages, audit=audit)
    tm.update(sr.timings)
    c = _staged("lift", lift_and_strip, g, sr.final, log, delta, timings=tm)
    c = _staged("low-degree", finish_low_degree, g, lists, c, delta, timings=tm)
    _final_check(g, lists, c)
    return PipelineRun(c, "pipeline", delta, profile, g2, log, sr, tm)


def _final_check(g, lists, c):
    rep = verify(g, lists, c)
    if not rep.ok:
        exc = AVDError(f"output failed verification: {rep.to_dict()}")
        exc.stage = "verify"
        raise exc


def avd_list_edge_colour(g: MultiGraph, lists: Mapping[int, frozenset],
                         prof: ThresholdProfile | str | None = None, seed=0,
                         route: str = "auto", **kw) -> PartialColouring:
    """Complete, proper, on-list AVD edge colouring of ``g``."""
    return colour_with_trace(g, lists, prof, seed, route, **kw).colouring


