"""AVD total colouring from lists on vertices and edges.

Steps: greedy proper vertex colouring; trim each edge list by its
endpoints' colours; AVD edge colouring of the trimmed instance with a raised
final margin; recolour low-degree vertices; then recolour one endpoint of any
edge whose total palettes still coincide.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .errors import AVDError, GraphFormatError, InvalidInput, ListTooShort
from .graph import ListAssignment, MultiGraph, PartialColouring, Stage
from .pipeline import PipelineRun, colour_with_trace
from .profile import ThresholdProfile, resolve_profile
from .reduction import is_low

TOTAL_MARGIN = 4


@dataclass
class TotalColouring:
    vertex_colours: dict[int, int]
    edge_colours: PartialColouring

    def total_palette(self, g: MultiGraph, v: int) -> frozenset[int]:
        cols = {self.edge_colours.colour(e) for e in g.incident(v)} - {None}
        if v in self.vertex_colours:
            cols.add(self.vertex_colours[v])
        return frozenset(cols)

    def to_dict(self) -> dict:
        return {
            "vertices": {str(v): c for v, c in sorted(self.vertex_colours.items())},
            "edges": {str(e): c for e, c in self.edge_colours.colours().items()},
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> TotalColouring:
        try:
            return cls({int(v): int(c) for v, c in d["vertices"].items()},
                       PartialColouring.from_colours({int(e): int(c) for e, c in d["edges"].items()}))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise GraphFormatError(f"malformed total colouring JSON: {exc!r}") from None


@dataclass
class TotalVerifyReport:
    edge_conflicts: list[tuple[int, int]] = field(default_factory=list)
    vertex_conflicts: list[tuple[int, int]] = field(default_factory=list)
    incidence_conflicts: list[tuple[int, int]] = field(default_factory=list)
    avd_violations: list[tuple[int, int]] = field(default_factory=list)
    list_violations: list[int] = field(default_factory=list)
    vertex_list_violations: list[int] = field(default_factory=list)
    uncoloured: list[int] = field(default_factory=list)
    uncoloured_vertices: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(getattr(self, f) for f in self.__dataclass_fields__)

    def to_dict(self) -> dict:
        return {f: [list(x) if isinstance(x, tuple) else x for x in getattr(self, f)]
                for f in self.__dataclass_fields__}


def verify_total(g: MultiGraph, vertex_lists: Mapping[int, frozenset],
                 edge_lists: Mapping[int, frozenset], tc: TotalColouring) -> TotalVerifyReport:
    """Proper total colouring, on-list everywhere, distinct total palettes on every edge."""
    rep = TotalVerifyReport()
    vc = tc.vertex_colours
    ec = tc.edge_colours
    rep.uncoloured_vertices = [v for v in range(g.n) if v not in vc]
    rep.uncoloured = ec.uncoloured_edges(g)
    rep.vertex_list_violations = [v for v in sorted(vc) if vc[v] not in vertex_lists.get(v, ())]
    rep.list_violations = [e for e in ec.coloured_edges() if ec.colour(e) not in edge_lists[e]]
    conflicts = set()
    for v in range(g.n):
        seen: dict[int, int] = {}
        for e in g.incident(v):
            c = ec.colour(e)
            if c is None:
                continue
            if c in seen:
                conflicts.add((min(seen[c], e), max(seen[c], e)))
            else:
                seen[c] = e
            if vc.get(v) == c:
                rep.incidence_conflicts.append((e, v))
    rep.edge_conflicts = sorted(conflicts)
    rep.incidence_conflicts.sort()
    for u, v in g.adjacent_pairs():
        if u in vc and v in vc and vc[u] == vc[v]:
            rep.vertex_conflicts.append((u, v))
        if tc.total_palette(g, u) == tc.total_palette(g, v):
            rep.avd_violations.append((u, v))
    return rep


def greedy_vertex_colouring(g: MultiGraph, vertex_lists: Mapping[int, frozenset]) -> dict[int, int]:
    """Ascending id, smallest colour unused on already coloured neighbours."""
    out: dict[int, int] = {}
    for v in range(g.n):
        lst = vertex_lists[v]
        if len(lst) <= g.max_degree:
            raise ListTooShort(f"vertex {v}: list size {len(lst)} <= maximum degree {g.max_degree}")
        used = {out[w] for w in g.neighbours(v) if w in out}
        free = sorted(lst - used)
        if not free:
            raise ListTooShort(f"vertex {v}: every listed colour is used by a neighbour")
        out[v] = free[0]
    return out


def _recolour_vertex(g: MultiGraph, x: int, vertex_lists, vc: dict[int, int], ec: PartialColouring):
    """Give ``x`` a colour keeping the total colouring proper and ``S'(x)`` apart from every neighbour's."""
    edge_cols = {ec.colour(e) for e in g.incident(x)}
    banned = set(edge_cols) | {vc[w] for w in g.neighbours(x) if w in vc}
    for w in g.neighbours(x):
        pw = {ec.colour(e) for e in g.incident(w)} | {vc[w]}
        # S'(x) becomes edge_cols + {c}; it equals pw for at most one c
        if edge_cols <= pw and len(pw - edge_cols) == 1:
            banned.add(next(iter(pw - edge_cols)))
    free = sorted(vertex_lists[x] - banned)
    if not free:
        raise ListTooShort(f"vertex {x}: no colour keeps the total colouring proper and distinguishing")
    vc[x] = free[0]


@dataclass
class TotalRun:
    colouring: TotalColouring
    edge_run: PipelineRun | None
    recoloured_low: list[int]
    recoloured_repair: list[int]


def total_with_trace(g: MultiGraph, vertex_lists: Mapping[int, frozenset],
                     edge_lists: Mapping[int, frozenset], prof: ThresholdProfile | str | None = None,
                     seed=0, route: str = "auto", **kw) -> TotalRun:
    if not g.is_simple():
        raise InvalidInput("total colouring is defined for simple graphs only")
    missing = [v for v in range(g.n) if v not in vertex_lists]
    if missing:
        raise InvalidInput(f"vertex {missing[0]} has no list")
    if not isinstance(edge_lists, ListAssignment):
        edge_lists = ListAssignment(edge_lists)
    edge_lists.check_covers(g)
    vertex_lists = {v: frozenset(vertex_lists[v]) for v in range(g.n)}
    vc = greedy_vertex_colouring(g, vertex_lists)

    trimmed = {}
    for e in range(g.m):
        u, v = g.endpoints(e)
        trimmed[e] = edge_lists[e] - {vc[u], vc[v]}

    # two-vertex components are fine for total colourings
    iso_pairs = {frozenset(p) for p in g.isolated_edge_components()}
    iso = {e for e in range(g.m) if frozenset(g.endpoints(e)) in iso_pairs}
    ec = PartialColouring()
    for e in sorted(iso):
        if not trimmed[e]:
            raise ListTooShort(f"edge {e}: list exhausted by its endpoint colours")
        ec.assign(e, min(trimmed[e]), Stage.SMALL_DELTA_GREEDY)

    rest = [e for e in range(g.m) if e not in iso]
    edge_run = None
    if rest:
        sub = MultiGraph(g.n, [g.endpoints(e) for e in rest])
        sub_lists = ListAssignment({i: trimmed[e] for i, e in enumerate(rest)})
        delta = sub.max_degree
        profile = resolve_profile(prof, delta).with_margin(TOTAL_MARGIN)
        edge_run = colour_with_trace(sub, sub_lists, profile, seed, route, **kw)
        for i, e in enumerate(rest):
            ec.assign(e, edge_run.colouring.colour(i), edge_run.colouring.stage(i))

    delta = g.max_degree
    low = [v for v in range(g.n) if g.degree(v) and is_low(g.degree(v), delta)]
    for v in low:
        _recolour_vertex(g, v, vertex_lists, vc, ec)
    tc = TotalColouring(vc, ec)
    repaired = []
    for u, v in g.adjacent_pairs():
        if tc.total_palette(g, u) == tc.total_palette(g, v):
            _recolour_vertex(g, u, vertex_lists, vc, ec)
            repaired.append(u)
    rep = verify_total(g, vertex_lists, edge_lists, tc)
    if not rep.ok:
        exc = AVDError(f"total colouring failed verification: {rep.to_dict()}")
        exc.stage = "verify"
        raise exc
    return TotalRun(tc, edge_run, low, repaired)


def avd_list_total_colour(g: MultiGraph, vertex_lists: Mapping[int, frozenset],
                          edge_lists: Mapping[int, frozenset],
                          prof: ThresholdProfile | str | None = None, seed=0,
                          route: str = "auto", **kw) -> TotalColouring:
    """Proper total colouring from the lists with ``S'(u) != S'(v)`` on every edge."""
    return total_with_trace(g, vertex_lists, edge_lists, prof, seed, route, **kw).colouring
