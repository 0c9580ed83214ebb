"""Multigraph model, palettes and the validators every other module relies on.

Edges are records ``(u, v)`` identified by their index; parallel edges are
separate records. Degrees count parallel edges.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidInput, IsolatedEdgeError

MAX_MULTIPLICITY = 2


class MultiGraph:
    """Undirected multigraph without loops, edge multiplicity at most 2."""

    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        self.n = n
        self.edges: list[tuple[int, int]] = []
        self._inc: list[list[int]] = [[] for _ in range(n)]
        self._mult: dict[tuple[int, int], int] = {}
        for u, v in edges:
            self.add_edge(u, v)

    def add_vertex(self) -> int:
        self._inc.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int) -> int:
        u, v = int(u), int(v)
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidInput(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        if u == v:
            raise InvalidInput(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if self._mult.get(key, 0) >= MAX_MULTIPLICITY:
            raise InvalidInput(f"multiplicity of {key} would exceed {MAX_MULTIPLICITY}")
        self._mult[key] = self._mult.get(key, 0) + 1
        e = len(self.edges)
        self.edges.append((u, v))
        self._inc[u].append(e)
        self._inc[v].append(e)
        return e

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def incident(self, v: int) -> list[int]:
        self._check_vertex(v)
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def degrees(self) -> list[int]:
        return [len(a) for a in self._inc]

    def neighbours(self, v: int) -> list[int]:
        """Distinct neighbours of ``v`` in ascending order."""
        return sorted({self.other(e, v) for e in self.incident(v)})

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get((min(u, v), max(u, v)), 0)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._inc), default=0)

    @property
    def min_degree(self) -> int:
        """Minimum degree over non-isolated vertices (0 for an edgeless graph)."""
        return min((len(a) for a in self._inc if a), default=0)

    def is_simple(self) -> bool:
        return all(k == 1 for k in self._mult.values())

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """Each adjacent unordered pair once, in ascending order."""
        return sorted(self._mult)

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components (isolated vertices included)."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                x = queue.popleft()
                comp.append(x)
                for e in self._inc[x]:
                    y = self.other(e, x)
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def isolated_edge_components(self) -> list[tuple[int, int]]:
        """Components of order exactly two (a single or doubled edge)."""
        return [(c[0], c[1]) for c in self.components() if len(c) == 2]

    def require_no_isolated_edges(self) -> None:
        bad = self.isolated_edge_components()
        if bad:
            raise IsolatedEdgeError(f"graph has isolated edge component(s): {bad}")

    def copy(self) -> MultiGraph:
        return MultiGraph(self.n, self.edges)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidInput(f"vertex {v} out of range 0..{self.n - 1}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiGraph) and self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


class ListAssignment(Mapping):
    """Per-edge colour lists, colours are non-negative integer tokens."""

    def __init__(self, lists: Mapping[int, Iterable[int]] | None = None):
        self._lists: dict[int, frozenset[int]] = {}
        for e, cols in (lists or {}).items():
            fs = frozenset(int(c) for c in cols)
            if any(c < 0 for c in fs):
                raise InvalidInput(f"list of edge {e} contains a negative colour")
            self._lists[int(e)] = fs

    @classmethod
    def uniform(cls, g: MultiGraph, colours: Iterable[int]) -> ListAssignment:
        cols = frozenset(colours)
        return cls({e: cols for e in range(g.m)})

    def __getitem__(self, e: int) -> frozenset[int]:
        return self._lists[e]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._lists))

    def __len__(self) -> int:
        return len(self._lists)

    def sizes(self) -> dict[int, int]:
        return {e: len(s) for e, s in self._lists.items()}

    @property
    def min_size(self) -> int:
        return min((len(s) for s in self._lists.values()), default=0)

    def universe(self) -> frozenset[int]:
        return frozenset().union(*self._lists.values()) if self._lists else frozenset()

    def check_covers(self, g: MultiGraph) -> None:
        missing = [e for e in range(g.m) if e not in self._lists]
        if missing:
            raise InvalidInput(f"edges without a list: {missing[:10]}")

    def with_lists(self, extra: Mapping[int, Iterable[int]]) -> ListAssignment:
        out = ListAssignment()
        out._lists = dict(self._lists)
        out._lists.update({int(e): frozenset(c) for e, c in extra.items()})
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ListAssignment) and self._lists == other._lists

    def __repr__(self) -> str:
        return f"ListAssignment({len(self)} lists, min size {self.min_size})"


class Stage(str, Enum):
    INITIAL_PROPER = "InitialProper"
    RESERVED = "Reserved"
    GREEDY_FINISH = "GreedyFinish"
    SMALL_DELTA_GREEDY = "SmallDeltaGreedy"
    LOW_DEGREE_FINISH = "LowDegreeFinish"


class PartialColouring:
    """Edge -> (colour, stage) for the coloured edges; absent means uncoloured."""

    def __init__(self, assignment: Mapping[int, tuple[int, Stage]] | None = None):
        self._a: dict[int, tuple[int, Stage]] = {}
        for e, (c, s) in (assignment or {}).items():
            self._a[int(e)] = (int(c), Stage(s))

    @classmethod
    def from_colours(cls, colours: Mapping[int, int], stage: Stage = Stage.INITIAL_PROPER):
        return cls({e: (c, stage) for e, c in colours.items()})

    def colour(self, e: int) -> int | None:
        entry = self._a.get(e)
        return None if entry is None else entry[0]

    def stage(self, e: int) -> Stage | None:
        entry = self._a.get(e)
        return None if entry is None else entry[1]

    def assign(self, e: int, colour: int, stage: Stage) -> None:
        self._a[e] = (int(colour), stage)

    def unassign(self, e: int) -> None:
        self._a.pop(e, None)

    def coloured_edges(self) -> list[int]:
        return sorted(self._a)

    def uncoloured_edges(self, g: MultiGraph) -> list[int]:
        return [e for e in range(g.m) if e not in self._a]

    def is_complete(self, g: MultiGraph) -> bool:
        return all(e in self._a for e in range(g.m))

    def colours(self) -> dict[int, int]:
        return {e: c for e, (c, _) in sorted(self._a.items())}

    def items(self):
        return sorted(self._a.items())

    def copy(self) -> PartialColouring:
        out = PartialColouring()
        out._a = dict(self._a)
        return out

    def __contains__(self, e: int) -> bool:
        return e in self._a

    def __len__(self) -> int:
        return len(self._a)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PartialColouring) and self._a == other._a

    def __repr__(self) -> str:
        return f"PartialColouring({len(self._a)} coloured)"


@dataclass
class VerifyReport:
    proper_violations: list[tuple[int, int]] = field(default_factory=list)
    avd_violations: list[tuple[int, int]] = field(default_factory=list)
    list_violations: list[int] = field(default_factory=list)
    uncoloured: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.proper_violations or self.avd_violations
                    or self.list_violations or self.uncoloured)

    def to_dict(self) -> dict:
        return {
            "proper_violations": [list(p) for p in self.proper_violations],
            "avd_violations": [list(p) for p in self.avd_violations],
            "list_violations": list(self.list_violations),
            "uncoloured": list(self.uncoloured),
        }


def palette(g: MultiGraph, c: PartialColouring, v: int) -> frozenset[int]:
    """Colours on the coloured edges at ``v``; uncoloured edges contribute nothing."""
    cols = (c.colour(e) for e in g.incident(v))
    return frozenset(x for x in cols if x is not None)


def symmetric_difference(s1: Iterable[int], s2: Iterable[int]) -> frozenset[int]:
    return frozenset(s1) ^ frozenset(s2)


def is_proper(g: MultiGraph, c: PartialColouring) -> bool:
    for v in range(g.n):
        seen = set()
        for e in g.incident(v):
            col = c.colour(e)
            if col is None:
                continue
            if col in seen:
                return False
            seen.add(col)
    return True


def verify(g: MultiGraph, lists: Mapping[int, Iterable[int]], c: PartialColouring) -> VerifyReport:
    """Report every properness, list, distinction and coverage defect of ``c``."""
    rep = VerifyReport()
    clash: set[tuple[int, int]] = set()
    for v in range(g.n):
        by_colour: dict[int, list[int]] = {}
        for e in g.incident(v):
            col = c.colour(e)
            if col is not None:
                by_colour.setdefault(col, []).append(e)
        for es in by_colour.values():
            for i, e in enumerate(es):
                for f in es[i + 1:]:
                    clash.add((min(e, f), max(e, f)))
    rep.proper_violations = sorted(clash)
    for e in range(g.m):
        col = c.colour(e)
        if col is None:
            rep.uncoloured.append(e)
        elif e not in lists or col not in lists[e]:
            rep.list_violations.append(e)
    pal = [palette(g, c, v) for v in range(g.n)]
    rep.avd_violations = [(u, v) for u, v in g.adjacent_pairs() if pal[u] == pal[v]]
    return rep


def equal_degree_pairs(g: MultiGraph) -> list[tuple[int, int]]:
    """Adjacent pairs with equal (multiplicity-counting) degree, each pair once."""
    deg = g.degrees()
    return [(u, v) for u, v in g.adjacent_pairs() if deg[u] == deg[v]]


def margins(g: MultiGraph, c: PartialColouring) -> dict[tuple[int, int], int]:
    """|S(u) ^ S(v)| for every equal-degree adjacent pair."""
    pal = [palette(g, c, v) for v in range(g.n)]
    return {(u, v): len(pal[u] ^ pal[v]) for u, v in equal_degree_pairs(g)}
