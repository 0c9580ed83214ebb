"""Text and canonical-JSON serialisation.

JSON outputs are written with a fixed key order, sorted colour arrays and
numeric edge order so equal inputs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping

from .errors import GraphFormatError, InvalidInput
from .graph import ListAssignment, MultiGraph, PartialColouring, Stage


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":")) + "\n"


def parse_text_graph(text: str) -> MultiGraph:
    """``n m`` on the first line, then ``m`` lines ``u v`` (0-based)."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError("first line must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token: {exc}") from None
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(pairs)}")
    return MultiGraph(n, pairs)


def format_text_graph(g: MultiGraph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def graph_to_dict(g: MultiGraph, lists: Mapping[int, frozenset] | None = None,
                  vertex_lists: Mapping[int, frozenset] | None = None) -> dict:
    out: dict = {"n": g.n, "edges": [[u, v] for u, v in g.edges]}
    if lists is not None:
        out["lists"] = {str(e): sorted(lists[e]) for e in sorted(lists)}
    if vertex_lists is not None:
        out["vertex_lists"] = {str(v): sorted(vertex_lists[v]) for v in sorted(vertex_lists)}
    return out


def graph_from_dict(d: Mapping) -> tuple[MultiGraph, ListAssignment | None, dict[int, frozenset] | None]:
    try:
        g = MultiGraph(int(d["n"]), [(int(a), int(b)) for a, b in d["edges"]])
        lists = None
        if "lists" in d:
            lists = ListAssignment({int(e): cols for e, cols in d["lists"].items()})
        vlists = vertex_lists_from_dict(d["vertex_lists"]) if "vertex_lists" in d else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise GraphFormatError(f"malformed graph JSON: {exc!r}") from None
    return g, lists, vlists


def vertex_lists_from_dict(d: Mapping) -> dict[int, frozenset]:
    try:
        return {int(v): frozenset(int(c) for c in cols) for v, cols in d.items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise GraphFormatError(f"malformed vertex lists: {exc!r}") from None


def load_graph_file(path: str):
    """Read either format; returns ``(graph, lists or None, vertex lists or None)``."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: invalid JSON ({exc})") from None
        return graph_from_dict(data)
    return parse_text_graph(text), None, None


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON ({exc})") from None


def lists_from_dict(d: Mapping) -> ListAssignment:
    try:
        src = d["lists"] if "lists" in d else d
        return ListAssignment({int(e): cols for e, cols in src.items()})
    except (TypeError, ValueError, AttributeError) as exc:
        raise GraphFormatError(f"malformed lists JSON: {exc!r}") from None


def colouring_to_dict(c: PartialColouring) -> dict:
    items = c.items()
    return {
        "colours": {str(e): col for e, (col, _) in items},
        "stages": {str(e): st.value for e, (_, st) in items},
    }


def colouring_from_dict(d: Mapping) -> PartialColouring:
    try:
        colours = d["colours"]
        stages = d.get("stages", {})
        return PartialColouring({
            int(e): (int(col), Stage(stages.get(e, Stage.INITIAL_PROPER.value)))
            for e, col in colours.items()
        })
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise GraphFormatError(f"malformed colouring JSON: {exc!r}") from None


def format_text_colouring(c: PartialColouring) -> str:
    return "".join(f"{e} {col} {st.value}\n" for e, (col, st) in c.items())


def input_hash(g: MultiGraph, lists: Mapping | None = None, vertex_lists: Mapping | None = None) -> str:
    blob = dumps(graph_to_dict(g, lists, vertex_lists)).encode()
    return hashlib.sha256(blob).hexdigest()
