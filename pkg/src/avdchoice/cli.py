"""Command-line interface: ``gen``, ``colour``, ``verify`` and ``oracle``.

Exit codes: 0 success, 1 colouring failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import replace

from . import formats
from .errors import AVDError, GraphFormatError, InvalidInput, IsolatedEdgeError
from .generators import FAMILIES, generate, random_lists, random_vertex_lists
from .graph import verify
from .oracle import check_choosability, chromatic_avd_index
from .pipeline import colour_with_trace, make_rng
from .profile import ThresholdProfile, resolve_profile
from .total import TotalColouring, total_with_trace, verify_total

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
GEN_RETRIES = 20
RANDOM_FAMILIES = {"random-gnm", "random-near-regular"}


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_profile(arg: str, delta: int, max_resample: int | None):
    """``desk``/``paper`` stay symbolic unless the budget is overridden; anything else is a JSON file."""
    if arg in ("desk", "paper"):
        prof = arg
    elif os.path.exists(arg):
        prof = ThresholdProfile.from_dict(formats.load_json(arg))
    else:
        raise InvalidInput(f"profile {arg!r} is neither desk, paper nor an existing file")
    if max_resample is not None:
        prof = replace(resolve_profile(prof, delta), max_resample=max_resample)
    return prof


def _load_instance(args):
    g, lists, vlists = formats.load_graph_file(args.graph)
    if getattr(args, "lists", None):
        data = formats.load_json(args.lists)
        lists = formats.lists_from_dict(data)
        if isinstance(data, dict) and "vertex_lists" in data:
            vlists = formats.vertex_lists_from_dict(data["vertex_lists"])
    if lists is None:
        raise InvalidInput("no edge lists: use a JSON graph with a 'lists' field or pass --lists")
    return g, lists, vlists


def cmd_gen(args) -> int:
    rng = make_rng(args.seed)
    for _ in range(GEN_RETRIES if args.family in RANDOM_FAMILIES else 1):
        g = generate(args.family, args.params, rng)
        if not g.isolated_edge_components():
            break
    else:
        raise IsolatedEdgeError(f"generated {args.family} graph has an isolated edge "
                                f"after {GEN_RETRIES if args.family in RANDOM_FAMILIES else 1} attempt(s)")
    size = args.list_size if args.list_size is not None else max(1, 4 * g.max_degree - 3)
    universe = args.universe if args.universe is not None else 2 * size
    lists = random_lists(g, size, universe, rng)
    vlists = random_vertex_lists(g.n, size, universe, rng) if args.vertex_lists else None
    if args.format == "text":
        _write(args.output, formats.format_text_graph(g))
    else:
        _write(args.output, formats.dumps(formats.graph_to_dict(g, lists, vlists)))
    return EXIT_OK


def cmd_colour(args) -> int:
    stats: dict = {"seed": args.seed}
    try:
        g, lists, vlists = _load_instance(args)
        stats["input_hash"] = formats.input_hash(g, lists, vlists if args.total else None)
        prof = _load_profile(args.profile, max(g.max_degree, 2), args.max_resample)
        t0 = time.perf_counter()
        if args.total:
            if vlists is None:
                raise InvalidInput("--total needs vertex lists ('vertex_lists' field)")
            run = total_with_trace(g, vlists, lists, prof, args.seed, args.route,
                                   max_doublings=args.max_doublings)
            edge_run = run.edge_run
            out_dict = run.colouring.to_dict()
            text = "".join([f"v {v} {c}\n" for v, c in sorted(run.colouring.vertex_colours.items())] +
                           [f"e {e} {c}\n" for e, c in run.colouring.edge_colours.colours().items()])
            stats["recoloured_vertices"] = sorted(set(run.recoloured_low) | set(run.recoloured_repair))
        else:
            edge_run = colour_with_trace(g, lists, prof, args.seed, args.route,
                                         max_doublings=args.max_doublings)
            out_dict = formats.colouring_to_dict(edge_run.colouring)
            text = formats.format_text_colouring(edge_run.colouring)
        elapsed = time.perf_counter() - t0
    except InvalidInput as exc:
        stats.update(status="invalid-input", error=_error_dict(exc))
        _finish_stats(args, stats)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AVDError as exc:
        stats.update(status="failed", error=_error_dict(exc))
        _finish_stats(args, stats)
        print(f"colouring failed: {exc}", file=sys.stderr)
        return EXIT_FAIL

    _write(args.output, text if args.format == "text" else formats.dumps(out_dict))
    stats["status"] = "ok"
    if edge_run is not None:
        stats["route"] = edge_run.route
        stats["profile"] = edge_run.profile.to_dict() if edge_run.profile else None
        stats["resample_counts"] = edge_run.stages.resample_counts if edge_run.stages else {}
        stats["margin_histogram"] = {str(k): v for k, v in edge_run.margin_histogram().items()}
        if edge_run.log is not None:
            stats["doublings"] = edge_run.log.n_doublings
            stats["contractions"] = len(edge_run.log.contractions)
        if args.timings:
            stats["timings"] = {k: round(v, 6) for k, v in sorted(edge_run.timings.items())}
    if args.timings:
        stats["elapsed"] = round(elapsed, 6)
    if args.dump_log:
        log = edge_run.log.to_dict() if edge_run is not None and edge_run.log is not None else None
        _write(args.dump_log, formats.dumps(log))
    _finish_stats(args, stats)
    return EXIT_OK


def _error_dict(exc: AVDError) -> dict:
    return {"type": type(exc).__name__, "stage": exc.stage, "message": str(exc)}


def _finish_stats(args, stats: dict) -> None:
    if args.stats:
        _write(args.stats, formats.dumps(dict(sorted(stats.items()))))


def cmd_verify(args) -> int:
    g, lists, vlists = _load_instance(args)
    data = formats.load_json(args.colouring)
    if args.total or (isinstance(data, dict) and "vertices" in data):
        if vlists is None:
            raise InvalidInput("total verification needs vertex lists")
        rep = verify_total(g, vlists, lists, TotalColouring.from_dict(data))
    else:
        rep = verify(g, lists, formats.colouring_from_dict(data))
    sys.stdout.write(formats.dumps(rep.to_dict()))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    g, lists, vlists = formats.load_graph_file(args.graph)
    chi = chromatic_avd_index(g, args.k_max)
    verdicts = {}
    for k in sorted(set(args.choose or [])):
        ok, witness = check_choosability(g, k)
        entry = {"choosable": ok}
        if witness is not None:
            entry["witness"] = {str(e): sorted(witness[e]) for e in sorted(witness)}
        verdicts[str(k)] = entry
    out = {"graph_hash": formats.input_hash(g), "chi_a_prime": chi,
           "max_degree": g.max_degree, "choosability": verdicts}
    _write(args.output, formats.dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="avdchoice", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph with random lists (canonical JSON)")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("params", type=int, nargs="*", help="family parameters, e.g. 'cycle 5' or 'random-gnm 50 200'")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--list-size", type=int, default=None, help="list size (default 4*Delta-3)")
    g.add_argument("--universe", type=int, default=None, help="colour universe size (default 2*list size)")
    g.add_argument("--vertex-lists", action="store_true", help="also emit vertex lists for --total runs")
    g.add_argument("--format", choices=("json", "text"), default="json",
                   help="text drops the lists (default json)")
    g.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("colour", aliases=["color"], help="AVD list edge (or total) colouring")
    c.add_argument("graph", help="graph file, JSON with lists or text")
    c.add_argument("--lists", default=None, help="JSON lists file overriding the graph file's lists")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--profile", default="desk", help="desk, paper or a JSON profile file (default desk)")
    c.add_argument("--max-resample", type=int, default=None, help="override the profile's resampling budget")
    c.add_argument("--max-doublings", type=int, default=12, help="doubling budget (default 12)")
    c.add_argument("--route", choices=("auto", "greedy", "pipeline"), default="auto",
                   help="auto uses the greedy route when every list exceeds 4(Delta-1) (default auto)")
    c.add_argument("--total", action="store_true", help="total colouring from vertex and edge lists")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--stats", default=None, help="write a JSON run record here")
    c.add_argument("--timings", action="store_true", help="include wall-clock timings in the run record")
    c.add_argument("--dump-log", default=None, help="write the reduction log as JSON here")
    c.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    c.set_defaults(func=cmd_colour)

    v = sub.add_parser("verify", help="check a colouring; exit 0 iff the report is empty")
    v.add_argument("graph")
    v.add_argument("colouring")
    v.add_argument("--lists", default=None)
    v.add_argument("--total", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exhaustive chromatic AVD index and choosability (toy graphs)")
    o.add_argument("graph")
    o.add_argument("--k-max", type=int, default=None)
    o.add_argument("--choose", type=int, action="append", help="check k-choosability (repeatable)")
    o.add_argument("-o", "--output", default=None)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InvalidInput, GraphFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AVDError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
