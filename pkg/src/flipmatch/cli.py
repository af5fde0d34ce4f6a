"""Command-line interface.

Exit codes: 0 ok, 1 verification or validation failure, 2 usage or parse
error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators
from .flipgraph import (
    DEFAULT_CAP_N,
    CapExceededError,
    analysis_report,
    describe_witness,
    search_disconnected_rotation,
    shortest_flip_sequence,
)
from .flipseq import SequenceError, convex_route_to_hull, format_sequence, parse_sequence, route, validate_sequence
from .geometry import FormatError, GeneralPositionError, PointSet, format_points, is_convex_position, parse_points
from .matching import (
    FlipRule,
    Matching,
    MatchingError,
    apply_flip,
    canonical_matching,
    convex_hull_matching,
    flip_problem,
    format_matching,
    parse_matching,
)
from .render import render_sequence, render_svg
from .visibility import build_visibility_graph, duplicate_unmatched, plane_hamiltonian_polygon

OK, INVALID, USAGE, CAP = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", USAGE) from None


def _points(path: str) -> PointSet:
    try:
        return parse_points(_read(path))
    except FormatError as exc:
        raise CliError(f"{path}: {exc}", USAGE) from None
    except GeneralPositionError as exc:
        raise CliError(f"{path}: {exc}", INVALID) from None


def _matching(path: str, ps: PointSet) -> Matching:
    try:
        return parse_matching(_read(path), ps)
    except FormatError as exc:
        raise CliError(f"{path}: {exc}", USAGE) from None
    except (MatchingError, ValueError) as exc:
        raise CliError(f"{path}: invalid matching: {exc}", INVALID) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _rule(name: str) -> FlipRule:
    return FlipRule(name)


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    matching = None
    if args.kind != "nested" and args.n is None:
        raise CliError(f"{args.kind} needs n", USAGE)
    if args.kind == "convex":
        ps = generators.convex_points(args.n, args.seed)
    elif args.kind == "random":
        ps = generators.random_points(args.n, args.seed)
    else:
        layers = args.layers
        if layers is None:
            if args.n is None or (args.n - 1) % 6:
                raise CliError("nested needs --layers or n = 1 + 6 * layers", USAGE)
            layers = (args.n - 1) // 6
        ps, matching = generators.nested_points(layers)
    if args.format == "json":
        text = json.dumps({"kind": args.kind, "seed": args.seed, "points": [list(p) for p in ps]}, indent=2) + "\n"
    else:
        text = format_points(ps, comment=f"{args.kind} n={len(ps)} seed={args.seed}")
    _emit(text, args.output)
    if args.matching_out:
        if matching is None:
            matching = canonical_matching(ps)
        Path(args.matching_out).write_text(format_matching(matching))
    return OK


def cmd_analyze(args) -> int:
    ps = _points(args.points)
    report = analysis_report(ps, _rule(args.rule), args.cap_n, args.threads, timing=not args.no_timing)
    if args.format == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    else:
        _emit("".join(f"{k}: {report[k]}\n" for k in sorted(report)), args.output)
    return OK


def cmd_route(args) -> int:
    ps = _points(args.points)
    a = _matching(args.a, ps)
    b = _matching(args.b, ps)
    m = a.m
    if args.mode == "canonical":
        seq = route(a, b)
        bound_name, bound = "m(m+3)", m * (m + 3)
    elif args.mode == "bfs":
        if len(ps) > args.cap_n:
            raise CliError(f"n={len(ps)} exceeds cap {args.cap_n}", CAP)
        seq = shortest_flip_sequence(a, b)
        if seq is None:
            raise CliError("no flip sequence found", INVALID)
        bound_name, bound = "bfs_distance", len(seq)
    else:
        if not is_convex_position(ps):
            raise CliError("convex mode needs points in convex position", INVALID)
        if b != convex_hull_matching(ps, b.unmatched):
            raise CliError("convex mode needs a hull-edge target matching", INVALID)
        seq = convex_route_to_hull(a, b)
        bound_name, bound = "2n", 2 * len(ps)
    bad = validate_sequence(seq)
    if bad is not None or seq.end != b:
        raise CliError(f"internal error: routed sequence fails at step {bad}", INVALID)
    summary = {"mode": args.mode, "length": len(seq), "bound": bound, "bound_name": bound_name, "n": len(ps), "m": m}
    text = format_sequence(seq)
    if args.output:
        Path(args.output).write_text(text)
        out = sys.stdout
    else:
        sys.stdout.write(text)
        out = sys.stderr
    if args.format == "json":
        out.write(json.dumps(summary, sort_keys=True) + "\n")
    else:
        out.write(f"length {len(seq)} (bound {bound_name} = {bound})\n")
        out.write("end matching:\n" + format_matching(seq.end))
    return OK


def _is_sequence(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line == "start"
    return False


def cmd_render(args) -> int:
    ps = _points(args.points)
    text = _read(args.file)
    if _is_sequence(text):
        try:
            seq = parse_sequence(text, ps)
        except FormatError as exc:
            raise CliError(f"{args.file}: {exc}", USAGE) from None
        except ValueError as exc:
            raise CliError(f"{args.file}: {exc}", INVALID) from None
        bad = validate_sequence(seq)
        if bad is not None:
            raise CliError(f"{args.file}: flip {bad} is illegal", INVALID)
        frames = render_sequence(seq)
        if not args.out_dir:
            raise CliError("rendering a sequence needs --out-dir", USAGE)
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for k, svg in enumerate(frames):
            (out / f"frame_{k:03d}.svg").write_text(svg)
        print(f"wrote {len(frames)} frames to {out}")
    else:
        m = _matching(args.file, ps)
        svg = render_svg(m)
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / "frame_000.svg").write_text(svg)
        else:
            _emit(svg, args.output)
    return OK


def cmd_verify(args) -> int:
    ps = _points(args.points)
    try:
        seq = parse_sequence(_read(args.sequence), ps)
    except FormatError as exc:
        raise CliError(f"{args.sequence}: {exc}", USAGE) from None
    except ValueError as exc:
        raise CliError(f"{args.sequence}: invalid start matching: {exc}", INVALID) from None
    rule = _rule(args.rule)
    bad = validate_sequence(seq, rule)
    if bad is None:
        print(f"ok: {len(seq)} flips")
        return OK
    m = seq.start
    for f in seq.flips[:bad]:
        m = apply_flip(m, f, rule)
    print(f"illegal step {bad}: {flip_problem(m, seq.flips[bad], rule)}")
    return INVALID


def cmd_polygon(args) -> int:
    ps = _points(args.points)
    m = _matching(args.matching, ps)
    ss = duplicate_unmatched(m)
    hp = plane_hamiltonian_polygon(build_visibility_graph(ss))
    names = [f"{ss.duplicate}'" if v == ss.companion else str(v) for v in hp.cycle]
    print(" ".join(names))
    return OK


def cmd_search(args) -> int:
    rule = _rule(args.rule)
    family = generators.windmill_family(args.cap_n) if args.family == "windmill" else generators.convex_family()
    w = search_disconnected_rotation(family, rule, args.cap_n)
    if w is None:
        print(f"no disconnected flip graph under the {rule.value} rule in the {args.family} family")
        return OK
    print(describe_witness(w))
    if args.output:
        Path(args.output).write_text(format_points(w.points, comment=f"disconnected {rule.value} flip graph"))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flipmatch", description="Flip graphs of plane almost-perfect matchings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def rule_flag(p):
        p.add_argument("--rule", choices=[r.value for r in FlipRule], default="flip")

    def cap_flag(p):
        p.add_argument("--cap-n", type=int, default=DEFAULT_CAP_N, help="largest n to enumerate")

    p = sub.add_parser("gen", help="generate a point set")
    p.add_argument("kind", choices=["convex", "random", "nested"])
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--layers", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output")
    p.add_argument("--matching-out", help="also write a start matching (layered for nested, canonical otherwise)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="enumerate and analyse the flip graph")
    p.add_argument("points")
    rule_flag(p)
    cap_flag(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=["text", "json"], default="json")
    p.add_argument("--no-timing", action="store_true", help="report runtime_ms as null")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("route", help="flip sequence between two matchings")
    p.add_argument("points")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", choices=["canonical", "bfs", "convex"], default="canonical")
    cap_flag(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("render", help="SVG of a matching or of every step of a sequence")
    p.add_argument("points")
    p.add_argument("file")
    p.add_argument("--out-dir")
    p.add_argument("--format", choices=["svg"], default="svg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="replay a flip sequence")
    p.add_argument("points")
    p.add_argument("sequence")
    rule_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("polygon", help="print a plane Hamiltonian polygon of a matching with its duplicated unmatched point")
    p.add_argument("points")
    p.add_argument("matching")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("search", help="look for a disconnected flip graph in a generator family")
    p.add_argument("--family", choices=["windmill", "convex"], default="windmill")
    rule_flag(p)
    cap_flag(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_search, rule="rotation")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP
    except (SequenceError, MatchingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
