"""Command-line interface: every capability behind one executable.

All numeric input and output is exact rational text (``p/q`` or ``inf``).
Errors print a single machine-parsable record to stderr and exit with a
class code: 1 usage, 2 parse, 3 precondition, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CapExceededError, InvalidGraphError, ParseError, PreconditionError
from .graph import RayGraph, graph_from_parts, parse_graph
from .metric import directed_hausdorff, hausdorff, is_infinite
from .oracle import oracle_components
from .paths import (
    HyperPath,
    eval_path,
    path_to_canonical,
    same_component_hausdorff,
    vietoris_path,
)
from .sets import component_count, parse_set
from .vietoris import continuity_witness, member_basic, member_lower, member_upper, parse_region, union_regions
from .wedge import model_report, parse_wedge_expr


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        raise _UsageError(message)


def _load_graph(path: str) -> RayGraph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read graph file {path!r}: {exc}") from None
    if p.suffix == ".json":
        return _graph_from_json(text)
    return parse_graph(text)


def _graph_from_json(text: str) -> RayGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON graph file: {exc}") from None
    try:
        edges = [
            (e["id"], e["u"], e["v"], Fraction(e.get("length", 1)))
            for e in doc.get("edges", [])
        ]
        rays = [(r["id"], r["attach"]) for r in doc.get("rays", [])]
        return graph_from_parts(doc["vertices"], edges, rays)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON graph structure: {exc}") from None


def _fmt(value) -> str:
    if is_infinite(value):
        return "inf"
    return str(value)


def _fmt_dirs(ds: frozenset[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(ds)) + "}"


def _emit_path(P: HyperPath, out: str, samples: int) -> None:
    if samples < 1:
        raise PreconditionError("--samples must be at least 1")
    lines = ["t\tset"]
    for j in range(samples + 1):
        t = Fraction(j, samples)
        lines.append(f"{t}\t{eval_path(P, t).render()}")
    Path(out).write_text("\n".join(lines) + "\n")


def _build_parser() -> _Parser:
    top = _Parser(prog="rayspace", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_graph(p):
        p.add_argument("--graph", required=True, help="graph file (text grammar or .json)")

    p = sub.add_parser("dist", help="Hausdorff distance between two sets")
    add_graph(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--directed", action="store_true", help="directed distance a -> b only")

    p = sub.add_parser("classify", help="same-component test with optional path dump")
    add_graph(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--emit-path", metavar="OUT")
    p.add_argument("--samples", type=int, default=20)

    p = sub.add_parser("path", help="path to the canonical element (or to X)")
    add_graph(p)
    p.add_argument("--a", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--vietoris", action="store_true", help="continue out to the whole space")
    p.add_argument("--emit-path", metavar="OUT")
    p.add_argument("--samples", type=int, default=20)

    p = sub.add_parser("vietoris", help="membership in basic Vietoris opens")
    add_graph(p)
    p.add_argument("--a", required=True)
    p.add_argument("--open", action="append", required=True, metavar="SPEC",
                   help="open region: 'all' or 'ball ELEM:coord radius ...' (repeatable)")
    p.add_argument("--witness", metavar="T0", help="certify continuity of the growth path at t0")
    p.add_argument("--res", default="1/1000", help="witness sampling resolution")

    p = sub.add_parser("wedge", help="hyperspace model of a wedge expression")
    p.add_argument("--expr", required=True, help="e.g. '(circle ∨ ray)'")

    p = sub.add_parser("oracle", help="brute-force component census")
    add_graph(p)
    p.add_argument("--step", required=True, help="grid step h")
    p.add_argument("--trunc", required=True, help="truncation radius T")
    p.add_argument("--delta", required=True, help="linking distance")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--max-pieces", type=int, default=1)
    p.add_argument("--cap", type=int, default=200_000)

    p = sub.add_parser("validate", help="graph well-formedness report")
    add_graph(p)
    return top


def _frac(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational for {what}: {text!r}") from None


def _cmd_dist(args) -> int:
    g = _load_graph(args.graph)
    A = parse_set(args.a, g)
    B = parse_set(args.b, g)
    d = directed_hausdorff(g, A, B) if args.directed else hausdorff(g, A, B)
    print(_fmt(d))
    return 0


def _cmd_classify(args) -> int:
    g = _load_graph(args.graph)
    A = parse_set(args.a, g)
    B = parse_set(args.b, g)
    res = same_component_hausdorff(g, A, B, args.n)
    print(f"same={'true' if res.same_component else 'false'}")
    print(f"delta_a={_fmt_dirs(res.delta_a)}")
    print(f"delta_b={_fmt_dirs(res.delta_b)}")
    if res.same_component:
        print(f"path_stages={len(res.path.stages)}")
        if args.emit_path:
            _emit_path(res.path, args.emit_path, args.samples)
            print(f"emitted={args.emit_path}")
    else:
        print(f"witness_ray={res.witness_ray}")
    return 0


def _print_path(P: HyperPath) -> None:
    print(f"stages={len(P.stages)}")
    for i, (lo, hi, stage) in enumerate(P.stage_spans(), start=1):
        print(
            f"stage index={i} kind={stage.kind} span=[{lo},{hi}] "
            f"lipschitz={_fmt(stage.lipschitz_bound)} desc=\"{stage.describe()}\""
        )
    print(f"start={P.start().render()}")
    print(f"end={P.end().render()}")


def _cmd_path(args) -> int:
    g = _load_graph(args.graph)
    A = parse_set(args.a, g)
    P = vietoris_path(g, A, args.n) if args.vietoris else path_to_canonical(g, A, args.n)
    _print_path(P)
    if args.emit_path:
        _emit_path(P, args.emit_path, args.samples)
        print(f"emitted={args.emit_path}")
    return 0


def _cmd_vietoris(args) -> int:
    g = _load_graph(args.graph)
    A = parse_set(args.a, g)
    regions = [parse_region(spec, g) for spec in args.open]
    print(f"upper={'true' if member_upper(A, union_regions(regions)) else 'false'}")
    for i, u in enumerate(regions, start=1):
        print(f"lower {i}={'true' if member_lower(A, u) else 'false'}")
    print(f"basic={'true' if member_basic(A, regions) else 'false'}")
    if args.witness is not None:
        t0 = _frac(args.witness, "--witness")
        res = _frac(args.res, "--res")
        n = max(1, component_count(g, A))
        P = vietoris_path(g, A, n)
        w = continuity_witness(P, t0, regions, res)
        if w.ok:
            print(f"witness delta={w.delta}")
        else:
            print(f"witness=failure first_bad_t={w.failed_at}")
    return 0


def _cmd_wedge(args) -> int:
    print(model_report(parse_wedge_expr(args.expr)))
    return 0


def _cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    res = oracle_components(
        g,
        _frac(args.step, "--step"),
        _frac(args.trunc, "--trunc"),
        _frac(args.delta, "--delta"),
        args.n,
        args.max_pieces,
        cap=args.cap,
    )
    print(f"backend={res.backend}")
    print(f"sets={res.set_count}")
    print(f"components={res.count}")
    for i, (rep, ds) in enumerate(zip(res.representatives, res.directions), start=1):
        print(f"component {i} direction={_fmt_dirs(ds)} rep={rep.render()}")
    return 0


def _cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    print("ok=true")
    print(f"vertices={len(g.vertices)}")
    print(f"edges={len(g.edges)}")
    print(f"rays={len(g.rays)}")
    for e in g.edges:
        loop = " loop" if e.is_loop else ""
        print(f"edge {e.id} {e.u}--{e.v} length={e.length}{loop}")
    for r in g.rays:
        print(f"ray {g.ray_index[r.id]}={r.id} at {r.attach}")
    return 0


_COMMANDS = {
    "dist": _cmd_dist,
    "classify": _cmd_classify,
    "path": _cmd_path,
    "vietoris": _cmd_vietoris,
    "wedge": _cmd_wedge,
    "oracle": _cmd_oracle,
    "validate": _cmd_validate,
}


def _error(kind: str, code: int, msg: str) -> int:
    safe = str(msg).replace('"', "'")
    print(f'error kind={kind} msg="{safe}"', file=sys.stderr)
    return code


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        return _error("usage", 1, str(exc))
    except (ParseError, InvalidGraphError) as exc:
        return _error("parse", 2, str(exc))
    except PreconditionError as exc:
        return _error("precondition", 3, str(exc))
    except CapExceededError as exc:
        return _error("cap", 4, str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
