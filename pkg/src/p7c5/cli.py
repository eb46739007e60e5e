"""Command-line interface.

Exit codes: 0 success, 1 violation found, 2 input error, 3 size limit.
"""
from __future__ import annotations

import argparse
import json
import multiprocessing
import random
import sys
from dataclasses import asdict
from typing import Iterator, Optional

from . import coloring, detect, families, formats, hole_structure, streams, theorems
from .decompose import find_comparable_pair
from .graph import Graph, GraphError

OK, VIOLATION, INPUT_ERROR, SIZE_LIMIT = 0, 1, 2, 3


def _embedding_json(e: Optional[detect.Embedding]):
    return None if e is None else {"pattern": e.pattern.name, "image": list(e.image)}


def _spec_json(spec: Optional[families.FamilySpec]):
    if spec is None:
        return None
    return {k: v for k, v in asdict(spec).items() if v is not None} | {"label": spec.label()}


def cmd_classify(g: Graph, opts: dict) -> tuple[list[str], int]:
    classes = {}
    for cls in ("KP", "DIAMOND", "PAW", "BULL"):
        m = detect.class_membership(g, cls)
        classes[cls] = {"member": m.member, "witness": _embedding_json(m.witness)}
    spec = families.classify_family(g) if g.n <= opts["family_limit"] else None
    sizes = families.recognize_c7_blowup(g, "stable")
    csizes = families.recognize_c7_blowup(g, "clique")
    out = {"n": g.n, "m": g.m, "classes": classes, "family": _spec_json(spec),
           "blowup": list(sizes) if sizes else None, "clique_blowup": list(csizes) if csizes else None}
    return [json.dumps(out, sort_keys=True)], OK


def cmd_color(g: Graph, opts: dict) -> tuple[list[str], int]:
    cls = opts["cls"].upper()
    omega = coloring.clique_number(g)
    try:
        if cls == "BULL":
            col = coloring.divisible_color(g, opts["limit"])
            bound = (omega + 1) * omega // 2
        else:
            col = coloring.structural_color(g, cls, coloring.PipelineConfig(perfect_limit=opts["limit"]))
            bound = coloring.class_bound(cls, omega)
    except coloring.ClassViolation as e:
        return [json.dumps({"error": "class violation", "witness": _embedding_json(e.witness)})], VIOLATION
    except coloring.BoundViolation as e:
        return [json.dumps({"error": str(e), "colors_used": e.coloring.colors_used, "bound": e.bound})], VIOLATION
    except coloring.ColoringError as e:
        return [json.dumps({"error": type(e).__name__, "detail": str(e)})], VIOLATION
    kinds: dict[str, int] = {}
    for st in col.trace:
        kinds[st.kind] = kinds.get(st.kind, 0) + 1
    rec = {"class": cls, "omega": omega, "colors_used": col.colors_used, "bound": bound,
           "within_bound": col.colors_used <= bound, "coloring": col.lines(), "trace": kinds}
    lines = [json.dumps(rec, sort_keys=True)]
    if opts.get("dot"):
        lines.append(formats.emit_dot(g, col.assignment).rstrip("\n"))
    return lines, OK


def cmd_verify(g: Graph, opts: dict) -> tuple[list[str], int]:
    thm = opts["theorem"].upper()
    if thm == "BULL":
        v = theorems.verify_perfect_divisibility(g, opts["limit"])
    else:
        v = theorems.verify_structure(g, thm, opts["limit"])
    return [v.to_json()], VIOLATION if v.violated else OK


def cmd_detect(g: Graph, opts: dict) -> tuple[list[str], int]:
    p = detect.parse_pattern(opts["pattern"])
    e = detect.find_induced(g, p)
    rec = {"pattern": p.name, "witness": list(e.image) if e else "absent"}
    return [json.dumps(rec)], OK


def cmd_attach(g: Graph, opts: dict) -> tuple[list[str], int]:
    holes = list(hole_structure.seven_holes(g)) if opts.get("all_holes") else [hole_structure.find_seven_hole(g)]
    if holes == [None] or not holes:
        return [json.dumps({"hole": None})], OK
    status = OK
    lines = []
    free = None
    for hole in holes:
        att = hole_structure.compute_attachments(g, hole)
        if free is None:
            free = find_comparable_pair(g) is None
        vs = hole_structure.check_M_properties(g, att, free)
        if vs:
            status = VIOLATION
        lines.append(json.dumps({"hole": list(hole), "parts": hole_structure.attachment_summary(att),
                                 "spill": sorted(att.spill), "violations": [str(v) for v in vs]},
                                sort_keys=True))
    return lines, status


COMMANDS = {"classify": cmd_classify, "color": cmd_color, "verify": cmd_verify,
            "detect": cmd_detect, "attach": cmd_attach}


def _run_one(job: tuple[str, dict, bytes]) -> tuple[list[str], int]:
    name, opts, g6 = job
    g = formats.parse_graph6(g6)
    try:
        return COMMANDS[name](g, opts)
    except detect.TooLarge as e:
        return [json.dumps({"error": "size limit", "detail": str(e)})], SIZE_LIMIT


def _records(path: str, fmt: str) -> Iterator[formats.GraphRecord]:
    if path == "-":
        yield from formats.read_graphs(sys.stdin, fmt, "<stdin>")
    else:
        with open(path) as fh:
            yield from formats.read_graphs(fh, fmt, path)


def _stream(args, name: str, opts: dict) -> int:
    jobs = ((name, opts, formats.emit_graph6(rec.graph)) for rec in _records(args.file, args.format))
    worst = OK
    if args.jobs > 1:
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.imap(_run_one, jobs, chunksize=4)
            worst = _emit(results)
    else:
        worst = _emit(map(_run_one, jobs))
    return worst


def _emit(results) -> int:
    worst = OK
    for lines, status in results:
        for line in lines:
            print(line)
        worst = max(worst, status)
    return worst


def cmd_generate(args) -> int:
    if args.family:
        spec = families.FamilySpec.make(args.family, args.t1, args.t2, args.tp)
        g = families.generate_family(spec)
    elif args.blowup:
        sizes = tuple(int(x) for x in args.blowup.split(","))
        g = families.generate_blowup(families.BlowupSpec(sizes, "clique" if args.clique else "stable"))
    elif args.counterexample:
        g = families.generate_counterexample(args.counterexample, args.t)
    else:
        raise ValueError("generate needs --family, --blowup or --counterexample")
    sys.stdout.write(formats.write_graph(g, args.format))
    return OK


def cmd_sample(args) -> int:
    rng = random.Random(args.seed)
    forbidden = detect.CLASSES[args.cls.upper()]
    for _ in range(args.count):
        g = streams.grow_in_class(rng, forbidden, args.n, p=args.p)
        sys.stdout.write(formats.write_graph(g, args.format))
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("g6", "edges"), default="g6")
    common.add_argument("--limit-exact", type=int, default=detect.PERFECT_LIMIT,
                        help="vertex limit for exact oracles (perfection, coloring)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="p7c5", description="Structure and coloring of (P7, C5, H)-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="class membership, family and blowup recognition")
    s.add_argument("file")
    s = sub.add_parser("color", parents=[common], help="structural or divisibility coloring")
    s.add_argument("file")
    s.add_argument("--class", dest="cls", required=True, choices=("kp", "diamond", "paw", "bull"))
    s.add_argument("--dot", action="store_true", help="also print a DOT rendering")
    s = sub.add_parser("verify", parents=[common], help="check a structure theorem per graph")
    s.add_argument("file")
    s.add_argument("--theorem", required=True, choices=("kp", "diamond", "paw", "bull"))
    s = sub.add_parser("detect", parents=[common], help="find an induced pattern")
    s.add_argument("file")
    s.add_argument("--pattern", required=True)
    s = sub.add_parser("attach", parents=[common], help="7-hole attachment partition and M-property check")
    s.add_argument("file")
    s.add_argument("--all-holes", action="store_true", help="check every 7-hole, not just the first")
    s = sub.add_parser("generate", parents=[common], help="emit a family member, blowup or counterexample")
    s.add_argument("--family")
    s.add_argument("--t1", type=int)
    s.add_argument("--t2", type=int)
    s.add_argument("--tp", type=int, help="t1' = t2' for F11")
    s.add_argument("--blowup", help="seven comma-separated bag sizes")
    s.add_argument("--clique", action="store_true")
    s.add_argument("--counterexample")
    s.add_argument("--t", type=int)
    s = sub.add_parser("sample", parents=[common], help="random class members by constrained growth")
    s.add_argument("--class", dest="cls", required=True, choices=("kp", "diamond", "paw", "bull"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--p", type=float, default=0.4)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "sample":
            return cmd_sample(args)
        opts = {"limit": args.limit_exact, "family_limit": 40}
        if args.command == "color":
            opts.update(cls=args.cls, dot=args.dot)
        elif args.command == "verify":
            opts["theorem"] = args.theorem
        elif args.command == "detect":
            detect.parse_pattern(args.pattern)
            opts["pattern"] = args.pattern
        elif args.command == "attach":
            opts["all_holes"] = args.all_holes
        return _stream(args, args.command, opts)
    except detect.TooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return SIZE_LIMIT
    except (OSError, ValueError, GraphError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
