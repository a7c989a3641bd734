"""Command line front end: recognize / generate / bench.

Exit codes are a contract: 0 accept, 1 reject, 2 for unusable input or
parameters.  Everything informational goes to stdout, diagnostics to
stderr, so the accept/reject bit survives shell plumbing.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import QUAD_CAP, run_bench, to_csv
from .engine import recognize_5connected, recognize_linear, recognize_quadratic
from .formats import (
    ParseError,
    dump_rotation,
    parse_auto,
    serialize_edgelist,
    serialize_graph6,
    to_dot,
)
from .generator import GenerationError, enumerate_classes, mutate_2switch, random_optimal
from .records import CREdit, SREdit
from .rules import detect_xw, make_xw

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_USAGE = 2


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _trace_json(trace) -> str:
    out = []
    for rec in trace:
        if isinstance(rec, SREdit):
            out.append({"rule": "sr", "x": rec.x, "target": rec.target,
                        "a": rec.a, "b": rec.b, "others": list(rec.others)})
        else:
            out.append({"rule": "cr", "inner": list(rec.inner),
                        "outer": list(rec.outer)})
    return json.dumps(out, indent=1)


def cmd_recognize(args) -> int:
    try:
        text = _read_input(args.input)
        g = parse_auto(text)
    except (OSError, ParseError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.algorithm == "quadratic":
        res = recognize_quadratic(g)
    elif args.algorithm == "sr-only":
        res = recognize_5connected(g)
    else:
        res = recognize_linear(g, order=args.order, seed=args.seed)

    if args.stats:
        s = res.stats
        print(f"stats: n0={s.n0} m0={s.m0} sr={s.applied_sr} cr={s.applied_cr} "
              f"accesses={s.accesses} unsuccessful={s.unsuccessful} "
              f"rescans={s.rescans}")

    if not res.accepted:
        print(f"not-optimal-1-planar: {res.reason}")
        return EXIT_REJECT

    print(f"optimal-1-planar k={res.final_k}")
    if args.trace:
        Path(args.trace).write_text(_trace_json(res.trace) + "\n")
        print(f"trace: {args.trace}")
    if args.emit_embedding:
        # every accept already carries its verified drawing
        Path(args.emit_embedding).write_text(dump_rotation(res.emb))
        print(f"embedding: {args.emit_embedding}")
    return EXIT_ACCEPT


def _write_doc(g, path: Path, fmt: str, emb=None) -> None:
    if fmt == "graph6":
        path.write_text(serialize_graph6(g))
    elif fmt == "dot":
        path.write_text(to_dot(g, emb, detect_xw(g)))
    else:
        path.write_text(serialize_edgelist(g))


def cmd_generate(args) -> int:
    out = Path(args.out) if args.out else None
    manifest: dict = {"kind": args.kind, "format": args.format}
    try:
        if args.kind == "xw":
            if args.k is None:
                print("error: --kind xw needs -k", file=sys.stderr)
                return EXIT_USAGE
            g, emb = make_xw(args.k)
            files = [(g, emb)]
            manifest.update(k=args.k, n=g.n)
        elif args.kind == "random":
            if args.n is None:
                print("error: --kind random needs -n", file=sys.stderr)
                return EXIT_USAGE
            inst = random_optimal(args.n, seed=args.seed, prefer=args.prefer)
            files = [(inst.graph, inst.embedding)]
            manifest.update(n=args.n, seed=args.seed, base_k=inst.base_k,
                            sr_steps=inst.sr_steps, cr_steps=inst.cr_steps)
        elif args.kind == "mutate":
            if args.n is None:
                print("error: --kind mutate needs -n", file=sys.stderr)
                return EXIT_USAGE
            inst = random_optimal(args.n, seed=args.seed, prefer=args.prefer)
            files = [(mutate_2switch(inst.graph, seed=args.seed), None)]
            manifest.update(n=args.n, seed=args.seed, mutated=True)
        else:  # enumerate
            if args.n is None:
                print("error: --kind enumerate needs -n", file=sys.stderr)
                return EXIT_USAGE
            classes = enumerate_classes(args.n)
            print(len(classes))
            manifest.update(n=args.n, classes=len(classes))
            files = [(e.graph, e) for e in classes]
    except (ValueError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if out is None:
        if args.kind != "enumerate":
            g = files[0][0]
            sys.stdout.write(serialize_graph6(g)
                             if args.format == "graph6" else serialize_edgelist(g))
        return EXIT_ACCEPT

    if len(files) == 1:
        _write_doc(files[0][0], out, args.format, files[0][1])
        manifest["files"] = [out.name]
    else:
        out.mkdir(parents=True, exist_ok=True)
        names = []
        ext = {"edgelist": "txt", "graph6": "g6", "dot": "dot"}[args.format]
        for i, (g, emb) in enumerate(files):
            p = out / f"{args.kind}_{args.n or args.k}_{i:03d}.{ext}"
            _write_doc(g, p, args.format, emb)
            names.append(p.name)
        manifest["files"] = names
        out_manifest = out / "manifest.json"
        out_manifest.write_text(json.dumps(manifest, indent=1) + "\n")
        return EXIT_ACCEPT
    side = out.with_suffix(out.suffix + ".manifest.json")
    side.write_text(json.dumps(manifest, indent=1) + "\n")
    return EXIT_ACCEPT


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        print(f"error: bad --sizes {args.sizes!r}", file=sys.stderr)
        return EXIT_USAGE
    cap = None if args.full else QUAD_CAP
    rows = run_bench(sizes, repeats=args.repeats, seed=args.seed, quad_cap=cap)
    text = to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
        print(f"csv: {args.csv}")
    else:
        sys.stdout.write(text)
    return EXIT_ACCEPT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="opt1planar",
        description="Recognize, generate, and benchmark optimal 1-planar graphs "
                    "(4n-8 edges, one crossing per edge).")
    sub = ap.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recognize", help="test a graph, exit 0/1/2")
    rec.add_argument("input", help="edgelist or graph6 file, '-' for stdin")
    rec.add_argument("--algorithm", choices=["linear", "quadratic", "sr-only"],
                     default="linear")
    rec.add_argument("--order", choices=["lifo", "fifo", "random"], default="lifo",
                     help="work-list discipline of the linear engine")
    rec.add_argument("--seed", type=int, default=0, help="seed for --order random")
    rec.add_argument("--stats", action="store_true", help="print engine counters")
    rec.add_argument("--trace", metavar="PATH", help="write reduction trace JSON")
    rec.add_argument("--emit-embedding", metavar="PATH",
                     help="reconstruct, verify, and write the rotation system")
    rec.set_defaults(fn=cmd_recognize)

    gen = sub.add_parser("generate", help="produce corpus graphs")
    gen.add_argument("--kind", choices=["xw", "random", "enumerate", "mutate"],
                     required=True)
    gen.add_argument("-n", type=int, help="vertex count")
    gen.add_argument("-k", type=int, help="extended wheel parameter (n = 2k+2)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--prefer", choices=["cr", "sr"], default="cr",
                     help="expansion mix for random graphs")
    gen.add_argument("--out", metavar="PATH", help="output file (or dir for enumerate)")
    gen.add_argument("--format", choices=["edgelist", "graph6", "dot"],
                     default="edgelist")
    gen.set_defaults(fn=cmd_generate)

    ben = sub.add_parser("bench", help="time both engines over random instances")
    ben.add_argument("--sizes", default="1000,10000", help="comma list of n")
    ben.add_argument("--repeats", type=int, default=3)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--full", action="store_true",
                     help="run the quadratic engine at every size (slow)")
    ben.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")
    ben.set_defaults(fn=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
