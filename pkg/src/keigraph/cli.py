"""Command-line front end.

Exit codes: 0 success, 1 negative result (invalid kei, bound violation),
2 usage, input or I/O error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import textio
from .algebra import (
    DEFAULT_MAX_CONJ_ELEMENTS,
    DEFAULT_MAX_CUBE_D,
    KeiTable,
    conjugation_kei_sym,
    cube_kei,
    dihedral_kei,
    is_subkei,
    subkei_closure,
    trivial_kei,
    validate_table,
)
from .errors import KeiError, TheoremViolation
from .graph import analyze, build_graph, export_dot
from .paths import hang_rewrite, sequence_path, sequence_vertex, shortest_path
from .verify import (
    DEFAULT_MAX_N,
    build_catalog,
    catalog_write,
    check_component_bounds,
    check_path_lemmas,
    enumerate_subkei,
    verify_theorem_over_all,
)

FAMILIES = ("trivial", "dihedral", "conj-sym", "cube")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_family(spec: str, args) -> tuple[KeiTable, dict[int, str]]:
    name, sep, arg = spec.partition(":")
    if not sep or name not in FAMILIES or not arg.isdigit():
        raise UsageError(f"family must be one of {', '.join(f + ':N' for f in FAMILIES)}, got {spec!r}")
    size = int(arg)
    if name == "trivial":
        return trivial_kei(size), {}
    if name == "dihedral":
        return dihedral_kei(size), {}
    if name == "conj-sym":
        return conjugation_kei_sym(size, max_elements=args.max_elements)
    return cube_kei(size, max_d=args.max_d)


def load_input(args, *, check: bool = True) -> tuple[KeiTable, dict[int, str]]:
    if args.family:
        return load_family(args.family, args)
    return textio.read(args.file, check=check)


def parse_element(token: str, n: int, legend: dict[int, str]) -> int:
    by_label = {label: i for i, label in legend.items()}
    if token in by_label:
        return by_label[token]
    if token.lstrip("-").isdigit() and 0 <= int(token) < n:
        return int(token)
    raise UsageError(f"{token!r} is neither an element index in [0, {n}) nor a label")


def parse_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def colour_set(args, k: KeiTable, legend) -> list[int]:
    if not args.subkei:
        return list(range(k.n))
    s = sorted({parse_element(t, k.n, legend) for t in parse_list(args.subkei)})
    if not is_subkei(k, s):
        hint = ",".join(str(x) for x in subkei_closure(k, s).elements)
        raise UsageError(f"--subkei {args.subkei} is not closed; its closure is {hint}")
    return s


def name(x: int, legend) -> str:
    return legend.get(x, str(x))


def emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj))
    else:
        print(text)


def cmd_validate(args) -> int:
    if args.family:
        k, _ = load_family(args.family, args)
        rows = k.table
    else:
        rows, _ = textio.parse_rows(open(args.file, encoding="utf-8").read())
    report = validate_table(rows, limit=args.limit)
    lines = ["valid kei" if report.valid else "not a kei"]
    for axiom, witness in report.violations:
        lines.append(f"  {axiom}: {witness}")
    emit(report.to_dict(), args.format, "\n".join(lines))
    return EXIT_OK if report.valid else EXIT_NEGATIVE


def cmd_analyze(args) -> int:
    k, legend = load_input(args)
    s = colour_set(args, k, legend)
    report = check_component_bounds(k, s)
    if args.format == "json":
        for c in report.components:
            print(json.dumps(c.to_record()))
    else:
        for c in report.components:
            counts = ", ".join(f"{name(col, legend)}:{m}" for col, m in sorted(c.colour_counts.items()) if m)
            print(
                f"component {{{', '.join(name(v, legend) for v in c.vertices)}}} "
                f"size={c.size} diameter={c.diameter} edges[{counts}] "
                f"size_ok={c.size_ok} colour_ok={c.colour_ok}"
            )
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_graph(args) -> int:
    k, legend = load_input(args)
    g = build_graph(k, colour_set(args, k, legend))
    if args.format == "json":
        sys.stdout.write(analyze(g).to_jsonl())
    else:
        sys.stdout.write(export_dot(g, legend))
    return EXIT_OK


def _path_text(p, legend) -> str:
    out = name(p.vertices[0], legend)
    for v, c in zip(p.vertices[1:], p.colours):
        out += f" -{name(c, legend)}-> {name(v, legend)}"
    return out


def cmd_paths(args) -> int:
    k, legend = load_input(args)
    g = build_graph(k, colour_set(args, k, legend))
    u = parse_element(args.u, k.n, legend)
    v = parse_element(args.v, k.n, legend)
    p = shortest_path(g, u, v)
    result = {"path": p.to_record()}
    lines = [f"shortest: {_path_text(p, legend)} (length {p.length})"]
    if args.hang is not None:
        h = hang_rewrite(g, p, args.hang)
        result["hang"] = h.to_record()
        lines.append(f"hang {args.hang}: {_path_text(h, legend)}")
    if args.seq is not None:
        seq = [int(a) for a in parse_list(args.seq)]
        q = sequence_path(g, p, seq)
        x = sequence_vertex(g, p, seq)
        result["sequence"] = {"s": seq, "path": q.to_record(), "vertex": x}
        lines.append(f"sequence {tuple(seq)}: {_path_text(q, legend)}; u_s = {name(x, legend)}")
    emit(result, args.format, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n is not None:
        summary = verify_theorem_over_all(args.n, paths=args.paths, max_n=args.max_n)
    else:
        k, legend = load_input(args)
        rng = random.Random(args.seed)
        if args.all_subkei:
            subkeis = []
            for s in enumerate_subkei(k):
                subkeis.append(s.elements)
                if len(subkeis) > args.max_subkei:
                    raise UsageError(f"more than {args.max_subkei} subkei; raise --max-subkei or use --subkei")
        else:
            subkeis = [tuple(colour_set(args, k, legend))]
        summary = {"kei_count": 1, "subkei_instances": 0, "components": 0, "violations": 0, "max_diameter": 0}
        for s in subkeis:
            report = check_component_bounds(k, s)
            summary["subkei_instances"] += 1
            summary["components"] += len(report.components)
            summary["violations"] += len(report.violations)
            summary["max_diameter"] = max([summary["max_diameter"], *(c.diameter for c in report.components)])
            if args.paths:
                g = build_graph(k, s)
                pairs = None
                if args.sample:
                    pairs = [(rng.randrange(k.n), rng.randrange(k.n)) for _ in range(args.sample)]
                for key, value in check_path_lemmas(g, exhaustive=not args.sample, pairs=pairs).items():
                    summary[key] = summary.get(key, 0) + value
    print(json.dumps(summary))
    return EXIT_OK if summary["violations"] == 0 else EXIT_NEGATIVE


def cmd_catalog(args) -> int:
    entries = build_catalog(args.n, max_n=args.max_n)
    catalog_write(args.out, entries)
    classes = sum(e.iso_class_rep for e in entries)
    print(json.dumps({"n": args.n, "labelled": len(entries), "iso_classes": classes, "out": args.out}))
    return EXIT_OK


def _add_source(p, required=True):
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--file", "-f", help="kei v1 table file")
    group.add_argument("--family", "-b", help="builtin family: trivial:N, dihedral:N, conj-sym:M, cube:D")
    return group


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="keigraph", description="Finite kei and their coloured graphs.")
    parser.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="enumeration cap")
    parser.add_argument("--max-d", type=int, default=DEFAULT_MAX_CUBE_D, help="cube dimension cap")
    parser.add_argument("--max-elements", type=int, default=DEFAULT_MAX_CONJ_ELEMENTS,
                        help="element cap for conjugation kei")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a table against the kei axioms")
    _add_source(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--limit", type=int, default=32, help="witnesses kept per axiom")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="component sizes, diameters and bound verdicts")
    _add_source(p)
    p.add_argument("--subkei", help="comma-separated colour set (default: all elements)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="emit the coloured multigraph")
    _add_source(p)
    p.add_argument("--subkei")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--dot", dest="format", action="store_const", const="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("paths", help="shortest path and its rewrites")
    _add_source(p)
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--subkei")
    p.add_argument("--hang", type=int, metavar="I", help="reflect through the colour of edge I")
    p.add_argument("--seq", metavar="A1,A2,...", help="increasing positions on the path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("verify", help="check the diameter bound")
    group = _add_source(p)
    group.add_argument("--n", type=int, help="every kei on N elements")
    p.add_argument("--subkei", help="colour set for a single input (default: all elements)")
    p.add_argument("--all-subkei", action="store_true", help="check every subkei of a single input")
    p.add_argument("--max-subkei", type=int, default=100000, help="cap for --all-subkei")
    p.add_argument("--paths", action="store_true", help="also check the shortest-path constructions")
    p.add_argument("--sample", type=int, default=0, help="random pairs per subkei instead of all paths")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="write all labelled kei on N elements as JSON lines")
    p.add_argument("n", type=int)
    p.add_argument("--out", "-o", required=True)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (KeiError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
