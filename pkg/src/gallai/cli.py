"""Command line interface.

Exit codes, uniform across subcommands: 0 for success (checks pass, a
witness exists), 1 for a definite negative (violation found, search
space exhausted), 2 for malformed input or failed validation, 3 for a
resource limit reached before an answer.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .coloring import canonical_digest
from .construct import build_lower_bound_witness, load_base14, random_gallai
from .detect import find_mono, find_rainbow_triangle
from .formats import (
    ColoringDocument,
    FormatError,
    read_document,
    render_json,
    render_text,
    write_document,
)
from .patterns import PatternSpec
from .search import DEFAULT_NODE_LIMIT, SearchTask, search_witness
from .structure import find_gallai_partition, peel_apex_sequence
from .trace import trace_to_json

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


def parse_pattern(token: str) -> PatternSpec:
    """Pattern names accepted on the command line.

    ``w4``, ``p3``, ``c4``, ``k3``, ``kt:N``, ``wheel:M``, or
    ``explicit:FILE`` where FILE is JSON {"order": int, "edges": [[u, v], ...]}.
    """
    t = token.strip()
    if t == "w4":
        return PatternSpec.wheel(4)
    if t == "p3":
        return PatternSpec.path3()
    if t == "c4":
        return PatternSpec.cycle4()
    if t == "k3":
        return PatternSpec.clique(3)
    if t.startswith("kt:"):
        return PatternSpec.clique(int(t[3:]))
    if t.startswith("wheel:"):
        return PatternSpec.wheel(int(t[6:]))
    if t.startswith("explicit:"):
        raw = json.loads(Path(t[len("explicit:") :]).read_text(encoding="ascii"))
        try:
            order = int(raw["order"])
            edges = [(int(u), int(v)) for u, v in raw["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad explicit pattern file: {exc}") from exc
        return PatternSpec.explicit(order, edges)
    raise ValueError(f"unknown pattern {token!r}")


def _emit(doc: ColoringDocument, out: Optional[str], fmt: Optional[str]) -> None:
    if out:
        write_document(out, doc, fmt)
    elif (fmt or "grc") == "json":
        print(json.dumps(render_json(doc), indent=2, sort_keys=True))
    else:
        sys.stdout.write(render_text(doc))


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_construct(args) -> int:
    if args.base:
        base = read_document(args.base).coloring
        label = args.label or Path(args.base).name
    else:
        base = load_base14()
        label = args.label or "base14"
    coloring, trace = build_lower_bound_witness(
        args.k, base, rim=args.rim, base_label=label
    )
    doc = ColoringDocument.sealed(
        coloring, provenance={"kind": "construction", "trace": trace_to_json(trace)}
    )
    _emit(doc, args.out, args.format)
    if args.out:
        print(f"n={coloring.n} k={coloring.k} digest={doc.digest}")
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = read_document(args.input, args.format)
    c = doc.coloring
    used = c.colors_used()
    if len(used) < c.k:
        print(
            f"note: declares k={c.k} but uses {len(used)} colors",
            file=sys.stderr,
        )
    checks = []
    if args.gallai:
        hit = find_rainbow_triangle(c)
        if hit is not None:
            _print_json({"ok": False, "check": "rainbow", "violation": hit.to_json()})
            return EXIT_VIOLATION
        checks.append({"check": "rainbow", "ok": True})
    if args.pattern:
        pattern = parse_pattern(args.pattern)
        hit = find_mono(c, pattern, args.color)
        if hit is not None:
            _print_json(
                {
                    "ok": False,
                    "check": "mono",
                    "pattern": pattern.label,
                    "violation": hit.to_json(),
                }
            )
            return EXIT_VIOLATION
        checks.append(
            {"check": "mono", "pattern": pattern.label, "color": args.color, "ok": True}
        )
    if not checks:
        raise ValueError("nothing to verify: give --pattern and/or --gallai")
    _print_json({"ok": True, "n": c.n, "k": c.k, "checks": checks})
    return EXIT_OK


def cmd_partition(args) -> int:
    doc = read_document(args.input, args.format)
    part = find_gallai_partition(doc.coloring)
    payload = json.dumps(part.to_json(), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="ascii")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def cmd_peel(args) -> int:
    doc = read_document(args.input, args.format)
    seq = peel_apex_sequence(doc.coloring)
    _print_json(seq.to_json())
    return EXIT_OK


def _task_from_args(args) -> SearchTask:
    if args.task:
        raw = json.loads(Path(args.task).read_text(encoding="ascii"))
        return SearchTask.from_json(raw)
    if args.n is None or args.k is None:
        raise ValueError("search needs --task or both --n and --k")
    forbidden = []
    for token in args.pattern or ():
        if "@" in token:
            name, _, col = token.rpartition("@")
            forbidden.append((parse_pattern(name), int(col)))
        else:
            forbidden.append((parse_pattern(token), None))
    return SearchTask(
        n=args.n,
        k=args.k,
        forbidden=tuple(forbidden),
        forbid_rainbow_triangle=args.forbid_rainbow,
        symmetry=args.symmetry,
        node_limit=args.node_limit,
        seed=args.seed,
    )


def cmd_search(args) -> int:
    if args.threads < 1:
        raise ValueError(f"--threads must be at least 1, got {args.threads}")
    task = _task_from_args(args)
    outcome = search_witness(task)
    report = {
        "status": outcome.status,
        "nodes": outcome.stats.nodes,
        "prunes": outcome.stats.prunes,
        "restarts": outcome.stats.restarts,
        "elapsed": round(outcome.stats.elapsed, 6),
        "witness_digest": None,
    }
    if outcome.witness is not None:
        report["witness_digest"] = canonical_digest(outcome.witness)
        if args.out:
            doc = ColoringDocument.sealed(
                outcome.witness,
                provenance={"kind": "search", "task": task.to_json()},
            )
            write_document(args.out, doc, args.format)
    _print_json(report)
    if outcome.status == "witness":
        return EXIT_OK
    if outcome.status == "exhausted":
        return EXIT_VIOLATION
    return EXIT_LIMIT


def cmd_random(args) -> int:
    c = random_gallai(args.n, args.k, args.seed)
    doc = ColoringDocument.sealed(
        c, provenance={"kind": "random", "n": args.n, "k": args.k, "seed": args.seed}
    )
    _emit(doc, args.out, args.format)
    return EXIT_OK


def cmd_convert(args) -> int:
    doc = read_document(args.input, args.in_format)
    _emit(doc, args.out, args.format)
    return EXIT_OK


def cmd_digest(args) -> int:
    doc = read_document(args.input, args.format)
    print(canonical_digest(doc.coloring))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gallai",
        description="Edge colorings of complete graphs: build lower-bound "
        "witnesses, verify properties, partition, and search.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build a recursive lower-bound witness")
    sp.add_argument("--k", type=int, required=True, help="number of colors (>= 2)")
    sp.add_argument("--base", help="base 2-coloring file (default: bundled base14)")
    sp.add_argument("--rim", type=int, default=4, help="even wheel rim length")
    sp.add_argument("--label", help="label for the base in the trace")
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a coloring against properties")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--pattern", help="monochromatic pattern to reject (e.g. w4)")
    sp.add_argument("--color", type=int, help="restrict the pattern to one color")
    sp.add_argument(
        "--gallai", action="store_true", help="also reject rainbow triangles"
    )
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("partition", help="find a Gallai partition")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", help="output JSON file (default: stdout)")
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("peel", help="peel apex vertices greedily")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_peel)

    sp = sub.add_parser("search", help="search for a constraint-satisfying coloring")
    sp.add_argument("--task", help="task JSON file (overrides the flags below)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument(
        "--pattern",
        action="append",
        help="forbid a monochromatic pattern, e.g. w4 or k3@2 (repeatable)",
    )
    sp.add_argument("--forbid-rainbow", action="store_true")
    sp.add_argument(
        "--symmetry", choices=("none", "colorSwap", "vertexOrder"), default="colorSwap"
    )
    sp.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for compatibility; the engine is single-threaded and "
        "results do not depend on this value",
    )
    sp.add_argument("--out", help="write the witness coloring here if found")
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("random", help="sample a rainbow-triangle-free coloring")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("convert", help="convert between the text and JSON formats")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--in-format", choices=("grc", "json"))
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("digest", help="print the canonical digest of a coloring")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--format", choices=("grc", "json"))
    sp.set_defaults(func=cmd_digest)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())
