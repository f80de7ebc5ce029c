"""Command-line entry point: run the law suites, evaluate diagrams,
run the round trip.

Reports are line-delimited JSON records so CI can diff them; --summary
prints a human table instead.  Exit codes: 0 all clauses pass, 1 law
failure, 2 configuration or parse error, 3 oracle mismatch under
``eval --check``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import doctrine as doctrine_mod
from . import extraction, uwd
from .doubling import PDot, verify_pdot
from .errors import DoctrinaError
from .finset import (
    AdequateTriple,
    FinFn,
    FinSet,
    MorClass,
    check_adequate_triple,
    injection_right_triple,
    surjection_triple,
    trivial_triple,
)
from .report import Report
from .spancat import SpanCategory

MAX_UNGUARDED_SIZE = 4

TRIPLES = {
    "all-all": trivial_triple,
    "surj-right": surjection_triple,
    "inj-right": injection_right_triple,
}


def _class_from_spec(spec) -> MorClass:
    if spec == "all":
        return MorClass.all()
    if spec == "inj":
        return MorClass.injections()
    if spec == "surj":
        return MorClass.surjections()
    if isinstance(spec, dict) and "explicit" in spec:
        maps = [
            FinFn(FinSet(m["dom"]), FinSet(m["cod"]), tuple(m["table"]))
            for m in spec["explicit"]
        ]
        return MorClass.explicit(maps)
    raise ValueError(f"bad class spec {spec!r}")


def load_triple_file(path: str) -> AdequateTriple:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return AdequateTriple(
        universe=int(doc.get("universe", 3)),
        left=_class_from_spec(doc.get("left", "all")),
        right=_class_from_spec(doc.get("right", "all")),
        nonempty_only=bool(doc.get("nonempty_only", False)),
    )


def _resolve_triple(args) -> AdequateTriple:
    if getattr(args, "triple_file", None):
        return load_triple_file(args.triple_file)
    return TRIPLES[args.triple](max(args.max_size, 1))


def _doctrines(args, triple):
    out = []
    if args.fiber in ("powerset", "both"):
        out.append(("powerset", doctrine_mod.powerset_doctrine(triple)))
    if args.fiber in ("tropical", "both"):
        out.append(("tropical", doctrine_mod.tropical_doctrine(triple, args.k)))
    return out


def _prefix(report: Report, tag: str) -> Report:
    if tag:
        for c in report.clauses:
            c.clause = f"{tag}.{c.clause}"
    return report


def _emit(report: Report, args) -> None:
    payload = report.summary() if args.summary else report.to_jsonl()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_jsonl() + "\n")
        if args.summary:
            print(payload)
    else:
        print(payload)


def _guard_size(args) -> None:
    if args.max_size > MAX_UNGUARDED_SIZE and not args.force:
        raise ValueError(
            f"max-size {args.max_size} above the cost guard "
            f"({MAX_UNGUARDED_SIZE}); rerun with --force"
        )
    if args.max_size < 1:
        raise ValueError("max-size must be at least 1")


def cmd_verify(args) -> int:
    _guard_size(args)
    triple = _resolve_triple(args)
    jobs = args.jobs or int(os.environ.get("DOCTRINA_JOBS", "1"))

    adequacy = check_adequate_triple(triple)
    tasks = [
        ("", lambda: SpanCategory(triple).check_triangles(args.max_size))
    ]
    if adequacy.passed:
        for name, d in _doctrines(args, triple):
            tasks.append(
                (name, lambda d=d: doctrine_mod.check_doctrine(d, args.max_size))
            )
            tasks.append(
                (
                    f"{name}.double",
                    lambda d=d: verify_pdot(PDot(d), args.max_size),
                )
            )
    else:
        adequacy.clauses[0].note(
            "triple failed adequacy; fiber suites skipped on this configuration"
        )

    report = Report().extend(adequacy)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [(tag, pool.submit(fn)) for tag, fn in tasks]
            for tag, fut in futures:
                report.extend(_prefix(fut.result(), tag))
    else:
        for tag, fn in tasks:
            report.extend(_prefix(fn(), tag))
    _emit(report, args)
    return 0 if report.passed else 1


def cmd_roundtrip(args) -> int:
    _guard_size(args)
    triple = _resolve_triple(args)
    report = Report()
    for name, d in _doctrines(args, triple):
        report.extend(_prefix(extraction.roundtrip(d, args.max_size), name))
    _emit(report, args)
    return 0 if report.passed else 1


def cmd_eval(args) -> int:
    corpus = uwd.load_corpus_file(args.input, cap=args.k)
    if args.diagram not in corpus.diagrams:
        raise ValueError(f"no diagram named {args.diagram!r}")
    if args.system not in corpus.systems:
        raise ValueError(f"no system named {args.system!r}")
    w = corpus.diagrams[args.diagram]
    system, semantics = corpus.systems[args.system]
    triple = trivial_triple(max(3, args.max_size))
    if semantics == "rel":
        d = doctrine_mod.powerset_doctrine(triple)
    else:
        d = doctrine_mod.tropical_doctrine(triple, args.k)
    result = uwd.evaluate(w, system, d, corpus.types)
    print(uwd.format_predicate(result, semantics, corpus.types, args.k))

    if args.check:
        if semantics == "rel":
            members = uwd.rel_tuples(system.predicate, system.context, corpus.types)
            expect = uwd.relational_oracle(w, members, corpus.types)
            got = uwd.rel_tuples(result.predicate, result.context, corpus.types)
        else:
            costs = uwd.trop_costs(system.predicate, system.context, corpus.types, args.k)
            expect = uwd.tropical_oracle(w, costs, corpus.types, args.k)
            got = uwd.trop_costs(result.predicate, result.context, corpus.types, args.k)
        if got != expect:
            print(f"oracle mismatch: expected {expect!r}, got {got!r}", file=sys.stderr)
            return 3
        print("oracle: match", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doctrina",
        description="machine-checked span doctrines and wiring-diagram evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--max-size", type=int, default=2,
                       help="enumeration bound on set sizes (default 2)")
        p.add_argument("--k", type=int, default=3,
                       help="cost cap for the tropical fiber (default 3)")
        p.add_argument("--fiber", choices=["powerset", "tropical", "both"],
                       default="both")
        p.add_argument("--triple", choices=sorted(TRIPLES), default="all-all")
        p.add_argument("--triple-file", help="JSON file describing a custom triple")
        p.add_argument("--jobs", type=int, default=0,
                       help="worker threads (default: DOCTRINA_JOBS or 1)")
        p.add_argument("--out", help="write the JSONL report to this path")
        p.add_argument("--summary", action="store_true",
                       help="print a human table instead of JSONL")
        p.add_argument("--force", action="store_true",
                       help="allow max-size beyond the cost guard")

    pv = sub.add_parser("verify", help="run the law suites")
    common(pv)
    pv.set_defaults(fn=cmd_verify)

    pr = sub.add_parser("roundtrip", help="extract the double data back")
    common(pr)
    pr.set_defaults(fn=cmd_roundtrip)

    pe = sub.add_parser("eval", help="evaluate a wiring diagram on a system")
    pe.add_argument("--input", required=True, help="diagram/system JSON file")
    pe.add_argument("--diagram", required=True)
    pe.add_argument("--system", required=True)
    pe.add_argument("--k", type=int, default=3)
    pe.add_argument("--max-size", type=int, default=3)
    pe.add_argument("--check", action="store_true",
                    help="compare against the brute-force oracle")
    pe.set_defaults(fn=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DoctrinaError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
