"""``codo-kg`` command line: load, ingest, reason, query, suite, stats, export, serve.

Commands share a workspace directory (``--workspace``, ``$CODO_WS`` or
``./codo-ws``) so they compose across invocations::

    codo-kg load --codo
    codo-kg ingest cases.csv --rule codo.mm
    codo-kg reason
    codo-kg query -e 'SELECT ...'
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import __version__
from .competency import SuiteParams, competency_suite
from .errors import CodoError
from .mapping import CaseTable, IngestConfig, ingest, parse_mapping_rule
from .query import parse_query, evaluate, to_json_results, to_text_table
from .reasoner import explain
from .terms import Triple, compact, resolve_term
from .workspace import Workspace, data_path


def _workspace(args) -> Workspace:
    return Workspace.open(args.workspace)


def cmd_load(args, out) -> int:
    ws = _workspace(args)
    files = list(args.files)
    if args.codo:
        files.insert(0, str(data_path("codo.ttl")))
    if not files:
        raise CodoError("load: give a file or --codo")
    for path in files:
        report = ws.load(path, strict=not args.lenient)
        print(f"{path}: {report.triple_count} triples", file=out)
        for lineno, message in report.line_errors:
            print(f"  line {lineno}: {message}", file=out)
    ws.save()
    print(f"workspace: {len(ws.graph)} triples", file=out)
    return 0


def cmd_ingest(args, out) -> int:
    ws = _workspace(args)
    with open(args.rule, encoding="utf-8") as fh:
        rule = parse_mapping_rule(fh.read())
    table = CaseTable.from_csv(args.csv)
    config = IngestConfig(naming=args.naming, sentinel_filter=not args.no_sentinel_filter)
    start = time.perf_counter()
    added, report = ingest(rule, table, ws.graph, config)
    elapsed = time.perf_counter() - start
    if added:
        ws.touched()
    ws.save()
    out.write(report.summary())
    print(f"triples added:       {len(added)}  ({elapsed:.2f} s)", file=out)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write(report.to_jsonl())
    return 0


def cmd_reason(args, out) -> int:
    ws = _workspace(args)
    start = time.perf_counter()
    report = ws.reason(backend=args.backend)
    elapsed = time.perf_counter() - start
    ws.save()
    print(f"asserted: {report.asserted_count}", file=out)
    print(f"inferred: {report.inferred_count}", file=out)
    print(f"passes:   {report.iterations}", file=out)
    print(f"backend:  {report.backend}  ({elapsed:.2f} s)", file=out)
    for cls, members in sorted(report.defined_class_memberships.items(), key=lambda kv: kv[0].value):
        print(f"{compact(cls, ws.graph.prefixes)}: {len(members)} members", file=out)
    return 0


def _query_text(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.file is None:
        raise CodoError("query: give a query file or -e TEXT")
    with open(args.file, encoding="utf-8") as fh:
        return fh.read()


def cmd_query(args, out) -> int:
    text = _query_text(args)
    ast = parse_query(text)
    ws = _workspace(args)
    if not ws.materialized:
        logging.getLogger(__name__).info("workspace is not materialized; answers exclude inferences")
    table = evaluate(ast, ws.graph)
    if args.json:
        out.write(to_json_results(table) + "\n")
    else:
        out.write(to_text_table(table, ws.graph.prefixes))
    return 0


def cmd_suite(args, out) -> int:
    ws = _workspace(args)
    params = SuiteParams()
    overrides = {}
    if args.place:
        overrides["place"] = ws.graph.resolve(args.place)
    if args.until:
        overrides["until"] = args.until
    if args.country:
        overrides["country"] = ws.graph.resolve(args.country)
    if args.patient:
        overrides["patient"] = ws.graph.resolve(args.patient)
    if overrides:
        params = SuiteParams(**{**params.__dict__, **overrides})
    report = competency_suite(ws.graph, ws.axioms, params)
    out.write(report.to_json() if args.json else report.to_text())
    return 0


def cmd_stats(args, out) -> int:
    stats = _workspace(args).stats()
    if args.json:
        out.write(json.dumps(stats, indent=2) + "\n")
        return 0
    print(f"triples:      {stats['triples']}", file=out)
    print(f"asserted:     {stats['asserted']}", file=out)
    print(f"inferred:     {stats['inferred']}", file=out)
    print(f"materialized: {'yes' if stats['materialized'] else 'no'}", file=out)
    if stats["classes"]:
        print("\nclass instances:", file=out)
        for name, n in stats["classes"].items():
            print(f"  {n:>8}  {name}", file=out)
    if stats["properties"]:
        print("\nproperty usage:", file=out)
        for name, n in stats["properties"].items():
            print(f"  {n:>8}  {name}", file=out)
    return 0


def cmd_export(args, out) -> int:
    n = _workspace(args).export(args.out, include_inferred=args.inferred)
    print(f"{args.out}: {n} triples", file=out)
    return 0


def cmd_explain(args, out) -> int:
    ws = _workspace(args)
    g = ws.graph
    t = Triple(resolve_term(args.subject, g.prefixes), resolve_term(args.predicate, g.prefixes),
               resolve_term(args.object, g.prefixes))
    steps = explain(g, ws.axioms, t)
    if not steps:
        print("asserted", file=out)
        return 0

    def show(t: Triple) -> str:
        return " ".join(compact(x, g.prefixes) for x in t)

    for step in steps:
        premises = " ; ".join(show(p) for p in step.premises)
        print(f"{step.rule}: {show(step.conclusion)}\n    from {premises}", file=out)
    return 0


def cmd_serve(args, out) -> int:
    from .endpoint import make_server

    ws = _workspace(args)
    if not ws.materialized:
        print("warning: workspace is not materialized; run `codo-kg reason` first", file=sys.stderr)
    server = make_server(ws.graph, args.host, args.port, args.max_concurrent)
    print(f"serving http://{args.host}:{server.port}/sparql", file=out, flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codo-kg", description="COVID-19 case knowledge graph toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--workspace", "-w", default=None,
                        help="workspace directory (default: $CODO_WS or ./codo-ws)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("load", help="add an N-Triples or Turtle file to the workspace")
    p.add_argument("files", nargs="*", metavar="FILE")
    p.add_argument("--codo", action="store_true", help="load the bundled CODO vocabulary first")
    p.add_argument("--lenient", action="store_true", help="skip bad N-Triples lines instead of failing")
    p.set_defaults(func=cmd_load)

    p = sub.add_parser("ingest", help="transform a case sheet with a mapping rule")
    p.add_argument("csv")
    p.add_argument("--rule", required=True, help="transformation rule file")
    p.add_argument("--naming", choices=("padded", "hash"), default="padded")
    p.add_argument("--no-sentinel-filter", action="store_true",
                   help="keep age 0, 1900-01-01 dates and similar placeholder values")
    p.add_argument("--log", help="write the skip log as JSON lines to this file")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("reason", help="materialize inferences")
    p.add_argument("--backend", choices=("cython", "python"), default=None)
    p.set_defaults(func=cmd_reason)

    p = sub.add_parser("query", help="run a SPARQL SELECT query")
    p.add_argument("file", nargs="?")
    p.add_argument("-e", dest="expr", metavar="TEXT", help="query text")
    p.add_argument("--json", action="store_true", help="print SPARQL JSON results")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("suite", help="run the competency questions")
    p.add_argument("--json", action="store_true")
    p.add_argument("--place", help="place for question I (default codo:Karnataka)")
    p.add_argument("--until", help="date for question I (default 2020-07-31)")
    p.add_argument("--country", help="country for question II (default codo:India)")
    p.add_argument("--patient", help="patient for question III (default codo:p000003)")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("stats", help="triple, class and property counts")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", help="write the workspace as canonical N-Triples")
    p.add_argument("out")
    p.add_argument("--inferred", action="store_true", help="include inferred triples")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("explain", help="show how a triple was derived")
    p.add_argument("subject")
    p.add_argument("predicate")
    p.add_argument("object")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("serve", help="serve a read-only SPARQL endpoint")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--max-concurrent", type=int, default=16)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (CodoError, OSError, ValueError) as exc:
        print(f"codo-kg {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
