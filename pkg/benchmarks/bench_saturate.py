"""Compare the compiled and pure-Python saturation kernels.

    python3 benchmarks/bench_saturate.py [--rows 23000] [--repeat 3]

Ingests a synthetic case sheet, then times each backend twice: the bare
kernel (R1 to R6 over interned ids) and full materialization on a fresh copy
of the asserted graph.  Both backends must produce the same triple set.
"""

import argparse
import statistics
import time

from codo_kg import saturate
from codo_kg.mapping import CaseTable, ingest, parse_mapping_rule
from codo_kg.reasoner import _kernel_tables, materialize
from codo_kg.schema import build_codo_vocabulary
from codo_kg.synthetic import generate_case_sheet
from codo_kg.workspace import data_path


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=23000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    graph, axioms = build_codo_vocabulary()
    rule = parse_mapping_rule(data_path("codo.mm").read_text(encoding="utf-8"))
    ingest(rule, CaseTable.from_text(generate_case_sheet(args.rows, args.seed)), graph)
    print(f"asserted triples: {len(graph)}")
    print(f"available backends: {', '.join(sorted(saturate.BACKENDS))} (default {saturate.BACKEND})")

    tables = _kernel_tables(graph, axioms)
    seeds = list(graph.match_ids())
    print("kernel only:")
    for name, cls in sorted(saturate.BACKENDS.items()):
        times = []
        for _ in range(args.repeat):
            kernel = cls(literal_ids=graph.literal_ids, **tables)
            start = time.perf_counter()
            derived = kernel.push(seeds)
            times.append(time.perf_counter() - start)
        print(f"{name:>8}: median {statistics.median(times):.3f} s  derived {len(derived)}")

    print("full materialization:")
    results = {}
    for name in sorted(saturate.BACKENDS):
        times = []
        for _ in range(args.repeat):
            g = graph.copy()
            start = time.perf_counter()
            report = materialize(g, axioms, backend=name)
            times.append(time.perf_counter() - start)
        results[name] = g.triple_set()
        print(f"{name:>8}: median {statistics.median(times):.3f} s  "
              f"min {min(times):.3f} s  inferred {report.inferred_count}")
    sets = list(results.values())
    assert all(s == sets[0] for s in sets), "backends disagree"
    if {"cython", "python"} <= results.keys():
        print("outputs identical")


if __name__ == "__main__":
    main()
