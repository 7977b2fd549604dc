"""A directory holding the current graph as canonical N-Triples.

Layout::

    asserted.nt      triples loaded or ingested
    inferred.nt      triples added by the reasoner
    workspace.json   prefixes and the materialized flag
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .graph import Graph
from .reasoner import InferenceReport, materialize
from .schema import SchemaAxioms, extract_schema
from .serialization import ParseReport, load_file, parse_ntriples, serialize_ntriples
from .terms import DEFAULT_PREFIXES, RDF_TYPE, compact

DEFAULT_WORKSPACE = "codo-ws"


def data_path(name: str) -> Path:
    """Path of a file shipped in the package's data directory."""
    return Path(str(resources.files("codo_kg") / "data" / name))


def default_location() -> Path:
    return Path(os.environ.get("CODO_WS") or DEFAULT_WORKSPACE)


class Workspace:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_location()
        self.graph = Graph(prefixes=DEFAULT_PREFIXES)
        self.materialized = False
        self._axioms: SchemaAxioms | None = None

    @classmethod
    def open(cls, path=None) -> Workspace:
        ws = cls(path)
        asserted = ws.path / "asserted.nt"
        if asserted.exists():
            parse_ntriples(asserted.read_text(encoding="utf-8"), ws.graph)
            inferred = ws.path / "inferred.nt"
            if inferred.exists():
                parse_ntriples(inferred.read_text(encoding="utf-8"), ws.graph, inferred=True)
            meta = ws.path / "workspace.json"
            if meta.exists():
                info = json.loads(meta.read_text(encoding="utf-8"))
                ws.materialized = bool(info.get("materialized"))
                for prefix, ns in info.get("prefixes", {}).items():
                    ws.graph.bind(prefix, ns)
        return ws

    def save(self) -> None:
        self.path.mkdir(parents=True, exist_ok=True)
        _write(self.path / "asserted.nt", serialize_ntriples(self.graph, "asserted"))
        _write(self.path / "inferred.nt", serialize_ntriples(self.graph, "inferred"))
        meta = {"materialized": self.materialized, "prefixes": dict(sorted(self.graph.prefixes.items()))}
        _write(self.path / "workspace.json", json.dumps(meta, indent=2, sort_keys=True) + "\n")

    @property
    def axioms(self) -> SchemaAxioms:
        if self._axioms is None:
            self._axioms = extract_schema(self.graph)
        return self._axioms

    def touched(self) -> None:
        """Record a mutation: the closure and cached axioms are stale."""
        self.materialized = False
        self._axioms = None

    def load(self, path, strict: bool = True) -> ParseReport:
        report = load_file(path, self.graph, strict=strict)
        if report.triple_count:
            self.touched()
        return report

    def reason(self, backend: str | None = None) -> InferenceReport:
        report = materialize(self.graph, self.axioms, backend=backend)
        self.materialized = True
        return report

    def export(self, out, include_inferred: bool = False) -> int:
        which = "all" if include_inferred else "asserted"
        text = serialize_ntriples(self.graph, which)
        _write(Path(out), text)
        return text.count("\n")

    def stats(self) -> dict:
        g = self.graph
        classes: dict[str, int] = {}
        type_id = g.lookup_id(RDF_TYPE)
        if type_id is not None:
            for _, _, o in g.match_ids(None, type_id, None):
                name = compact(g.term(o), g.prefixes)
                classes[name] = classes.get(name, 0) + 1
        properties: dict[str, int] = {}
        for _, p, _ in g.match_ids():
            properties[p] = properties.get(p, 0) + 1
        usage = {compact(g.term(p), g.prefixes): n for p, n in properties.items()}
        return {
            "triples": len(g),
            "asserted": len(g) - g.inferred_count,
            "inferred": g.inferred_count,
            "materialized": self.materialized,
            "classes": dict(sorted(classes.items(), key=lambda kv: (-kv[1], kv[0]))),
            "properties": dict(sorted(usage.items(), key=lambda kv: (-kv[1], kv[0]))),
        }


def _write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)
