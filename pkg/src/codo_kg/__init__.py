"""Knowledge-graph toolkit for the CODO COVID-19 case ontology.

Build the vocabulary, ingest case sheets, materialize inferences and answer
SPARQL queries::

    from codo_kg import build_codo_vocabulary, materialize, run_query

    graph, axioms = build_codo_vocabulary()
    ...
    materialize(graph, axioms)
    table = run_query("SELECT ?p WHERE { ?p a codo:Patient }", graph)
"""

__version__ = "0.1.0"

from .errors import CodoError
from .graph import Graph
from .mapping import CaseTable, IngestConfig, apply_mapping, ingest, link_relationships, parse_mapping_rule
from .query import evaluate, parse_query, run_query, to_json_results
from .reasoner import explain, is_entailed, materialize
from .schema import build_codo_vocabulary, extract_schema, resolve_by_label
from .serialization import parse_ntriples, parse_turtle, serialize_ntriples, serialize_turtle
from .terms import CODO, FOAF, OWL, RDF, RDFS, SCHEMA, XSD, Term, Triple

__all__ = [
    "CODO", "FOAF", "OWL", "RDF", "RDFS", "SCHEMA", "XSD",
    "CaseTable", "CodoError", "Graph", "IngestConfig", "Term", "Triple",
    "apply_mapping", "build_codo_vocabulary", "evaluate", "explain", "extract_schema",
    "ingest", "is_entailed", "link_relationships", "materialize", "parse_mapping_rule",
    "parse_ntriples", "parse_query", "parse_turtle", "resolve_by_label", "run_query",
    "serialize_ntriples", "serialize_turtle", "to_json_results",
]
