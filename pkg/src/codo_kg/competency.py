"""The eight competency questions as canned, parameterized queries."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Graph
from .query import SolutionTable, run_query, to_json_results, to_text_table
from .schema import SchemaAxioms, build_codo_vocabulary
from .terms import CODO, Term, XSD_DATETIME, normalize_datetime

CONTACTS_QUERY = """\
PREFIX owl: <http://www.w3.org/2002/07/owl#>
PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
PREFIX codo: <http://www.isibang.ac.in/ns/codo#>
PREFIX schema: <https://schema.org/>

SELECT ?p ?r
WHERE {
  ?p rdf:type schema:Patient.
  ?p codo:hasDiagnosis ?d.
  ?d rdf:type codo:COVID-19Diagnosis.
  ?p codo:hasCloseRelationship ?r.
  ?r codo:hadCovidTest false.
}
"""

_PREFIXES = """\
PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
PREFIX codo: <http://www.isibang.ac.in/ns/codo#>
PREFIX schema: <https://schema.org/>
"""

FAMILY_PROPERTIES = (CODO.hasChild, CODO.hasSpouse, CODO.hasParent, CODO.hasDaughter, CODO.hasSon)


@dataclass(frozen=True)
class SuiteParams:
    place: Term = CODO.Karnataka
    until: str = "2020-07-31T00:00:00"
    country: Term = CODO.India
    patient: Term = CODO.p000003


@dataclass(frozen=True)
class Question:
    number: str
    text: str
    query: str


@dataclass
class SuiteReport:
    results: list[tuple[Question, SolutionTable]] = field(default_factory=list)

    def __getitem__(self, number: str) -> SolutionTable:
        for question, table in self.results:
            if question.number == number:
                return table
        raise KeyError(number)

    def to_text(self) -> str:
        parts = []
        for question, table in self.results:
            parts.append(f"[{question.number}] {question.text}\n\n{question.query.rstrip()}\n\n{to_text_table(table)}")
        return "\n".join(parts)

    def to_json(self) -> str:
        """One JSON document per line: question number, text and SPARQL JSON results."""
        lines = []
        for question, table in self.results:
            doc = {"question": question.number, "text": question.text,
                   "results": json.loads(to_json_results(table))}
            lines.append(json.dumps(doc, ensure_ascii=False, separators=(",", ":")))
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=1)
def _default_axioms() -> SchemaAxioms:
    return build_codo_vocabulary()[1]


def _filter_any(var: str, props) -> str:
    return " || ".join(f"{var} = <{p.value}>" for p in props)


def relationship_properties(axioms: SchemaAxioms) -> list[Term]:
    """Strict sub-properties of hasRelationship, sorted by IRI."""
    subs = {sub for sub, _ in axioms.sub_property_of}
    found = [p for p in subs if CODO.hasRelationship in axioms.super_properties(p) and p != CODO.hasRelationship]
    return sorted(found, key=Term.sort_key)


def build_questions(params: SuiteParams | None = None, axioms: SchemaAxioms | None = None) -> list[Question]:
    params = params or SuiteParams()
    axioms = axioms or _default_axioms()
    until = normalize_datetime(params.until)
    related = relationship_properties(axioms)
    family = sorted(FAMILY_PROPERTIES, key=Term.sort_key)
    return [
        Question("I", "Recovered patients living in place p, diagnosed on or before date t", _PREFIXES + f"""
SELECT (COUNT(DISTINCT ?p) AS ?recovered)
WHERE {{
  ?p rdf:type codo:Patient ;
     codo:status codo:Recovered ;
     codo:residesIn <{params.place.value}> ;
     codo:diagnosedOn ?date .
  FILTER (?date <= "{until}"^^<{XSD_DATETIME}>)
}}
"""),
        Question("II", "Deceased patients living in country c", _PREFIXES + f"""
SELECT (COUNT(DISTINCT ?p) AS ?deceased)
WHERE {{
  ?p rdf:type codo:Patient ;
     codo:status codo:Deceased ;
     codo:residesIn ?place .
  ?place codo:isLocatedIn <{params.country.value}> .
}}
"""),
        Question("III", "Places patient p travelled from", _PREFIXES + f"""
SELECT ?place
WHERE {{
  <{params.patient.value}> codo:travelledFrom ?place .
}}
"""),
        Question("IV", "Pairs of people linked by any relationship property, with the property", _PREFIXES + f"""
SELECT ?p ?relationship ?r
WHERE {{
  ?p ?relationship ?r .
  FILTER ({_filter_any("?relationship", related)})
}}
ORDER BY ?p ?relationship ?r
"""),
        Question("V", "Pairs of people linked by a family relationship property", _PREFIXES + f"""
SELECT ?p ?relationship ?r
WHERE {{
  ?p ?relationship ?r .
  FILTER ({_filter_any("?relationship", family)})
}}
ORDER BY ?p ?relationship ?r
"""),
        Question("VI", "Suspected infection reasons ranked by number of patients", _PREFIXES + """
SELECT ?reason (COUNT(DISTINCT ?p) AS ?patients)
WHERE {
  ?p codo:suspectedReasonOfInfection ?reason .
}
GROUP BY ?reason
ORDER BY DESC(?patients) ?reason
"""),
        Question("VII", "Symptoms of severe COVID-19 patients ranked by number of patients", _PREFIXES + """
SELECT ?symptom (COUNT(DISTINCT ?p) AS ?patients)
WHERE {
  ?p codo:hasDiagnosis ?d ;
     codo:hasSymptom ?symptom .
  ?d codo:identifiesDisease ?disease .
  ?disease rdf:type codo:SevereCovid19 .
}
GROUP BY ?symptom
ORDER BY DESC(?patients) ?symptom
"""),
        Question("VIII", "Untested close contacts r of diagnosed patients p", CONTACTS_QUERY),
    ]


def competency_suite(graph: Graph, axioms: SchemaAxioms | None = None,
                     params: SuiteParams | None = None) -> SuiteReport:
    """Run questions I to VIII against an already materialized graph."""
    report = SuiteReport()
    for question in build_questions(params, axioms):
        report.results.append((question, run_query(question.query, graph)))
    return report
