import pytest

from codo_kg.errors import AmbiguousLabelError, SchemaCycleError, UnknownLabelError
from codo_kg.graph import Graph
from codo_kg.schema import (
    HasValue,
    NamedClass,
    SomeValuesFrom,
    build_codo_vocabulary,
    extract_schema,
    resolve_by_label,
    undeclared_references,
)
from codo_kg.serialization import parse_turtle, serialize_turtle
from codo_kg.terms import CODO, FALSE, FOAF, RDF_TYPE, RDFS, RDFS_LABEL, SCHEMA, Term, Triple


def test_vocabulary_is_self_consistent(vocab):
    graph, axioms = vocab
    assert extract_schema(graph) == axioms
    assert extract_schema(graph).unrecognized == ()
    assert undeclared_references(graph, axioms) == set()


def test_relationship_tree(vocab):
    _, axioms = vocab
    close = axioms.super_properties(CODO.hasDaughter)
    assert {CODO.hasChild, CODO.hasCloseRelationship, CODO.hasRelationship} <= close
    for prop in (CODO.hasSpouse, CODO.hasCoWorker, CODO.hasRoommate, CODO.hasParent):
        assert CODO.hasCloseRelationship in axioms.super_properties(prop)
    for prop in (CODO.hasAuntOrUncle, CODO.hasNieceOrNephew):
        supers = axioms.super_properties(prop)
        assert CODO.hasRelationship in supers
        assert CODO.hasCloseRelationship not in supers
    assert (CODO.hasChild, CODO.hasParent) in axioms.inverse_of
    assert {CODO.hasSpouse, CODO.hasCoWorker, CODO.hasRoommate, CODO.hasRelationship} <= axioms.symmetric


def test_class_hierarchy(vocab):
    _, axioms = vocab
    assert {FOAF.Person, SCHEMA.Patient} <= axioms.super_classes(CODO.Patient)
    assert CODO.CovidDedicatedFacility in axioms.super_classes(CODO.DedicatedCovidHospital)
    assert CODO.Disease in axioms.super_classes(CODO.SevereCovid19)


def test_urgently_needs_test_definition(vocab):
    _, axioms = vocab
    dc = axioms.defined(CODO.UrgentlyNeedsCovidTest)
    assert dc.conjuncts == (
        NamedClass(FOAF.Person),
        SomeValuesFrom(CODO.hasCloseRelationship, CODO.DiagnosedWithCovid),
        HasValue(CODO.hadCovidTest, FALSE),
    )


def test_turtle_round_trip_preserves_axioms(vocab):
    graph, axioms = vocab
    back = Graph()
    parse_turtle(serialize_turtle(graph), back)
    assert back == graph
    assert extract_schema(back) == axioms


def test_subclass_cycle_rejected():
    g = Graph([
        Triple(CODO.A, RDFS.subClassOf, CODO.B),
        Triple(CODO.B, RDFS.subClassOf, CODO.C),
        Triple(CODO.C, RDFS.subClassOf, CODO.A),
    ])
    with pytest.raises(SchemaCycleError) as info:
        extract_schema(g)
    assert set(info.value.cycle) >= {CODO.A, CODO.B, CODO.C}


def test_unrecognized_owl_is_reported():
    g = Graph([Triple(CODO.p, RDF_TYPE, Term.iri("http://www.w3.org/2002/07/owl#FunctionalProperty"))])
    assert extract_schema(g).unrecognized


def test_resolve_by_label(vocab):
    graph, _ = vocab
    assert resolve_by_label("diagnosed on", graph) == CODO.diagnosedOn
    assert resolve_by_label("has caused any secondary infections", graph) == CODO.hasCausedSecondaryInfections
    assert resolve_by_label("Patient", graph) == CODO.Patient
    assert resolve_by_label("HAS GENDER", graph) == CODO.hasGender
    with pytest.raises(UnknownLabelError):
        resolve_by_label("no such thing", graph)


def test_ambiguous_label():
    g = Graph([
        Triple(CODO.a, RDFS_LABEL, Term.literal("same")),
        Triple(CODO.b, RDFS_LABEL, Term.literal("same")),
    ])
    with pytest.raises(AmbiguousLabelError) as info:
        resolve_by_label("same", g)
    assert len(info.value.candidates) == 2
