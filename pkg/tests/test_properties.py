"""Randomized equivalence checks against the naive oracles."""

from hypothesis import given, settings, strategies as st

from codo_kg import saturate
from codo_kg.graph import Graph
from codo_kg.reasoner import materialize
from codo_kg.schema import DefinedClass, HasValue, NamedClass, SchemaAxioms, SomeValuesFrom
from codo_kg.terms import RDF_TYPE, Term, Triple, XSD_BOOLEAN, XSD_STRING

from oracles import naive_closure, subproperty_closure

EX = "http://example.org/"
PROPS = [Term.iri(f"{EX}prop{i}") for i in range(6)]
CLASSES = [Term.iri(f"{EX}C{i}") for i in range(5)]
FLAGS = [Term.literal("true", XSD_BOOLEAN), Term.literal("false", XSD_BOOLEAN)]
LITERALS = FLAGS + [Term.literal("x")]


def individuals(n):
    return [Term.iri(f"{EX}i{k}") for k in range(n)]


pairs = lambda xs, ys, n: st.frozensets(st.tuples(st.sampled_from(xs), st.sampled_from(ys)), max_size=n)
subsets = lambda xs, n: st.frozensets(st.sampled_from(xs), max_size=n)

conjunct = st.one_of(
    st.builds(NamedClass, st.sampled_from(CLASSES)),
    st.builds(SomeValuesFrom, st.sampled_from(PROPS), st.sampled_from(CLASSES)),
    st.builds(HasValue, st.sampled_from(PROPS), st.sampled_from(FLAGS)),
)
defined = st.builds(DefinedClass, st.sampled_from(CLASSES),
                    st.lists(conjunct, min_size=1, max_size=3).map(tuple))

axioms_strategy = st.builds(
    SchemaAxioms,
    sub_class_of=pairs(CLASSES, CLASSES, 5),
    sub_property_of=pairs(PROPS, PROPS, 5),
    inverse_of=pairs(PROPS, PROPS, 2),
    transitive=subsets(PROPS, 2),
    symmetric=subsets(PROPS, 2),
    domains=pairs(PROPS, CLASSES, 2),
    ranges=pairs(PROPS, CLASSES + [Term.iri(XSD_STRING)], 2),
    defined_classes=st.lists(defined, max_size=2).map(tuple),
)


@st.composite
def graphs(draw, max_individuals=50, max_triples=80):
    inds = individuals(draw(st.integers(1, max_individuals)))
    obj = st.one_of(st.sampled_from(inds), st.sampled_from(LITERALS))
    facts = draw(st.lists(st.tuples(st.sampled_from(inds), st.sampled_from(PROPS), obj), max_size=max_triples))
    types = draw(st.lists(st.tuples(st.sampled_from(inds), st.sampled_from(CLASSES)), max_size=15))
    return [Triple(*f) for f in facts] + [Triple(i, RDF_TYPE, c) for i, c in types]


@settings(max_examples=500)
@given(graphs(), axioms_strategy, st.sampled_from(sorted(saturate.BACKENDS)))
def test_materialization_equals_naive_fixpoint(triples, axioms, backend):
    graph = Graph(triples)
    materialize(graph, axioms, backend=backend)
    assert graph.triple_set() == naive_closure(triples, axioms)
    assert {t for t in graph if not graph.is_inferred(t)} == set(triples)


@settings(max_examples=500)
@given(graphs(max_individuals=20), pairs(PROPS, PROPS, 8))
def test_subproperty_closure_equals_reachability(triples, edges):
    graph = Graph(triples)
    materialize(graph, SchemaAxioms(sub_property_of=edges))
    assert graph.triple_set() == subproperty_closure(triples, edges)


@settings(max_examples=100)
@given(graphs(max_individuals=20), axioms_strategy)
def test_backends_identical(triples, axioms):
    results = []
    for name in sorted(saturate.BACKENDS):
        g = Graph(triples)
        materialize(g, axioms, backend=name)
        results.append(g.triple_set())
    assert all(r == results[0] for r in results)
