"""Hypothesis strategies shared by the property tests."""

from decimal import Decimal

from hypothesis import strategies as st

from codo_kg.terms import (
    CODO,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_INTEGER,
    Term,
    Triple,
)

EX = "http://example.org/"

iris = st.integers(0, 30).map(lambda i: Term.iri(f"{EX}n{i}"))
predicates = st.sampled_from([Term.iri(f"{EX}p{i}") for i in range(6)] + [CODO.hasChild, CODO.age])
blanks = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,6}", fullmatch=True).map(Term.blank)

text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), min_codepoint=1, max_codepoint=0x2FFF),
    max_size=12,
)
literals = st.one_of(
    text.map(Term.literal),
    st.tuples(text, st.sampled_from(["en", "hi", "kn-in"])).map(lambda a: Term.literal(a[0], lang=a[1])),
    st.integers(-10**6, 10**6).map(lambda n: Term.literal(str(n), XSD_INTEGER)),
    st.decimals(allow_nan=False, allow_infinity=False, places=3, min_value=Decimal(-1000), max_value=Decimal(1000))
    .map(lambda d: Term.literal(str(d), XSD_DECIMAL)),
    st.booleans().map(lambda b: Term.literal("true" if b else "false", XSD_BOOLEAN)),
    st.datetimes().map(lambda d: Term.literal(d.replace(microsecond=0).isoformat(), XSD_DATETIME)),
)

triples = st.builds(
    Triple,
    st.one_of(iris, blanks),
    predicates,
    st.one_of(iris, blanks, literals),
)

graphs = st.lists(triples, max_size=40)
