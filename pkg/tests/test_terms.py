from decimal import Decimal

import pytest

from codo_kg.errors import InvalidLiteralError, MalformedTripleError, UnresolvedPrefixError
from codo_kg.terms import (
    CODO,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_STRING,
    Term,
    Triple,
    compact,
    normalize_datetime,
    resolve_term,
)


def test_iri_equality_is_by_value():
    assert Term.iri(CODO.p000001.value) == CODO.p000001
    assert CODO["COVID-19Diagnosis"].value.endswith("#COVID-19Diagnosis")


@pytest.mark.parametrize("raw,expected", [
    ("2020-03-09T", "2020-03-09T00:00:00"),
    ("2020-03-09", "2020-03-09T00:00:00"),
    ("2020-03-09T10:15", "2020-03-09T10:15:00"),
    ("2020-03-09T10:15:30+05:30", "2020-03-09T10:15:30+05:30"),
])
def test_datetime_normalization(raw, expected):
    assert normalize_datetime(raw) == expected
    assert Term.literal(raw, XSD_DATETIME).value == expected


def test_boolean_literals_normalize():
    assert Term.literal("1", XSD_BOOLEAN).value == "true"
    assert Term.literal("false", XSD_BOOLEAN).value == "false"
    assert Term.literal(True) == Term.literal("true", XSD_BOOLEAN)


def test_invalid_lexical_forms_raise():
    with pytest.raises(InvalidLiteralError):
        Term.literal("forty", XSD_DECIMAL)
    with pytest.raises(InvalidLiteralError):
        Term.literal("maybe", XSD_BOOLEAN)


def test_plain_literal_defaults_to_string():
    lit = Term.literal("India")
    assert lit.datatype == XSD_STRING
    assert lit.n3() == '"India"'


def test_n3_escapes_non_ascii():
    assert Term.literal("Bengaluru é\n").n3() == '"Bengaluru \\u00E9\\n"'


def test_to_python():
    assert Term.literal("41", XSD_DECIMAL).to_python() == Decimal("41")
    assert Term.literal("true", XSD_BOOLEAN).to_python() is True
    assert CODO.p000001.to_python() is None


def test_sort_key_orders_blank_iri_literal():
    terms = [Term.literal("a"), CODO.x, Term.blank("b")]
    assert [t.kind for t in sorted(terms, key=Term.sort_key)] == ["blank", "iri", "literal"]


def test_triple_check_rejects_literal_subject():
    with pytest.raises(MalformedTripleError):
        Triple(Term.literal("x"), RDF_TYPE, CODO.Patient).check()
    with pytest.raises(MalformedTripleError):
        Triple(CODO.a, Term.literal("p"), CODO.b).check()


def test_resolve_term_forms():
    assert resolve_term("codo:Patient") == CODO.Patient
    assert resolve_term("<http://example.org/x>") == Term.iri("http://example.org/x")
    assert resolve_term("false") == Term.literal("false", XSD_BOOLEAN)
    assert resolve_term('"41"^^xsd:decimal') == Term.literal("41", XSD_DECIMAL)
    assert resolve_term('"hi"@en').lang == "en"
    assert resolve_term("_:b1").is_blank


def test_unknown_prefix_raises():
    with pytest.raises(UnresolvedPrefixError) as info:
        resolve_term("nope:x")
    assert info.value.prefix == "nope"


def test_compact_uses_prefixes():
    prefixes = {"codo": "http://www.isibang.ac.in/ns/codo#"}
    assert compact(CODO.p000001, prefixes) == "codo:p000001"
    assert compact(Term.iri("http://other/x"), prefixes) == "<http://other/x>"
