"""RDF terms, triples and namespace handling."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from datetime import datetime
from decimal import Decimal, InvalidOperation
from typing import NamedTuple

from .errors import InvalidLiteralError, MalformedTripleError, UnresolvedPrefixError

IRI_KIND = "iri"
LITERAL_KIND = "literal"
BLANK_KIND = "blank"

CODO_NS = "http://www.isibang.ac.in/ns/codo#"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
FOAF_NS = "http://xmlns.com/foaf/0.1/"
SCHEMA_NS = "https://schema.org/"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

DEFAULT_PREFIXES = {
    "codo": CODO_NS,
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "foaf": FOAF_NS,
    "schema": SCHEMA_NS,
    "xsd": XSD_NS,
}

XSD_STRING = XSD_NS + "string"
XSD_BOOLEAN = XSD_NS + "boolean"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_INTEGER = XSD_NS + "integer"
XSD_DOUBLE = XSD_NS + "double"
XSD_DATETIME = XSD_NS + "dateTime"
RDF_LANGSTRING = RDF_NS + "langString"

NUMERIC_DATATYPES = frozenset(
    XSD_NS + name
    for name in (
        "decimal", "integer", "double", "float", "int", "long", "short",
        "nonNegativeInteger", "positiveInteger", "negativeInteger", "nonPositiveInteger",
    )
)

_KIND_RANK = {BLANK_KIND: 0, IRI_KIND: 1, LITERAL_KIND: 2}
_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_INTEGER_RE = re.compile(r"^[+-]?\d+$")
_DOUBLE_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$|^(INF|-INF|NaN)$")
_DATE_ONLY_RE = re.compile(r"^(-?\d{4,}-\d{2}-\d{2})T?$")
_TZ_RE = re.compile(r"(Z|[+-]\d{2}:\d{2})$")
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_blank_counter = itertools.count()


@dataclass(frozen=True, slots=True)
class Term:
    """An IRI, literal or blank node.

    ``value`` holds the expanded IRI, the literal's lexical form or the blank
    node label.  Literals always carry a datatype; language-tagged strings use
    ``rdf:langString`` plus ``lang``.
    """

    kind: str
    value: str
    datatype: str | None = None
    lang: str | None = None

    @classmethod
    def iri(cls, value: str) -> Term:
        return cls(IRI_KIND, value)

    @classmethod
    def blank(cls, label: str | None = None) -> Term:
        if label is None:
            label = f"g{next(_blank_counter)}"
        return cls(BLANK_KIND, label)

    @classmethod
    def literal(cls, lexical, datatype: str | None = None, lang: str | None = None) -> Term:
        """Build a literal, normalizing the lexical form for known datatypes.

        Python ``bool``, ``int``, ``Decimal`` and ``datetime`` values are
        accepted and get the matching XSD datatype when none is given.
        """
        if isinstance(lexical, bool):
            datatype = datatype or XSD_BOOLEAN
            lexical = "true" if lexical else "false"
        elif isinstance(lexical, int):
            datatype = datatype or XSD_INTEGER
            lexical = str(lexical)
        elif isinstance(lexical, Decimal):
            datatype = datatype or XSD_DECIMAL
            lexical = str(lexical)
        elif isinstance(lexical, datetime):
            datatype = datatype or XSD_DATETIME
            lexical = lexical.isoformat(timespec="seconds")
        if lang:
            return cls(LITERAL_KIND, lexical, RDF_LANGSTRING, lang.lower())
        datatype = datatype or XSD_STRING
        return cls(LITERAL_KIND, normalize_lexical(lexical, datatype), datatype)

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI_KIND

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL_KIND

    @property
    def is_blank(self) -> bool:
        return self.kind == BLANK_KIND

    def n3(self) -> str:
        """N-Triples form with non-ASCII characters escaped."""
        if self.kind == IRI_KIND:
            return "<" + _escape_iri(self.value) + ">"
        if self.kind == BLANK_KIND:
            return "_:" + self.value
        text = '"' + escape_string(self.value, ascii_only=True) + '"'
        if self.lang:
            return text + "@" + self.lang
        if self.datatype == XSD_STRING:
            return text
        return text + "^^<" + _escape_iri(self.datatype) + ">"

    def sort_key(self):
        """Canonical term order: blank nodes, then IRIs, then literals."""
        return (_KIND_RANK[self.kind], self.value, self.datatype or "", self.lang or "")

    def to_python(self):
        """Native value of a literal (Decimal, bool, datetime or str); ``None`` for nodes."""
        if self.kind != LITERAL_KIND:
            return None
        return literal_value(self.value, self.datatype)

    def __str__(self):
        return self.n3()


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term

    def check(self) -> Triple:
        if self.subject.is_literal:
            raise MalformedTripleError(f"literal in subject position: {self.subject}")
        if not self.predicate.is_iri:
            raise MalformedTripleError(f"predicate must be an IRI: {self.predicate}")
        return self

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."


class Namespace(str):
    """IRI prefix whose attributes and items are expanded terms.

    >>> Namespace("http://example.org/")["a-b"].value
    'http://example.org/a-b'
    """

    def __getattr__(self, name: str) -> Term:
        if name.startswith("__"):
            raise AttributeError(name)
        return Term.iri(str(self) + name)

    def __getitem__(self, name) -> Term:
        if not isinstance(name, str):
            return str.__getitem__(self, name)
        return Term.iri(str(self) + name)


CODO = Namespace(CODO_NS)
RDF = Namespace(RDF_NS)
RDFS = Namespace(RDFS_NS)
OWL = Namespace(OWL_NS)
FOAF = Namespace(FOAF_NS)
SCHEMA = Namespace(SCHEMA_NS)
XSD = Namespace(XSD_NS)

RDF_TYPE = RDF.type
RDFS_LABEL = RDFS.label


def normalize_datetime(lexical: str) -> str:
    """Return an ISO-8601 dateTime with seconds precision.

    A missing time part (``2020-03-09T`` or ``2020-03-09``) becomes midnight;
    fractional seconds are truncated; a timezone suffix is kept.
    """
    text = lexical.strip()
    m = _DATE_ONLY_RE.match(text)
    if m:
        text = m.group(1) + "T00:00:00"
    tz = ""
    tzm = _TZ_RE.search(text)
    if tzm and "T" in text[: tzm.start()]:
        tz = tzm.group(1)
        text = text[: tzm.start()]
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        raise InvalidLiteralError(f"invalid xsd:dateTime {lexical!r}") from None
    return parsed.replace(microsecond=0).isoformat(timespec="seconds") + tz


def normalize_lexical(lexical: str, datatype: str) -> str:
    if datatype == XSD_BOOLEAN:
        folded = lexical.strip().lower()
        if folded in ("true", "1"):
            return "true"
        if folded in ("false", "0"):
            return "false"
        raise InvalidLiteralError(f"invalid xsd:boolean {lexical!r}")
    if datatype == XSD_DATETIME:
        return normalize_datetime(lexical)
    if datatype == XSD_DECIMAL:
        text = lexical.strip()
        if not _DECIMAL_RE.match(text):
            raise InvalidLiteralError(f"invalid xsd:decimal {lexical!r}")
        return text
    if datatype == XSD_INTEGER:
        text = lexical.strip()
        if not _INTEGER_RE.match(text):
            raise InvalidLiteralError(f"invalid xsd:integer {lexical!r}")
        return text
    return lexical


def literal_value(lexical: str, datatype: str | None):
    if datatype in NUMERIC_DATATYPES:
        if datatype == XSD_DOUBLE or datatype == XSD_NS + "float":
            if not _DOUBLE_RE.match(lexical):
                raise InvalidLiteralError(f"invalid number {lexical!r}")
            return float(lexical)
        try:
            return Decimal(lexical)
        except InvalidOperation:
            raise InvalidLiteralError(f"invalid number {lexical!r}") from None
    if datatype == XSD_BOOLEAN:
        return lexical == "true"
    if datatype == XSD_DATETIME:
        text = lexical[:-1] + "+00:00" if lexical.endswith("Z") else lexical
        return datetime.fromisoformat(text)
    return lexical


def is_absolute_iri(value: str) -> bool:
    return bool(_SCHEME_RE.match(value)) and not any(c in value for c in ' <>"{}|^`\\')


def escape_string(value: str, ascii_only: bool) -> str:
    out = []
    for ch in value:
        code = ord(ch)
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif code < 0x20 or (ascii_only and code > 0x7E):
            out.append(f"\\u{code:04X}" if code <= 0xFFFF else f"\\U{code:08X}")
        else:
            out.append(ch)
    return "".join(out)


def _escape_iri(value: str) -> str:
    if value.isascii():
        return value
    return "".join(
        ch if ord(ch) < 0x7F else (f"\\u{ord(ch):04X}" if ord(ch) <= 0xFFFF else f"\\U{ord(ch):08X}")
        for ch in value
    )


_PNAME_RE = re.compile(r"^([A-Za-z][\w\-.]*)?:([^\s]*)$")
_TYPED_RE = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:\^\^(\S+)|@([A-Za-z]+(?:-[A-Za-z0-9]+)*))?$', re.S)


def expand_pname(text: str, prefixes) -> str:
    prefix, _, local = text.partition(":")
    try:
        return prefixes[prefix] + local
    except KeyError:
        raise UnresolvedPrefixError(prefix) from None


def resolve_term(text: str, prefixes=None) -> Term:
    """Turn a prefixed name, ``<IRI>``, ``_:label`` or quoted literal spec into a Term.

    >>> resolve_term("codo:Patient").value
    'http://www.isibang.ac.in/ns/codo#Patient'
    """
    prefixes = DEFAULT_PREFIXES if prefixes is None else prefixes
    text = text.strip()
    if text.startswith("<") and text.endswith(">"):
        return Term.iri(text[1:-1])
    if text.startswith("_:"):
        return Term.blank(text[2:])
    if text.startswith('"'):
        m = _TYPED_RE.match(text)
        if not m:
            raise InvalidLiteralError(f"malformed literal spec {text!r}")
        lexical = unescape(m.group(1))
        if m.group(3):
            return Term.literal(lexical, lang=m.group(3))
        datatype = m.group(2)
        if datatype:
            datatype = resolve_term(datatype, prefixes).value
        return Term.literal(lexical, datatype)
    if text in ("true", "false"):
        return Term.literal(text, XSD_BOOLEAN)
    if _INTEGER_RE.match(text):
        return Term.literal(text, XSD_INTEGER)
    if _DECIMAL_RE.match(text):
        return Term.literal(text, XSD_DECIMAL)
    if _PNAME_RE.match(text):
        return Term.iri(expand_pname(text, prefixes))
    raise InvalidLiteralError(f"cannot resolve term {text!r}")


_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|[tbnrf\"'\\])")


def unescape(text: str) -> str:
    if "\\" not in text:
        return text

    def repl(m):
        code = m.group(1)
        if code[0] in "uU":
            return chr(int(code[1:], 16))
        return _ESCAPES[code]

    return _ESCAPE_RE.sub(repl, text)


def compact(term: Term, prefixes) -> str:
    """Shortest readable form of a term for display, using ``prefixes``."""
    if term.kind == IRI_KIND:
        best = None
        for prefix, ns in prefixes.items():
            if term.value.startswith(ns) and (best is None or len(ns) > len(prefixes[best])):
                local = term.value[len(ns):]
                if re.fullmatch(r"[\w\-]*", local):
                    best = prefix
        if best is not None:
            return f"{best}:{term.value[len(prefixes[best]):]}"
        return f"<{term.value}>"
    if term.kind == BLANK_KIND:
        return "_:" + term.value
    if term.datatype in (XSD_INTEGER, XSD_DECIMAL, XSD_BOOLEAN):
        return term.value
    text = '"' + escape_string(term.value, ascii_only=False) + '"'
    if term.lang:
        return f"{text}@{term.lang}"
    if term.datatype == XSD_STRING:
        return text
    return text + "^^" + compact(Term.iri(term.datatype), prefixes)


TRUE = Term.literal(True)
FALSE = Term.literal(False)
