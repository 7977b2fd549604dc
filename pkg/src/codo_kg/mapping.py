"""Spreadsheet-to-graph transformation rules in the Cellfie/MappingMaster style.

A rule looks like::

    Individual: @A*(mm:hashEncode rdfs:label=("patient", @A*))
    Types: Patient
    Facts: 'diagnosed on' @B*(xsd:dateTime), age @C*(xsd:decimal), status @J*

``@A*`` is column A of the current row; ``@B2`` is a fixed cell.  Property
and class names are quoted labels, barewords (labels, or local names in the
codo namespace) or prefixed names.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from .errors import (
    CodoError,
    InvalidLiteralError,
    MappingSyntaxError,
    UnknownLabelError,
    UnsupportedCoercionError,
)
from .graph import Graph
from .schema import LabelIndex
from .terms import (
    CODO,
    CODO_NS,
    DEFAULT_PREFIXES,
    OWL,
    RDF_TYPE,
    RDFS,
    RDFS_LABEL,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_STRING,
    Term,
    Triple,
)

SUPPORTED_COERCIONS = (XSD_DATETIME, XSD_DECIMAL, XSD_BOOLEAN)


# -- rule model --------------------------------------------------------------

@dataclass(frozen=True)
class CellRef:
    column: str
    row: int | None = None  # None is the "*" row wildcard

    @property
    def index(self) -> int:
        return column_index(self.column)

    def __str__(self):
        return f"@{self.column}{'*' if self.row is None else self.row}"


@dataclass(frozen=True)
class NameRef:
    """A property or class reference as written in the rule."""

    text: str
    style: str  # "quoted", "prefixed" or "bare"


@dataclass(frozen=True)
class SubjectSpec:
    cell: CellRef
    function: str | None = None
    label_template: tuple[str | CellRef, ...] = ()


@dataclass(frozen=True)
class FactSpec:
    prop: NameRef
    cell: CellRef
    coercion: str | None = None  # datatype IRI; None means object-valued


@dataclass(frozen=True)
class MappingRule:
    subject: SubjectSpec
    types: tuple[NameRef, ...]
    facts: tuple[FactSpec, ...]


def column_index(letters: str) -> int:
    n = 0
    for ch in letters:
        n = n * 26 + (ord(ch) - 64)
    return n - 1


def column_letters(index: int) -> str:
    out = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        out = chr(65 + rem) + out
    return out


# -- rule parser -------------------------------------------------------------

_RULE_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<keyword>(?:Individual|Types|Facts):)(?![\w\-])
  | (?P<cell>@[A-Z]+(?:\*|\d+))
  | (?P<quoted>'[^'\n]*'|"[^"\n]*")
  | (?P<pname>[A-Za-z_][\w\-]*:[A-Za-z_][\w\-]*)
  | (?P<bare>[A-Za-z_][\w\-]*)
  | (?P<punct>[(),=])
    """,
    re.X,
)


class _RuleParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _RULE_TOKEN.match(text, pos)
            if m is None:
                raise MappingSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
            if m.lastgroup != "ws":
                self.tokens.append((m.lastgroup, m.group(), pos))
            pos = m.end()
        self.i = 0

    def error(self, message: str):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return MappingSyntaxError(message, pos, self.text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, kind: str, value: str | None = None) -> str:
        tok_kind, tok_text, _ = self.peek()
        if tok_kind != kind or (value is not None and tok_text != value):
            found = "end of input" if tok_kind is None else repr(tok_text)
            raise self.error(f"expected {value or kind}, found {found}")
        self.i += 1
        return tok_text

    def at(self, value: str) -> bool:
        return self.peek()[1] == value

    def cell(self, wildcard_only: bool = False) -> CellRef:
        text = self.take("cell")
        letters = text[1:].rstrip("*0123456789")
        rest = text[1 + len(letters):]
        if rest == "*":
            return CellRef(letters)
        if wildcard_only:
            self.i -= 1
            raise self.error("subject cell must use the '*' row wildcard")
        return CellRef(letters, int(rest))

    def name(self) -> NameRef:
        kind, text, _ = self.peek()
        if kind == "quoted":
            self.i += 1
            return NameRef(text[1:-1], "quoted")
        if kind == "pname":
            self.i += 1
            return NameRef(text, "prefixed")
        if kind == "bare":
            self.i += 1
            return NameRef(text, "bare")
        raise self.error("expected a property or class name")

    def rule(self) -> MappingRule:
        self.take("keyword", "Individual:")
        subject = self.subject()
        self.take("keyword", "Types:")
        types = [self.name()]
        while self.at(","):
            self.take("punct", ",")
            types.append(self.name())
        self.take("keyword", "Facts:")
        facts = [self.fact()]
        while self.at(","):
            self.take("punct", ",")
            facts.append(self.fact())
        if self.peek()[0] is not None:
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return MappingRule(subject, tuple(types), tuple(facts))

    def subject(self) -> SubjectSpec:
        cell = self.cell(wildcard_only=True)
        function = None
        template: list[str | CellRef] = []
        if self.at("("):
            self.take("punct", "(")
            function = self.take("pname")
            if function != "mm:hashEncode":
                self.i -= 1
                raise self.error(f"unknown function {function}")
            if self.at("rdfs:label"):
                self.take("pname")
                self.take("punct", "=")
                self.take("punct", "(")
                template.append(self.template_part())
                while self.at(","):
                    self.take("punct", ",")
                    template.append(self.template_part())
                self.take("punct", ")")
            self.take("punct", ")")
        return SubjectSpec(cell, function, tuple(template))

    def template_part(self) -> str | CellRef:
        kind, text, _ = self.peek()
        if kind == "quoted":
            self.i += 1
            return text[1:-1]
        if kind == "cell":
            return self.cell()
        raise self.error("expected a string or cell reference in label")

    def fact(self) -> FactSpec:
        prop = self.name()
        cell = self.cell()
        coercion = None
        if self.at("("):
            self.take("punct", "(")
            kind, text, _ = self.peek()
            if kind != "pname":
                raise self.error("expected a datatype")
            self.i += 1
            prefix, _, local = text.partition(":")
            if prefix not in DEFAULT_PREFIXES:
                raise UnsupportedCoercionError(text)
            coercion = DEFAULT_PREFIXES[prefix] + local
            if coercion not in SUPPORTED_COERCIONS:
                raise UnsupportedCoercionError(text)
            self.take("punct", ")")
        return FactSpec(prop, cell, coercion)


def parse_mapping_rule(text) -> MappingRule:
    """Parse one transformation rule; raises :class:`MappingSyntaxError` with position."""
    if not isinstance(text, str):
        text = text.read()
    return _RuleParser(text).rule()


# -- case tables ---------------------------------------------------------------

CASE_SHEET_HEADERS = (
    "case", "diagnosed on", "age", "gender", "city", "state", "cluster", "reason",
    "nationality", "status", "p", "c", "relationships",
)


@dataclass
class CaseTable:
    rows: list[list[str]]
    header: list[str] | None = None

    @classmethod
    def from_csv(cls, source, header: bool | None = None) -> CaseTable:
        """Read a CSV file given as a path or an open text file.

        With ``header=None`` the first row is taken as a header when it
        matches the usual column names.
        """
        if isinstance(source, (str, os.PathLike)):
            with open(source, encoding="utf-8", newline="") as fh:
                return cls.from_text(fh.read(), header)
        return cls.from_text(source.read(), header)

    @classmethod
    def from_text(cls, text: str, header: bool | None = None) -> CaseTable:
        """Comma-separated, double-quoted CSV text."""
        if text.startswith("\ufeff"):
            text = text[1:]
        rows = [row for row in csv.reader(io.StringIO(text)) if any(c.strip() for c in row)]
        head = None
        if rows and (header is True or (header is None and _looks_like_header(rows[0]))):
            head = rows.pop(0)
        return cls(rows, head)

    def __post_init__(self):
        width = max((len(r) for r in self.rows), default=0)
        if self.header:
            width = max(width, len(self.header))
        self.rows = [list(r) + [""] * (width - len(r)) for r in self.rows]

    def __len__(self):
        return len(self.rows)

    @property
    def header_rows(self) -> int:
        return 1 if self.header else 0

    def value(self, row_index: int, ref: CellRef) -> str:
        """Cell text for ``ref`` evaluated on data row ``row_index`` (0-based)."""
        if ref.row is not None:
            row_index = ref.row - 1 - self.header_rows
            if not 0 <= row_index < len(self.rows):
                return ""
        row = self.rows[row_index]
        idx = ref.index
        return row[idx].strip() if idx < len(row) else ""


def _looks_like_header(row: list[str]) -> bool:
    cells = [c.strip().casefold() for c in row if c.strip()]
    if not cells or re.fullmatch(r"\d+", cells[0]):
        return False
    known = sum(1 for c in cells if c in CASE_SHEET_HEADERS)
    return known * 2 >= len(cells)


# -- configuration and report ----------------------------------------------------

@dataclass
class IngestConfig:
    naming: str = "padded"  # "padded" or "hash"
    sentinel_filter: bool = True
    namespace: str = CODO_NS
    sentinels: dict[str, tuple[str, ...]] = field(default_factory=lambda: {
        XSD_DATETIME: ("1900-01-01T00:00:00",),
        XSD_DECIMAL: ("0",),
    })
    # boolean fact over a count column -> property receiving the raw count
    count_companions: dict[Term, Term] = field(default_factory=lambda: {
        CODO.hasCausedSecondaryInfections: CODO.secondaryInfectionCount,
    })
    travel_properties: tuple[Term, ...] = (CODO.travelledFrom,)
    case_column: str = "A"
    reason_column: str = "H"
    parent_column: str = "K"

    def __post_init__(self):
        if self.naming not in ("padded", "hash"):
            raise ValueError(f"unknown naming mode {self.naming!r}")


@dataclass
class IngestReport:
    rows_processed: int = 0
    individuals_created: int = 0
    rows_skipped: int = 0
    facts_emitted: int = 0
    facts_skipped: int = 0
    links_emitted: int = 0
    skip_log: list[tuple[int, str, str]] = field(default_factory=list)

    def skip(self, row: int, column: str, reason: str) -> None:
        self.skip_log.append((row, column, reason))

    def summary(self) -> str:
        return (
            f"rows processed:      {self.rows_processed}\n"
            f"individuals created: {self.individuals_created}\n"
            f"rows skipped:        {self.rows_skipped}\n"
            f"facts emitted:       {self.facts_emitted}\n"
            f"facts skipped:       {self.facts_skipped}\n"
            f"relationship links:  {self.links_emitted}\n"
            f"log entries:         {len(self.skip_log)}\n"
        )

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps({"row": row, "column": col, "reason": reason}) + "\n"
            for row, col, reason in self.skip_log
        )


# -- individual naming -----------------------------------------------------------

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a_64(text: str) -> int:
    h = FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def make_individual_iri(subject: SubjectSpec | CellRef, row_cells: list[str], config: IngestConfig | None = None) -> Term:
    """Deterministic IRI for the row's subject cell.

    ``padded`` mode gives ``p`` plus the case number padded to six digits;
    ``hash`` mode uses the FNV-1a 64-bit hash of the cell text in hex.
    Raises ``ValueError`` for an empty (or, in padded mode, non-numeric) cell.
    """
    config = config or IngestConfig()
    cell = subject.cell if isinstance(subject, SubjectSpec) else subject
    idx = cell.index
    text = row_cells[idx].strip() if idx < len(row_cells) else ""
    if not text:
        raise ValueError("empty subject cell")
    if config.naming == "hash":
        return Term.iri(f"{config.namespace}{fnv1a_64(text):016x}")
    number = text
    if re.fullmatch(r"\d+\.0*", number):
        number = number.split(".")[0]
    if not number.isdigit():
        raise ValueError(f"case number {text!r} is not an integer")
    return Term.iri(f"{config.namespace}p{int(number):06d}")


# -- reason / cluster cells ---------------------------------------------------------

RELATIONSHIP_WORDS = {
    "spouse": "hasSpouse", "wife": "hasSpouse", "husband": "hasSpouse",
    "daughter": "hasDaughter", "son": "hasSon", "child": "hasChild",
    "father": "hasParent", "mother": "hasParent", "parent": "hasParent",
    "co-worker": "hasCoWorker", "coworker": "hasCoWorker", "colleague": "hasCoWorker",
    "roommate": "hasRoommate", "room-mate": "hasRoommate", "flatmate": "hasRoommate",
    "aunt": "hasAuntOrUncle", "uncle": "hasAuntOrUncle",
    "niece": "hasNieceOrNephew", "nephew": "hasNieceOrNephew",
    "relative": "hasRelationship", "contact": "hasRelationship",
}


@dataclass(frozen=True)
class ReasonParse:
    kind: str  # "travel", "relationship" or "opaque"
    text: str
    places: tuple[str, ...] = ()
    prop: Term | None = None


def normalize_reason_cell(text: str) -> ReasonParse:
    """Classify a Cluster/Reason cell as travel origin, kinship word or free text."""
    raw = text.strip()
    m = re.match(r"(?i)^from\s+(.+)$", raw)
    if m:
        places = tuple(p.strip() for p in m.group(1).split("/") if p.strip())
        if places:
            return ReasonParse("travel", raw, places)
    word = re.sub(r"[\s.]+$", "", raw).casefold()
    local = RELATIONSHIP_WORDS.get(word)
    if local is not None:
        return ReasonParse("relationship", raw, prop=CODO[local])
    return ReasonParse("opaque", raw)


# -- applying rules ------------------------------------------------------------------

_UNSAFE = re.compile(r"[^\w\-.~]+")


def slug(text: str) -> str:
    return _UNSAFE.sub("_", text.strip()).strip("_") or "unnamed"


class _ObjectResolver:
    """Maps cell strings to named individuals, reusing existing ones by label."""

    def __init__(self, graph: Graph, namespace: str):
        self.graph = graph
        self.namespace = namespace
        self.cache: dict[tuple[Term | None, str], Term] = {}
        self.by_class: dict[Term | None, dict[str, Term]] = {}

    def range_of(self, prop: Term) -> Term | None:
        ranges = sorted(self.graph.objects(prop, RDFS.range), key=Term.sort_key)
        return ranges[0] if ranges else None

    def _known(self, cls: Term | None) -> dict[str, Term]:
        table = self.by_class.get(cls)
        if table is None:
            table = {}
            if cls is not None:
                for ind in sorted(self.graph.instances(cls), key=Term.sort_key):
                    for label in self.graph.objects(ind, RDFS_LABEL):
                        table.setdefault(label.value.casefold(), ind)
                    if ind.is_iri:
                        local = re.split(r"[#/]", ind.value)[-1]
                        table.setdefault(local.casefold(), ind)
            self.by_class[cls] = table
        return table

    def resolve(self, text: str, cls: Term | None) -> tuple[Term, list[Triple]]:
        key = (cls, text)
        if key in self.cache:
            return self.cache[key], []
        existing = self._known(cls).get(text.casefold())
        if existing is not None:
            self.cache[key] = existing
            return existing, []
        ind = Term.iri(self.namespace + slug(text))
        triples = [Triple(ind, RDFS_LABEL, Term.literal(text))]
        if cls is not None:
            triples.insert(0, Triple(ind, RDF_TYPE, cls))
        self.cache[key] = ind
        self._known(cls)[text.casefold()] = ind
        return ind, triples


def _resolve_name(ref: NameRef, graph: Graph, labels: LabelIndex, kinds) -> Term:
    if ref.style == "prefixed":
        return graph.resolve(ref.text)
    try:
        return labels.resolve(ref.text)
    except UnknownLabelError:
        if ref.style == "bare":
            candidate = CODO[ref.text]
            if any(graph.contains_ids(ids) for ids in _type_ids(graph, candidate, kinds)):
                return candidate
        raise


def _type_ids(graph: Graph, term: Term, kinds):
    for kind in kinds:
        ids = graph.to_ids(Triple(term, RDF_TYPE, kind))
        if ids is not None:
            yield ids


def _is_sentinel(lexical: str, datatype: str, config: IngestConfig) -> bool:
    values = config.sentinels.get(datatype, ())
    if datatype == XSD_DECIMAL:
        try:
            return any(Decimal(lexical) == Decimal(v) for v in values)
        except InvalidOperation:
            return False
    return lexical in values


def _coerce(text: str, datatype: str) -> Term:
    if datatype == XSD_BOOLEAN:
        folded = text.strip().casefold()
        if folded in ("true", "yes", "y"):
            return Term.literal("true", XSD_BOOLEAN)
        if folded in ("false", "no", "n"):
            return Term.literal("false", XSD_BOOLEAN)
        try:
            return Term.literal("true" if Decimal(folded) > 0 else "false", XSD_BOOLEAN)
        except InvalidOperation:
            raise InvalidLiteralError(f"cannot read {text!r} as xsd:boolean") from None
    if datatype == XSD_DECIMAL:
        try:
            value = Decimal(text.strip().replace(",", ""))
        except InvalidOperation:
            raise InvalidLiteralError(f"cannot read {text!r} as xsd:decimal") from None
        if not value.is_finite():
            raise InvalidLiteralError(f"cannot read {text!r} as xsd:decimal")
        lexical = format(value, "f")
        return Term.literal(lexical, XSD_DECIMAL)
    return Term.literal(text, datatype)


@dataclass
class _CompiledFact:
    spec: FactSpec
    prop: Term
    datatype: str | None
    target_class: Term | None
    travel: bool


def apply_mapping(rule: MappingRule, table: CaseTable, vocab: Graph,
                  config: IngestConfig | None = None, into: Graph | None = None) -> tuple[list[Triple], IngestReport]:
    """Transform every row of ``table`` into a patient individual plus facts.

    Names are resolved against ``vocab`` before any row runs, so an unknown
    label fails the whole rule.  Triples go into ``into`` (default: ``vocab``).
    Returns the newly added triples and the report.
    """
    config = config or IngestConfig()
    target = vocab if into is None else into
    labels = LabelIndex(vocab)
    datatype_props = set(vocab.subjects(RDF_TYPE, OWL.DatatypeProperty))
    class_kinds = (OWL.Class, RDFS.Class)
    prop_kinds = (OWL.ObjectProperty, OWL.DatatypeProperty)
    types = [_resolve_name(ref, vocab, labels, class_kinds) for ref in rule.types]
    resolver = _ObjectResolver(vocab, config.namespace)
    compiled = []
    for spec in rule.facts:
        prop = _resolve_name(spec.prop, vocab, labels, prop_kinds)
        datatype = spec.coercion
        rng = resolver.range_of(prop)
        if datatype is None and prop in datatype_props:
            datatype = rng.value if rng is not None and rng.value in SUPPORTED_COERCIONS else XSD_STRING
        compiled.append(_CompiledFact(spec, prop, datatype, rng, prop in config.travel_properties))

    report = IngestReport()
    added: list[Triple] = []

    def emit(t: Triple) -> None:
        if target.add(t):
            added.append(t)

    for index, row in enumerate(table.rows):
        rownum = index + 1
        report.rows_processed += 1
        try:
            subject = make_individual_iri(rule.subject, row, config)
        except ValueError as exc:
            report.rows_skipped += 1
            report.skip(rownum, rule.subject.cell.column, str(exc))
            continue
        report.individuals_created += 1
        for cls in types:
            emit(Triple(subject, RDF_TYPE, cls))
        if rule.subject.label_template:
            parts = [p if isinstance(p, str) else table.value(index, p) for p in rule.subject.label_template]
            emit(Triple(subject, RDFS_LABEL, Term.literal(" ".join(p for p in parts if p))))
        for fact in compiled:
            column = fact.spec.cell.column
            text = table.value(index, fact.spec.cell)
            if not text:
                report.facts_skipped += 1
                report.skip(rownum, column, "missing value")
                continue
            if fact.datatype is not None:
                try:
                    value = _coerce(text, fact.datatype)
                except InvalidLiteralError as exc:
                    report.facts_skipped += 1
                    report.skip(rownum, column, str(exc))
                    continue
                if config.sentinel_filter and _is_sentinel(value.value, fact.datatype, config):
                    report.facts_skipped += 1
                    report.skip(rownum, column, f"sentinel value {text!r}")
                    continue
                emit(Triple(subject, fact.prop, value))
                report.facts_emitted += 1
                companion = config.count_companions.get(fact.prop)
                if companion is not None and fact.datatype == XSD_BOOLEAN:
                    try:
                        count = _coerce(text, XSD_DECIMAL)
                    except InvalidLiteralError:
                        continue
                    emit(Triple(subject, companion, count))
                    report.facts_emitted += 1
                continue
            names = [text]
            if fact.travel:
                parsed = normalize_reason_cell(text)
                if parsed.kind == "travel":
                    names = list(parsed.places)
            for name in names:
                obj, extra = resolver.resolve(name, fact.target_class)
                for t in extra:
                    emit(t)
                emit(Triple(subject, fact.prop, obj))
                report.facts_emitted += 1
    return added, report


def link_relationships(table: CaseTable, graph: Graph, config: IngestConfig | None = None,
                       report: IngestReport | None = None) -> list[Triple]:
    """Second pass over the Reason and P columns.

    A kinship reason with a positive parent case ``n`` yields
    ``(patient n, kinship property, this patient)``; ``From X`` reasons add
    travel origins; other text is kept as ``suspectedReasonOfInfection``.
    """
    config = config or IngestConfig()
    report = report if report is not None else IngestReport()
    case_ref = CellRef(config.case_column)
    reason_ref = CellRef(config.reason_column)
    parent_ref = CellRef(config.parent_column)
    resolver = _ObjectResolver(graph, config.namespace)
    travel_class = resolver.range_of(CODO.travelledFrom)
    known_cases = {}
    for index, row in enumerate(table.rows):
        case = table.value(index, case_ref)
        if case:
            known_cases[_case_key(case)] = index

    added: list[Triple] = []

    def emit(t: Triple) -> None:
        if graph.add(t):
            added.append(t)

    for index, row in enumerate(table.rows):
        rownum = index + 1
        try:
            patient = make_individual_iri(case_ref, row, config)
        except ValueError:
            continue
        parsed = normalize_reason_cell(table.value(index, reason_ref))
        if parsed.kind == "opaque":
            if parsed.text:
                emit(Triple(patient, CODO.suspectedReasonOfInfection, Term.literal(parsed.text)))
            continue
        if parsed.kind == "travel":
            for name in parsed.places:
                obj, extra = resolver.resolve(name, travel_class)
                for t in extra:
                    emit(t)
                emit(Triple(patient, CODO.travelledFrom, obj))
            continue
        parent_text = table.value(index, parent_ref)
        if not parent_text:
            continue
        try:
            parent_number = int(Decimal(parent_text))
        except (InvalidOperation, ValueError):
            report.skip(rownum, config.parent_column, f"parent case {parent_text!r} is not a number")
            continue
        if parent_number <= 0:
            continue
        parent_index = known_cases.get(str(parent_number))
        if parent_index is None:
            report.skip(rownum, config.parent_column, f"dangling reference to case {parent_number}")
            continue
        parent = make_individual_iri(case_ref, table.rows[parent_index], config)
        emit(Triple(parent, parsed.prop, patient))
        report.links_emitted += 1
    return added


def _case_key(text: str) -> str:
    try:
        return str(int(Decimal(text)))
    except (InvalidOperation, ValueError):
        return text


def ingest(rule: MappingRule, table: CaseTable, graph: Graph,
           config: IngestConfig | None = None) -> tuple[list[Triple], IngestReport]:
    """apply_mapping followed by link_relationships, sharing one report."""
    added, report = apply_mapping(rule, table, graph, config)
    added += link_relationships(table, graph, config, report)
    return added, report


__all__ = [
    "CaseTable", "CellRef", "CodoError", "FactSpec", "IngestConfig", "IngestReport",
    "MappingRule", "NameRef", "ReasonParse", "SubjectSpec", "apply_mapping", "fnv1a_64",
    "ingest", "link_relationships", "make_individual_iri", "normalize_reason_cell",
    "parse_mapping_rule",
]
