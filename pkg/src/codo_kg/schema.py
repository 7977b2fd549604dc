"""The CODO vocabulary and the structured axiom view the reasoner consumes."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import AmbiguousLabelError, SchemaCycleError, UnknownLabelError
from .graph import Graph
from .terms import (
    CODO,
    FALSE,
    FOAF,
    OWL,
    OWL_NS,
    RDF,
    RDF_NS,
    RDF_TYPE,
    RDFS,
    RDFS_LABEL,
    RDFS_NS,
    SCHEMA,
    XSD,
    XSD_NS,
    Term,
    Triple,
)


@dataclass(frozen=True)
class NamedClass:
    cls: Term


@dataclass(frozen=True)
class SomeValuesFrom:
    prop: Term
    filler: Term


@dataclass(frozen=True)
class HasValue:
    prop: Term
    value: Term


Conjunct = NamedClass | SomeValuesFrom | HasValue


@dataclass(frozen=True)
class DefinedClass:
    """A class with necessary and sufficient conditions (an intersection)."""

    cls: Term
    conjuncts: tuple[Conjunct, ...]

    def __post_init__(self):
        if not self.conjuncts:
            raise ValueError(f"defined class {self.cls} needs at least one conjunct")


@dataclass(frozen=True)
class SchemaAxioms:
    sub_class_of: frozenset[tuple[Term, Term]] = frozenset()
    sub_property_of: frozenset[tuple[Term, Term]] = frozenset()
    inverse_of: frozenset[tuple[Term, Term]] = frozenset()
    transitive: frozenset[Term] = frozenset()
    symmetric: frozenset[Term] = frozenset()
    domains: frozenset[tuple[Term, Term]] = frozenset()
    ranges: frozenset[tuple[Term, Term]] = frozenset()
    defined_classes: tuple[DefinedClass, ...] = ()
    object_properties: frozenset[Term] = frozenset()
    datatype_properties: frozenset[Term] = frozenset()
    # patterns extract_schema saw but could not interpret
    unrecognized: tuple[str, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return (
            len(self.sub_class_of) + len(self.sub_property_of) + len(self.inverse_of)
            + len(self.transitive) + len(self.symmetric) + len(self.domains)
            + len(self.ranges) + len(self.defined_classes)
        )

    def defined(self, cls: Term) -> DefinedClass:
        for dc in self.defined_classes:
            if dc.cls == cls:
                return dc
        raise KeyError(cls)

    def super_properties(self, prop: Term) -> set[Term]:
        """Reflexive-transitive closure of the sub-property relation above ``prop``."""
        return _closure(prop, self.sub_property_of)

    def super_classes(self, cls: Term) -> set[Term]:
        return _closure(cls, self.sub_class_of)

    def range_of(self, prop: Term) -> Term | None:
        found = sorted((c for p, c in self.ranges if p == prop), key=Term.sort_key)
        return found[0] if found else None


def _closure(start: Term, edges) -> set[Term]:
    up = defaultdict(list)
    for a, b in edges:
        up[a].append(b)
    seen = {start}
    stack = [start]
    while stack:
        for nxt in up[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def is_datatype(term: Term) -> bool:
    return term.is_iri and (term.value.startswith(XSD_NS) or term == RDFS.Literal)


# -- vocabulary construction -----------------------------------------------

_PERSON = FOAF.Person
_PATIENT = CODO.Patient
_PLACE = SCHEMA.Place

# (class, label, direct superclasses)
_CLASSES = [
    (FOAF.Person, "Person", ()),
    (FOAF.Organization, "Organization", ()),
    (SCHEMA.Patient, "Patient (schema.org)", (FOAF.Person,)),
    (CODO.Patient, "Patient", (FOAF.Person, SCHEMA.Patient)),
    (CODO.CovidDedicatedFacility, "COVID-19 dedicated facility", (FOAF.Organization,)),
    (CODO.CovidCareCentre, "Covid care centre", (CODO.CovidDedicatedFacility,)),
    (CODO.DedicatedCovidHealthCentre, "Dedicated covid health centre", (CODO.CovidDedicatedFacility,)),
    (CODO.DedicatedCovidHospital, "Dedicated covid hospital", (CODO.CovidDedicatedFacility,)),
    (CODO.Disease, "Disease", ()),
    (CODO.MildOrVeryMildCovid19, "Mild or very mild COVID-19", (CODO.Disease,)),
    (CODO.ModerateCovid19, "Moderate COVID-19", (CODO.Disease,)),
    (CODO.SevereCovid19, "Severe COVID-19", (CODO.Disease,)),
    (CODO.Diagnosis, "Diagnosis", ()),
    (CODO["COVID-19Diagnosis"], "COVID-19 diagnosis", (CODO.Diagnosis,)),
    (CODO.Symptom, "Symptom", ()),
    (SCHEMA.Place, "Place", ()),
    (SCHEMA.City, "City", (SCHEMA.Place,)),
    (SCHEMA.State, "State", (SCHEMA.Place,)),
    (SCHEMA.Country, "Country", (SCHEMA.Place,)),
    (SCHEMA.GenderType, "Gender", ()),
    (CODO.StatusValue, "Status value", ()),
    (CODO.DiagnosedWithCovid, "Diagnosed with Covid", ()),
    (CODO.UrgentlyNeedsCovidTest, "Urgently needs Covid test", ()),
]

# (property, label, direct super-properties, domain, range)
_OBJECT_PROPERTIES = [
    (CODO.hasRelationship, "has relationship", (), _PERSON, _PERSON),
    (CODO.hasCloseRelationship, "has close relationship", (CODO.hasRelationship,), None, None),
    (CODO.hasChild, "has child", (CODO.hasCloseRelationship,), None, None),
    (CODO.hasDaughter, "has daughter", (CODO.hasChild,), None, None),
    (CODO.hasSon, "has son", (CODO.hasChild,), None, None),
    (CODO.hasParent, "has parent", (CODO.hasCloseRelationship,), None, None),
    (CODO.hasSpouse, "has spouse", (CODO.hasCloseRelationship,), None, None),
    (CODO.hasCoWorker, "has co-worker", (CODO.hasCloseRelationship,), None, None),
    (CODO.hasRoommate, "has roommate", (CODO.hasCloseRelationship,), None, None),
    (CODO.hasAuntOrUncle, "has aunt or uncle", (CODO.hasRelationship,), None, None),
    (CODO.hasNieceOrNephew, "has niece or nephew", (CODO.hasRelationship,), None, None),
    (CODO.hasGender, "has gender", (), _PERSON, SCHEMA.GenderType),
    (CODO.residesIn, "resides in", (), _PERSON, _PLACE),
    (CODO.city, "city", (CODO.residesIn,), None, SCHEMA.City),
    (CODO.state, "state", (CODO.residesIn,), None, SCHEMA.State),
    (CODO.travelledFrom, "travelled from", (), _PERSON, _PLACE),
    (CODO.isLocatedIn, "is located in", (), _PLACE, _PLACE),
    (CODO.hasDiagnosis, "has diagnosis", (), _PERSON, CODO.Diagnosis),
    (CODO.identifiesDisease, "identifies disease", (), CODO.Diagnosis, CODO.Disease),
    (CODO.hasSymptom, "has symptom", (), _PERSON, CODO.Symptom),
    (CODO.status, "status", (), _PATIENT, CODO.StatusValue),
]

_DATATYPE_PROPERTIES = [
    (CODO.diagnosedOn, "diagnosed on", _PATIENT, XSD.dateTime),
    (CODO.age, "age", _PERSON, XSD.decimal),
    (CODO.hadCovidTest, "had covid test", _PERSON, XSD.boolean),
    (CODO.hasCausedSecondaryInfections, "has caused any secondary infections", _PATIENT, XSD.boolean),
    (CODO.secondaryInfectionCount, "secondary infection count", _PATIENT, XSD.decimal),
    (CODO.nationality, "nationality", _PERSON, XSD.string),
    (CODO.suspectedReasonOfInfection, "suspected reason of infection", _PATIENT, XSD.string),
]

_INVERSES = [(CODO.hasChild, CODO.hasParent), (CODO.hasNieceOrNephew, CODO.hasAuntOrUncle)]
_SYMMETRIC = [CODO.hasRelationship, CODO.hasSpouse, CODO.hasCoWorker, CODO.hasRoommate]
_TRANSITIVE = [CODO.isLocatedIn]

# (individual, class, label)
_INDIVIDUALS = [
    (SCHEMA.Male, SCHEMA.GenderType, "Male"),
    (SCHEMA.Female, SCHEMA.GenderType, "Female"),
    (CODO.Recovered, CODO.StatusValue, "Recovered"),
    (CODO.Deceased, CODO.StatusValue, "Deceased"),
    (CODO.Hospitalized, CODO.StatusValue, "Hospitalized"),
    (CODO.Fever, CODO.Symptom, "Fever"),
    (CODO.DryCough, CODO.Symptom, "Dry cough"),
    (CODO.Fatigue, CODO.Symptom, "Fatigue"),
    (CODO.BreathingDifficulty, CODO.Symptom, "Breathing difficulty"),
]

_DEFINED = [
    DefinedClass(
        CODO.DiagnosedWithCovid,
        (NamedClass(_PERSON), SomeValuesFrom(CODO.hasDiagnosis, CODO["COVID-19Diagnosis"])),
    ),
    DefinedClass(
        CODO.UrgentlyNeedsCovidTest,
        (
            NamedClass(_PERSON),
            SomeValuesFrom(CODO.hasCloseRelationship, CODO.DiagnosedWithCovid),
            HasValue(CODO.hadCovidTest, FALSE),
        ),
    ),
]


def defined_class_triples(dc: DefinedClass) -> list[Triple]:
    """OWL/RDF encoding of an intersection, with blank node labels derived from the class name."""
    name = dc.cls.value.rsplit("#", 1)[-1].rsplit("/", 1)[-1]
    name = "".join(ch if ch.isalnum() or ch in "_-" else "_" for ch in name)
    expr = Term.blank(f"{name}_def")
    out = [
        Triple(dc.cls, OWL.equivalentClass, expr),
        Triple(expr, RDF_TYPE, OWL.Class),
    ]
    items = []
    for n, conj in enumerate(dc.conjuncts):
        if isinstance(conj, NamedClass):
            items.append(conj.cls)
            continue
        restriction = Term.blank(f"{name}_r{n}")
        out.append(Triple(restriction, RDF_TYPE, OWL.Restriction))
        out.append(Triple(restriction, OWL.onProperty, conj.prop))
        if isinstance(conj, SomeValuesFrom):
            out.append(Triple(restriction, OWL.someValuesFrom, conj.filler))
        else:
            out.append(Triple(restriction, OWL.hasValue, conj.value))
        items.append(restriction)
    cells = [Term.blank(f"{name}_l{n}") for n in range(len(items))]
    out.append(Triple(expr, OWL.intersectionOf, cells[0]))
    for n, (cell, item) in enumerate(zip(cells, items)):
        out.append(Triple(cell, RDF.first, item))
        out.append(Triple(cell, RDF.rest, cells[n + 1] if n + 1 < len(cells) else RDF.nil))
    return out


def build_codo_vocabulary() -> tuple[Graph, SchemaAxioms]:
    """Construct the CODO vocabulary graph together with its axiom view."""
    g = Graph()
    sub_class, sub_prop, domains, ranges = set(), set(), set(), set()
    for cls, label, supers in _CLASSES:
        g.add(Triple(cls, RDF_TYPE, OWL.Class))
        g.add(Triple(cls, RDFS_LABEL, Term.literal(label)))
        for sup in supers:
            g.add(Triple(cls, RDFS.subClassOf, sup))
            sub_class.add((cls, sup))
    for prop, label, supers, dom, rng in _OBJECT_PROPERTIES:
        g.add(Triple(prop, RDF_TYPE, OWL.ObjectProperty))
        g.add(Triple(prop, RDFS_LABEL, Term.literal(label)))
        for sup in supers:
            g.add(Triple(prop, RDFS.subPropertyOf, sup))
            sub_prop.add((prop, sup))
        if dom is not None:
            g.add(Triple(prop, RDFS.domain, dom))
            domains.add((prop, dom))
        if rng is not None:
            g.add(Triple(prop, RDFS.range, rng))
            ranges.add((prop, rng))
    for prop, label, dom, rng in _DATATYPE_PROPERTIES:
        g.add(Triple(prop, RDF_TYPE, OWL.DatatypeProperty))
        g.add(Triple(prop, RDFS_LABEL, Term.literal(label)))
        g.add(Triple(prop, RDFS.domain, dom))
        g.add(Triple(prop, RDFS.range, rng))
        domains.add((prop, dom))
        ranges.add((prop, rng))
    for a, b in _INVERSES:
        g.add(Triple(a, OWL.inverseOf, b))
    for prop in _SYMMETRIC:
        g.add(Triple(prop, RDF_TYPE, OWL.SymmetricProperty))
    for prop in _TRANSITIVE:
        g.add(Triple(prop, RDF_TYPE, OWL.TransitiveProperty))
    for ind, cls, label in _INDIVIDUALS:
        g.add(Triple(ind, RDF_TYPE, OWL.NamedIndividual))
        g.add(Triple(ind, RDF_TYPE, cls))
        g.add(Triple(ind, RDFS_LABEL, Term.literal(label)))
    for dc in _DEFINED:
        g.update(defined_class_triples(dc))
    axioms = SchemaAxioms(
        sub_class_of=frozenset(sub_class),
        sub_property_of=frozenset(sub_prop),
        inverse_of=frozenset(_INVERSES),
        transitive=frozenset(_TRANSITIVE),
        symmetric=frozenset(_SYMMETRIC),
        domains=frozenset(domains),
        ranges=frozenset(ranges),
        defined_classes=tuple(sorted(_DEFINED, key=lambda d: d.cls.sort_key())),
        object_properties=frozenset(p[0] for p in _OBJECT_PROPERTIES),
        datatype_properties=frozenset(p[0] for p in _DATATYPE_PROPERTIES),
    )
    return g, axioms


# -- extraction --------------------------------------------------------------

_DECLARATION_TYPES = {
    OWL.Class, OWL.ObjectProperty, OWL.DatatypeProperty, OWL.AnnotationProperty,
    OWL.NamedIndividual, OWL.Restriction, OWL.Ontology, RDFS.Class, RDF.Property,
    OWL.TransitiveProperty, OWL.SymmetricProperty, RDFS.Datatype,
}
_HANDLED_PREDICATES = {
    RDFS.subClassOf, RDFS.subPropertyOf, OWL.inverseOf, RDFS.domain, RDFS.range,
    OWL.equivalentClass, OWL.intersectionOf, OWL.onProperty, OWL.someValuesFrom,
    OWL.hasValue, RDF.first, RDF.rest, RDFS_LABEL, RDFS.comment,
}


def _find_cycle(edges) -> list[Term] | None:
    up = defaultdict(list)
    for a, b in sorted(edges, key=lambda e: (e[0].sort_key(), e[1].sort_key())):
        if a != b:
            up[a].append(b)
    state: dict[Term, int] = {}
    path: list[Term] = []

    def visit(node):
        state[node] = 1
        path.append(node)
        for nxt in up[node]:
            if state.get(nxt) == 1:
                return path[path.index(nxt):] + [nxt]
            if nxt not in state:
                found = visit(nxt)
                if found:
                    return found
        path.pop()
        state[node] = 2
        return None

    for node in list(up):
        if node not in state:
            found = visit(node)
            if found:
                return found
    return None


def _read_list(graph: Graph, head: Term, consumed: set[Triple]) -> list[Term] | None:
    items = []
    seen = set()
    node = head
    while node != RDF.nil:
        if node in seen:
            return None
        seen.add(node)
        first = graph.objects(node, RDF.first)
        rest = graph.objects(node, RDF.rest)
        if len(first) != 1 or len(rest) != 1:
            return None
        consumed.add(Triple(node, RDF.first, first[0]))
        consumed.add(Triple(node, RDF.rest, rest[0]))
        items.append(first[0])
        node = rest[0]
    return items


def _read_restriction(graph: Graph, node: Term, consumed: set[Triple]) -> Conjunct | None:
    props = graph.objects(node, OWL.onProperty)
    svf = graph.objects(node, OWL.someValuesFrom)
    hv = graph.objects(node, OWL.hasValue)
    if len(props) != 1 or len(svf) + len(hv) != 1:
        return None
    consumed.add(Triple(node, OWL.onProperty, props[0]))
    if Triple(node, RDF_TYPE, OWL.Restriction) in graph:
        consumed.add(Triple(node, RDF_TYPE, OWL.Restriction))
    if svf:
        if not svf[0].is_iri:
            return None
        consumed.add(Triple(node, OWL.someValuesFrom, svf[0]))
        return SomeValuesFrom(props[0], svf[0])
    consumed.add(Triple(node, OWL.hasValue, hv[0]))
    return HasValue(props[0], hv[0])


def extract_schema(graph: Graph) -> SchemaAxioms:
    """Read the supported axiom patterns out of a graph.

    Raises :class:`SchemaCycleError` for cyclic sub-class or sub-property
    hierarchies (self-loops are ignored).  Triples using OWL/RDFS vocabulary
    that match no supported pattern are listed in ``unrecognized``.
    """
    consumed: set[Triple] = set()
    unrecognized: list[str] = []

    def pairs(pred: Term):
        out = set()
        for s, p, o in graph.match(None, pred, None):
            if s.is_iri and o.is_iri:
                out.add((s, o))
                consumed.add(Triple(s, p, o))
        return out

    sub_class = {(a, b) for a, b in pairs(RDFS.subClassOf) if a != b}
    sub_prop = {(a, b) for a, b in pairs(RDFS.subPropertyOf) if a != b}
    for relation, edges in (("rdfs:subClassOf", sub_class), ("rdfs:subPropertyOf", sub_prop)):
        cycle = _find_cycle(edges)
        if cycle:
            raise SchemaCycleError(relation, cycle)
    inverse = pairs(OWL.inverseOf)
    domains = pairs(RDFS.domain)
    ranges = pairs(RDFS.range)
    transitive = {s for s in graph.subjects(RDF_TYPE, OWL.TransitiveProperty) if s.is_iri}
    symmetric = {s for s in graph.subjects(RDF_TYPE, OWL.SymmetricProperty) if s.is_iri}
    object_props = {s for s in graph.subjects(RDF_TYPE, OWL.ObjectProperty) if s.is_iri}
    data_props = {s for s in graph.subjects(RDF_TYPE, OWL.DatatypeProperty) if s.is_iri}

    defined = []
    for cls, _, expr in graph.match(None, OWL.equivalentClass, None):
        if not cls.is_iri or expr.is_literal:
            unrecognized.append(f"owl:equivalentClass on {cls}")
            continue
        conjuncts = None
        local: set[Triple] = {Triple(cls, OWL.equivalentClass, expr)}
        lists = graph.objects(expr, OWL.intersectionOf)
        if lists and len(lists) == 1:
            local.add(Triple(expr, OWL.intersectionOf, lists[0]))
            if Triple(expr, RDF_TYPE, OWL.Class) in graph:
                local.add(Triple(expr, RDF_TYPE, OWL.Class))
            items = _read_list(graph, lists[0], local)
            if items is not None:
                conjuncts = []
                for item in items:
                    if item.is_iri and not graph.objects(item, OWL.onProperty):
                        conjuncts.append(NamedClass(item))
                        continue
                    conj = _read_restriction(graph, item, local)
                    if conj is None:
                        conjuncts = None
                        break
                    conjuncts.append(conj)
        elif not lists:
            conj = _read_restriction(graph, expr, local)
            if conj is not None:
                conjuncts = [conj]
        if not conjuncts:
            unrecognized.append(f"unsupported class expression for {cls}")
            continue
        consumed |= local
        defined.append(DefinedClass(cls, tuple(conjuncts)))

    for s, p, o in graph.match():
        t = Triple(s, p, o)
        if t in consumed:
            continue
        if p == RDF_TYPE:
            if o in _DECLARATION_TYPES or not o.value.startswith((OWL_NS, RDFS_NS)):
                continue
            unrecognized.append(f"{s} rdf:type {o}")
        elif p in _HANDLED_PREDICATES:
            if p in (RDFS_LABEL, RDFS.comment):
                continue
            unrecognized.append(f"{s} {p} {o}")
        elif p.value.startswith(OWL_NS):
            unrecognized.append(f"{s} {p} {o}")

    for dc in defined:
        for conj in dc.conjuncts:
            if isinstance(conj, SomeValuesFrom) and data_props and conj.prop in data_props:
                unrecognized.append(f"someValuesFrom over datatype property {conj.prop}")
            if isinstance(conj, HasValue) and object_props and conj.prop in object_props and conj.value.is_literal:
                unrecognized.append(f"hasValue literal over object property {conj.prop}")

    return SchemaAxioms(
        sub_class_of=frozenset(sub_class),
        sub_property_of=frozenset(sub_prop),
        inverse_of=frozenset(inverse),
        transitive=frozenset(transitive),
        symmetric=frozenset(symmetric),
        domains=frozenset(domains),
        ranges=frozenset(ranges),
        defined_classes=tuple(sorted(defined, key=lambda d: d.cls.sort_key())),
        object_properties=frozenset(object_props),
        datatype_properties=frozenset(data_props),
        unrecognized=tuple(sorted(set(unrecognized))),
    )


def undeclared_references(graph: Graph, axioms: SchemaAxioms) -> set[Term]:
    """IRIs used in axioms that the graph never declares as a class or property."""
    declared = set()
    for kind in (OWL.Class, RDFS.Class, OWL.ObjectProperty, OWL.DatatypeProperty, RDF.Property):
        declared.update(graph.subjects(RDF_TYPE, kind))
    used = set()
    for a, b in axioms.sub_class_of | axioms.sub_property_of | axioms.inverse_of | axioms.domains | axioms.ranges:
        used.update((a, b))
    used |= axioms.transitive | axioms.symmetric
    for dc in axioms.defined_classes:
        used.add(dc.cls)
        for conj in dc.conjuncts:
            if isinstance(conj, NamedClass):
                used.add(conj.cls)
            elif isinstance(conj, SomeValuesFrom):
                used.update((conj.prop, conj.filler))
            else:
                used.add(conj.prop)
    return {t for t in used if t.is_iri and not is_datatype(t) and t not in declared}


# -- labels ------------------------------------------------------------------

class LabelIndex:
    """rdfs:label lookup; exact match first, then case-insensitive."""

    def __init__(self, graph: Graph):
        self.exact: dict[str, set[Term]] = defaultdict(set)
        self.folded: dict[str, set[Term]] = defaultdict(set)
        for s, _, o in graph.match(None, RDFS_LABEL, None):
            if o.is_literal:
                self.exact[o.value].add(s)
                self.folded[o.value.casefold()].add(s)

    def resolve(self, label: str) -> Term:
        for table, key in ((self.exact, label), (self.folded, label.casefold())):
            found = table.get(key)
            if found:
                if len(found) > 1:
                    raise AmbiguousLabelError(label, [t.value for t in found])
                return next(iter(found))
        raise UnknownLabelError(label)


def resolve_by_label(label: str, graph: Graph) -> Term:
    """Return the unique entity whose rdfs:label is ``label``."""
    return LabelIndex(graph).resolve(label)
