"""Forward-chaining materialization of the OWL fragment CODO uses.

Rule catalog:

* R1 sub-property: ``(s p o), p ⊑ q  =>  (s q o)``
* R2 inverse:      ``(s p o), p inverseOf q  =>  (o q s)`` (both directions)
* R3 symmetric:    ``(s p o)  =>  (o p s)``
* R4 transitive:   ``(a p b), (b p c)  =>  (a p c)``
* R5 sub-class:    ``(i type C), C ⊑ D  =>  (i type D)``
* R6 domain/range: ``(s p o)  =>  (s type dom(p))``, ``(o type ran(p))``
* R7 defined class: ``i`` satisfies every conjunct of ``D``  =>  ``(i type D)``

R1 to R6 run in the saturation kernel; R7 runs here between kernel passes
until nothing changes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import saturate
from .errors import DivergenceError, NotEntailedError
from .graph import Graph, IdTriple
from .schema import HasValue, NamedClass, SchemaAxioms, SomeValuesFrom, is_datatype
from .terms import RDF_TYPE, Term, Triple

log = logging.getLogger(__name__)

RULE_NAMES = {
    saturate.SUBPROPERTY: "R1",
    saturate.INVERSE: "R2",
    saturate.SYMMETRIC: "R3",
    saturate.TRANSITIVE: "R4",
    saturate.SUBCLASS: "R5",
    saturate.DOMAIN_RANGE: "R6",
    7: "R7",
}


@dataclass(frozen=True)
class Derivation:
    conclusion: Triple
    rule: str
    premises: tuple[Triple, ...]


@dataclass
class InferenceReport:
    asserted_count: int
    inferred_count: int
    iterations: int
    defined_class_memberships: dict[Term, set[Term]]
    backend: str = ""
    # first derivation of each inferred id-triple: (rule, premise id-triples)
    derivations: dict[IdTriple, tuple[str, tuple[IdTriple, ...]]] = field(default_factory=dict, repr=False)


def _ordered(terms):
    return sorted(terms, key=Term.sort_key)


def _kernel_tables(graph: Graph, axioms: SchemaAxioms):
    ident = graph.intern

    def multimap(pairs):
        table: dict[int, list[int]] = {}
        for a, b in sorted(pairs, key=lambda ab: (ab[0].sort_key(), ab[1].sort_key())):
            targets = table.setdefault(ident(a), [])
            bid = ident(b)
            if bid not in targets:
                targets.append(bid)
        return table

    inverse_pairs = set(axioms.inverse_of) | {(b, a) for a, b in axioms.inverse_of}
    return dict(
        type_id=ident(RDF_TYPE),
        super_props=multimap(axioms.sub_property_of),
        inverses=multimap(inverse_pairs),
        symmetric=[ident(p) for p in _ordered(axioms.symmetric)],
        transitive=[ident(p) for p in _ordered(axioms.transitive)],
        super_classes=multimap(axioms.sub_class_of),
        domains=multimap(axioms.domains),
        ranges=multimap((p, c) for p, c in axioms.ranges if not is_datatype(c)),
    )


class _DefinedClassRule:
    """R7 over interned ids."""

    def __init__(self, graph: Graph, axioms: SchemaAxioms):
        self.graph = graph
        self.type_id = graph.intern(RDF_TYPE)
        self.classes = []
        svf_props = set()
        for dc in axioms.defined_classes:
            conjuncts = []
            for conj in dc.conjuncts:
                if isinstance(conj, NamedClass):
                    conjuncts.append(("class", graph.intern(conj.cls)))
                elif isinstance(conj, SomeValuesFrom):
                    prop = graph.intern(conj.prop)
                    svf_props.add(prop)
                    conjuncts.append(("some", prop, graph.intern(conj.filler)))
                else:
                    conjuncts.append(("value", graph.intern(conj.prop), graph.intern(conj.value)))
            self.classes.append((graph.intern(dc.cls), conjuncts))
        self.svf_props = sorted(svf_props)

    def witness(self, ind: int, conjuncts) -> list[IdTriple] | None:
        g, type_id = self.graph, self.type_id
        premises = []
        for conj in conjuncts:
            if conj[0] == "class":
                t = (ind, type_id, conj[1])
                if not g.contains_ids(t):
                    return None
                premises.append(t)
            elif conj[0] == "value":
                t = (ind, conj[1], conj[2])
                if not g.contains_ids(t):
                    return None
                premises.append(t)
            else:
                _, prop, filler = conj
                for o in sorted(g.objects_ids(ind, prop)):
                    if g.contains_ids((o, type_id, filler)):
                        premises.append((ind, prop, o))
                        premises.append((o, type_id, filler))
                        break
                else:
                    return None
        return premises

    def candidates(self, new_triples) -> set[int]:
        g, type_id = self.graph, self.type_id
        found = set()
        for s, p, o in new_triples:
            found.add(s)
            if p == type_id:
                for prop in self.svf_props:
                    found.update(g.subjects_ids(prop, s))
        return found

    def apply(self, individuals) -> list[tuple[IdTriple, tuple[IdTriple, ...]]]:
        g, type_id = self.graph, self.type_id
        out = []
        literals = g._literal_ids
        for ind in sorted(individuals):
            if ind in literals:
                continue
            for cls, conjuncts in self.classes:
                t = (ind, type_id, cls)
                if g.contains_ids(t):
                    continue
                premises = self.witness(ind, conjuncts)
                if premises is not None:
                    g.add_ids(t, inferred=True)
                    out.append((t, tuple(premises)))
        return out


def materialize(graph: Graph, axioms: SchemaAxioms, backend: str | None = None,
                max_iterations: int | None = None) -> InferenceReport:
    """Close ``graph`` under R1 to R7 in place.

    Inferred triples are flagged so they can be exported separately.  The
    iteration cap defaults to ten passes per axiom; hitting it raises
    :class:`DivergenceError`.
    """
    kernel_cls = saturate.BACKENDS[backend] if backend else saturate.Saturator
    name = backend or saturate.BACKEND
    before = len(graph)
    tables = _kernel_tables(graph, axioms)
    r7 = _DefinedClassRule(graph, axioms)
    literal_ids = graph.literal_ids
    try:
        kernel = kernel_cls(literal_ids=literal_ids, **tables)
        seeds = list(graph.match_ids())
        produced = kernel.push(seeds)
    except OverflowError:
        log.info("term ids exceed compiled kernel range; using the Python kernel")
        kernel_cls, name = saturate.PySaturator, "python"
        kernel = kernel_cls(literal_ids=literal_ids, **tables)
        seeds = list(graph.match_ids())
        produced = kernel.push(seeds)

    cap = max_iterations if max_iterations is not None else 10 * max(1, len(axioms))
    derivations: dict[IdTriple, tuple[str, tuple[IdTriple, ...]]] = {}
    changed = seeds
    iterations = 0
    while True:
        iterations += 1
        if iterations > cap:
            raise DivergenceError(f"no fixpoint after {cap} passes")
        for s, p, o, rule, first, second in produced:
            t = (s, p, o)
            if graph.add_ids(t, inferred=True):
                premises = (first,) if second is None else (first, second)
                derivations[t] = (RULE_NAMES[rule], premises)
        new_ids = [(c[0], c[1], c[2]) for c in produced]
        candidates = r7.candidates(new_ids + changed)
        typed = r7.apply(candidates)
        for t, premises in typed:
            derivations[t] = ("R7", premises)
        if not typed:
            break
        changed = [t for t, _ in typed]
        produced = kernel.push(changed)

    memberships = {}
    type_id = graph.intern(RDF_TYPE)
    for dc in axioms.defined_classes:
        cid = graph.intern(dc.cls)
        memberships[dc.cls] = {graph.term(s) for s in graph.subjects_ids(type_id, cid)}
    return InferenceReport(
        asserted_count=before,
        inferred_count=len(graph) - before,
        iterations=iterations,
        defined_class_memberships=memberships,
        backend=name,
        derivations=derivations,
    )


def is_entailed(graph: Graph, axioms: SchemaAxioms, t: Triple) -> bool:
    """Whether ``t`` is in the materialization of ``graph`` (the graph itself is not modified)."""
    if t in graph:
        return True
    closed = graph.copy()
    materialize(closed, axioms)
    return t in closed


def explain(graph: Graph, axioms: SchemaAxioms, t: Triple) -> list[Derivation]:
    """Derivation steps grounding ``t`` in asserted triples, premises first.

    An asserted triple needs no steps.  Raises :class:`NotEntailedError` if
    ``t`` does not follow.
    """
    if t in graph and not graph.is_inferred(t):
        return []
    closed = Graph(graph.asserted(), prefixes=graph.prefixes)
    report = materialize(closed, axioms)
    ids = closed.to_ids(t)
    if ids is None or not closed.contains_ids(ids):
        raise NotEntailedError(f"not entailed: {t.n3()}")
    steps: list[Derivation] = []
    done: set[IdTriple] = set()
    # iterative post-order walk; premises always predate their conclusion
    stack: list[tuple[IdTriple, bool]] = [(ids, False)]
    while stack:
        node, expanded = stack.pop()
        if node not in report.derivations:
            continue
        rule, premises = report.derivations[node]
        if expanded:
            steps.append(Derivation(closed.to_triple(node), rule, tuple(closed.to_triple(p) for p in premises)))
            continue
        if node in done:
            continue
        done.add(node)
        stack.append((node, True))
        for prem in reversed(premises):
            if prem not in done:
                stack.append((prem, False))
    return steps
