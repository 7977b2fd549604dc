"""Deliberately naive reference implementations used as test oracles.

None of these share code with the package's algorithms; they only use its
data types.
"""

from __future__ import annotations

import itertools

from codo_kg.schema import HasValue, NamedClass, SchemaAxioms, SomeValuesFrom, is_datatype
from codo_kg.terms import RDF_TYPE, Term, Triple


def naive_closure(triples, axioms: SchemaAxioms) -> set[Triple]:
    """Apply every rule to the whole set until nothing changes."""
    facts = set(triples)
    ranges = {(p, c) for p, c in axioms.ranges if not is_datatype(c)}
    inverses = set(axioms.inverse_of) | {(b, a) for a, b in axioms.inverse_of}
    while True:
        new = set()
        for s, p, o in facts:
            for sub, sup in axioms.sub_property_of:
                if p == sub:
                    new.add(Triple(s, sup, o))
            for a, b in inverses:
                if p == a:
                    new.add(Triple(o, b, s))
            if p in axioms.symmetric:
                new.add(Triple(o, p, s))
            if p in axioms.transitive:
                for s2, p2, o2 in facts:
                    if p2 == p and s2 == o:
                        new.add(Triple(s, p, o2))
            if p == RDF_TYPE:
                for sub, sup in axioms.sub_class_of:
                    if o == sub:
                        new.add(Triple(s, RDF_TYPE, sup))
            for prop, cls in axioms.domains:
                if p == prop:
                    new.add(Triple(s, RDF_TYPE, cls))
            for prop, cls in ranges:
                if p == prop:
                    new.add(Triple(o, RDF_TYPE, cls))
        individuals = {s for s, _, _ in facts}
        for dc in axioms.defined_classes:
            for ind in individuals:
                if satisfies(ind, dc.conjuncts, facts):
                    new.add(Triple(ind, RDF_TYPE, dc.cls))
        new = {t for t in new if not t.subject.is_literal}
        if new <= facts:
            return facts
        facts |= new


def satisfies(ind: Term, conjuncts, facts) -> bool:
    """Per-individual evaluation of a conjunction of class expressions."""
    for conj in conjuncts:
        if isinstance(conj, NamedClass):
            if Triple(ind, RDF_TYPE, conj.cls) not in facts:
                return False
        elif isinstance(conj, HasValue):
            if Triple(ind, conj.prop, conj.value) not in facts:
                return False
        elif isinstance(conj, SomeValuesFrom):
            fillers = [o for s, p, o in facts if s == ind and p == conj.prop]
            if not any(Triple(f, RDF_TYPE, conj.filler) in facts for f in fillers):
                return False
    return True


def reachable_supers(prop: Term, sub_property_of) -> set[Term]:
    """All properties reachable from ``prop`` along sub-property edges, itself included."""
    seen = {prop}
    frontier = [prop]
    while frontier:
        current = frontier.pop()
        for sub, sup in sub_property_of:
            if sub == current and sup not in seen:
                seen.add(sup)
                frontier.append(sup)
    return seen


def subproperty_closure(triples, sub_property_of) -> set[Triple]:
    return {Triple(s, q, o) for s, p, o in triples for q in reachable_supers(p, sub_property_of)}


def brute_force_bgp(patterns, triples) -> list[dict[str, Term]]:
    """Try every assignment of graph terms to the variables; keep those matching every pattern.

    ``patterns`` holds 3-tuples whose entries are ``Term`` or a variable
    name string starting with ``?``.
    """
    facts = set(triples)
    domain = sorted({x for t in facts for x in t}, key=Term.sort_key)
    variables = sorted({x for pat in patterns for x in pat if isinstance(x, str)})
    out = []
    for values in itertools.product(domain, repeat=len(variables)):
        env = dict(zip(variables, values))
        if all(tuple(env.get(x, x) if isinstance(x, str) else x for x in pat) in facts for pat in patterns):
            out.append({v[1:]: t for v, t in env.items()})
    return out


def fnv1a_64_reference(data: bytes) -> int:
    """FNV-1a, 64-bit, straight from the published parameters."""
    offset_basis = 14695981039346656037
    prime = 1099511628211
    h = offset_basis
    for b in data:
        h = ((h ^ b) * prime) % (2 ** 64)
    return h
