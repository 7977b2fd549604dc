"""In-memory triple store with SPO, POS and OSP indexes.

Terms are interned to small integers; the three nested-dict indexes hold
integer ids only.  The public API speaks :class:`~codo_kg.terms.Term` and
:class:`~codo_kg.terms.Triple`; the ``*_ids`` methods are used by the
reasoner and the query engine for speed.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import MalformedTripleError
from .terms import DEFAULT_PREFIXES, LITERAL_KIND, RDF_TYPE, Term, Triple, resolve_term

IdTriple = tuple[int, int, int]


def _add(index: dict, a: int, b: int, c: int) -> None:
    inner = index.get(a)
    if inner is None:
        index[a] = {b: {c}}
        return
    leaf = inner.get(b)
    if leaf is None:
        inner[b] = {c}
    else:
        leaf.add(c)


class Graph:
    """A set of triples with three orderings kept in lock-step.

    Mutation requires exclusive access; concurrent readers are safe once
    writes have stopped.
    """

    def __init__(self, triples: Iterable[Triple] = (), prefixes: dict[str, str] | None = None):
        self.prefixes: dict[str, str] = dict(DEFAULT_PREFIXES)
        if prefixes:
            self.prefixes.update(prefixes)
        self._terms: list[Term] = []
        self._ids: dict[Term, int] = {}
        self._literal_ids: set[int] = set()
        self._spo: dict[int, dict[int, set[int]]] = {}
        self._pos: dict[int, dict[int, set[int]]] = {}
        self._osp: dict[int, dict[int, set[int]]] = {}
        self._size = 0
        self._inferred: set[IdTriple] = set()
        for t in triples:
            self.add(t)

    # -- interning -------------------------------------------------------

    def intern(self, term: Term) -> int:
        tid = self._ids.get(term)
        if tid is None:
            tid = len(self._terms)
            self._terms.append(term)
            self._ids[term] = tid
            if term.kind == LITERAL_KIND:
                self._literal_ids.add(tid)
        return tid

    def lookup_id(self, term: Term) -> int | None:
        return self._ids.get(term)

    def term(self, tid: int) -> Term:
        return self._terms[tid]

    @property
    def literal_ids(self) -> frozenset[int]:
        return frozenset(self._literal_ids)

    def to_triple(self, ids: IdTriple) -> Triple:
        terms = self._terms
        return Triple(terms[ids[0]], terms[ids[1]], terms[ids[2]])

    def to_ids(self, t: Triple, create: bool = False) -> IdTriple | None:
        if create:
            return self.intern(t[0]), self.intern(t[1]), self.intern(t[2])
        ids = self._ids
        s, p, o = ids.get(t[0]), ids.get(t[1]), ids.get(t[2])
        if s is None or p is None or o is None:
            return None
        return s, p, o

    # -- mutation --------------------------------------------------------

    def add(self, t: Triple, inferred: bool = False) -> bool:
        """Insert a triple; return whether it was new.

        Re-asserting a triple that was previously inferred clears its
        inferred flag.
        """
        s, p, o = t
        if s.kind == LITERAL_KIND:
            raise MalformedTripleError(f"literal in subject position: {s}")
        if not p.is_iri:
            raise MalformedTripleError(f"predicate must be an IRI: {p}")
        return self.add_ids((self.intern(s), self.intern(p), self.intern(o)), inferred)

    def add_ids(self, ids: IdTriple, inferred: bool = False) -> bool:
        s, p, o = ids
        inner = self._spo.get(s)
        if inner is not None:
            leaf = inner.get(p)
            if leaf is not None and o in leaf:
                if not inferred and self._inferred:
                    self._inferred.discard(ids)
                return False
        _add(self._spo, s, p, o)
        _add(self._pos, p, o, s)
        _add(self._osp, o, s, p)
        self._size += 1
        if inferred:
            self._inferred.add(ids)
        return True

    def update(self, triples: Iterable[Triple], inferred: bool = False) -> int:
        return sum(self.add(t, inferred) for t in triples)

    def bind(self, prefix: str, namespace: str) -> None:
        self.prefixes[prefix] = namespace

    # -- access ----------------------------------------------------------

    def __len__(self) -> int:
        return self._size

    def __contains__(self, t: Triple) -> bool:
        ids = self.to_ids(t)
        return ids is not None and self.contains_ids(ids)

    def contains_ids(self, ids: IdTriple) -> bool:
        inner = self._spo.get(ids[0])
        if inner is None:
            return False
        leaf = inner.get(ids[1])
        return leaf is not None and ids[2] in leaf

    def __iter__(self) -> Iterator[Triple]:
        return self.match()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return len(self) == len(other) and self.triple_set() == other.triple_set()

    __hash__ = None

    def triple_set(self) -> set[Triple]:
        return set(self.match())

    def is_inferred(self, t: Triple) -> bool:
        ids = self.to_ids(t)
        return ids is not None and ids in self._inferred

    def inferred_ids(self) -> set[IdTriple]:
        return set(self._inferred)

    @property
    def inferred_count(self) -> int:
        return len(self._inferred)

    def asserted(self) -> Iterator[Triple]:
        inferred = self._inferred
        for ids in self.match_ids():
            if ids not in inferred:
                yield self.to_triple(ids)

    def inferred(self) -> Iterator[Triple]:
        for ids in sorted(self._inferred):
            yield self.to_triple(ids)

    def match(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> Iterator[Triple]:
        """Yield triples consistent with the bound positions (``None`` is a wildcard)."""
        ids = []
        for term in (s, p, o):
            if term is None:
                ids.append(None)
                continue
            tid = self._ids.get(term)
            if tid is None:
                return
            ids.append(tid)
        terms = self._terms
        for a, b, c in self.match_ids(*ids):
            yield Triple(terms[a], terms[b], terms[c])

    def match_ids(self, s: int | None = None, p: int | None = None, o: int | None = None) -> Iterator[IdTriple]:
        if s is not None:
            inner = self._spo.get(s)
            if not inner:
                return
            if p is not None:
                leaf = inner.get(p)
                if not leaf:
                    return
                if o is not None:
                    if o in leaf:
                        yield s, p, o
                    return
                for o2 in leaf:
                    yield s, p, o2
                return
            if o is not None:
                # (s, ?, o) reads the OSP index
                leaf = self._osp.get(o, {}).get(s)
                if leaf:
                    for p2 in leaf:
                        yield s, p2, o
                return
            for p2, leaf in inner.items():
                for o2 in leaf:
                    yield s, p2, o2
            return
        if p is not None:
            inner = self._pos.get(p)
            if not inner:
                return
            if o is not None:
                for s2 in inner.get(o, ()):
                    yield s2, p, o
                return
            for o2, leaf in inner.items():
                for s2 in leaf:
                    yield s2, p, o2
            return
        if o is not None:
            inner = self._osp.get(o)
            if not inner:
                return
            for s2, leaf in inner.items():
                for p2 in leaf:
                    yield s2, p2, o
            return
        for s2, inner in self._spo.items():
            for p2, leaf in inner.items():
                for o2 in leaf:
                    yield s2, p2, o2

    def objects_ids(self, s: int, p: int) -> set[int]:
        inner = self._spo.get(s)
        return inner.get(p, set()) if inner else set()

    def subjects_ids(self, p: int, o: int) -> set[int]:
        inner = self._pos.get(p)
        return inner.get(o, set()) if inner else set()

    def objects(self, s: Term, p: Term) -> list[Term]:
        sid, pid = self._ids.get(s), self._ids.get(p)
        if sid is None or pid is None:
            return []
        return [self._terms[o] for o in self.objects_ids(sid, pid)]

    def subjects(self, p: Term, o: Term) -> list[Term]:
        pid, oid = self._ids.get(p), self._ids.get(o)
        if pid is None or oid is None:
            return []
        return [self._terms[s] for s in self.subjects_ids(pid, oid)]

    def value(self, s: Term, p: Term) -> Term | None:
        values = self.objects(s, p)
        return min(values, key=Term.sort_key) if values else None

    def instances(self, cls: Term) -> list[Term]:
        return self.subjects(RDF_TYPE, cls)

    def count(self, s: int | None = None, p: int | None = None, o: int | None = None) -> int:
        """Number of triples matching an id pattern, cheap for one bound position."""
        if s is None and p is None and o is None:
            return self._size
        if s is None and o is None:
            return sum(len(v) for v in self._pos.get(p, {}).values())
        return sum(1 for _ in self.match_ids(s, p, o))

    def resolve(self, text: str) -> Term:
        return resolve_term(text, self.prefixes)

    # -- consistency -----------------------------------------------------

    def index_views(self) -> tuple[set[IdTriple], set[IdTriple], set[IdTriple]]:
        """The triple set as read back from each index separately."""
        spo = {(s, p, o) for s, inner in self._spo.items() for p, leaf in inner.items() for o in leaf}
        pos = {(s, p, o) for p, inner in self._pos.items() for o, leaf in inner.items() for s in leaf}
        osp = {(s, p, o) for o, inner in self._osp.items() for s, leaf in inner.items() for p in leaf}
        return spo, pos, osp

    def copy(self) -> Graph:
        g = Graph(prefixes=self.prefixes)
        g._terms = list(self._terms)
        g._ids = dict(self._ids)
        g._literal_ids = set(self._literal_ids)
        g._spo = {a: {b: set(c) for b, c in inner.items()} for a, inner in self._spo.items()}
        g._pos = {a: {b: set(c) for b, c in inner.items()} for a, inner in self._pos.items()}
        g._osp = {a: {b: set(c) for b, c in inner.items()} for a, inner in self._osp.items()}
        g._size = self._size
        g._inferred = set(self._inferred)
        return g

    def __repr__(self):
        return f"<Graph {self._size} triples ({len(self._inferred)} inferred)>"
