"""Semi-naive saturation kernel for the single-join rules (R1 to R6).

Works on interned integer triples.  Two implementations share one contract:
the compiled ``codo_kg._saturate`` extension and :class:`PySaturator` below.
``Saturator`` is whichever was selected at import time; set
``CODO_KG_PURE_PYTHON=1`` to force the fallback.

Rule codes in the output tuples::

    1 sub-property    2 inverse     3 symmetric
    4 transitive      5 sub-class   6 domain/range
"""

from __future__ import annotations

import os
from collections import deque

SUBPROPERTY, INVERSE, SYMMETRIC, TRANSITIVE, SUBCLASS, DOMAIN_RANGE = 1, 2, 3, 4, 5, 6
# the compiled kernel packs three ids into one 64-bit key
MAX_TERM_ID = (1 << 21) - 1


class PySaturator:
    """Worklist saturation; each triple is processed exactly once.

    ``push`` adds seed triples and returns every newly derived triple as
    ``(s, p, o, rule, premise, second_premise_or_None)`` in derivation order.
    Conclusions with a literal subject are never produced.
    """

    def __init__(self, type_id, super_props, inverses, symmetric, transitive,
                 super_classes, domains, ranges, literal_ids):
        self.type_id = type_id
        self.super_props = {k: list(v) for k, v in super_props.items()}
        self.inverses = {k: list(v) for k, v in inverses.items()}
        self.symmetric = set(symmetric)
        self.transitive = set(transitive)
        self.super_classes = {k: list(v) for k, v in super_classes.items()}
        self.domains = {k: list(v) for k, v in domains.items()}
        self.ranges = {k: list(v) for k, v in ranges.items()}
        self.literals = set(literal_ids)
        self.seen: set[tuple[int, int, int]] = set()
        self.trans_out: dict[tuple[int, int], list[int]] = {}
        self.trans_in: dict[tuple[int, int], list[int]] = {}

    def __len__(self):
        return len(self.seen)

    def _record(self, t) -> None:
        self.seen.add(t)
        s, p, o = t
        if p in self.transitive:
            self.trans_out.setdefault((p, s), []).append(o)
            self.trans_in.setdefault((p, o), []).append(s)

    def push(self, seeds):
        seen = self.seen
        queue = deque()
        for t in seeds:
            t = (t[0], t[1], t[2])
            if t not in seen:
                self._record(t)
                queue.append(t)
        out = []
        literals = self.literals

        def emit(c, rule, first, second=None):
            if c[0] in literals or c in seen:
                return
            self._record(c)
            queue.append(c)
            out.append((c[0], c[1], c[2], rule, first, second))

        super_props, inverses = self.super_props, self.inverses
        symmetric, transitive = self.symmetric, self.transitive
        super_classes, domains, ranges = self.super_classes, self.domains, self.ranges
        type_id = self.type_id
        while queue:
            t = queue.popleft()
            s, p, o = t
            for q in super_props.get(p, ()):
                emit((s, q, o), SUBPROPERTY, t)
            for q in inverses.get(p, ()):
                emit((o, q, s), INVERSE, t)
            if p in symmetric:
                emit((o, p, s), SYMMETRIC, t)
            if p in transitive:
                after = self.trans_out.get((p, o))
                if after:
                    for k in range(len(after)):
                        c = after[k]
                        emit((s, p, c), TRANSITIVE, t, (o, p, c))
                before = self.trans_in.get((p, s))
                if before:
                    for k in range(len(before)):
                        a = before[k]
                        emit((a, p, o), TRANSITIVE, (a, p, s), t)
            if p == type_id:
                for d in super_classes.get(o, ()):
                    emit((s, type_id, d), SUBCLASS, t)
            for c in domains.get(p, ()):
                emit((s, type_id, c), DOMAIN_RANGE, t)
            for c in ranges.get(p, ()):
                emit((o, type_id, c), DOMAIN_RANGE, t)
        return out


try:
    from ._saturate import Saturator as CSaturator
except ImportError:  # extension not built
    CSaturator = None

if CSaturator is not None and not os.environ.get("CODO_KG_PURE_PYTHON"):
    Saturator = CSaturator
    BACKEND = "cython"
else:
    Saturator = PySaturator
    BACKEND = "python"

BACKENDS = {"python": PySaturator}
if CSaturator is not None:
    BACKENDS["cython"] = CSaturator
