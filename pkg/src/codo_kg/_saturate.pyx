# distutils: language = c++
"""Compiled twin of codo_kg.saturate.PySaturator.

Same contract and the same traversal order, so both backends return
identical output lists.  Triples are packed into one 64-bit key
(21 bits per id).
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.deque cimport deque
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

cdef enum:
    BITS = 21
    MASK = (1 << 21) - 1

cdef int SUBPROPERTY = 1, INVERSE = 2, SYMMETRIC = 3, TRANSITIVE = 4, SUBCLASS = 5, DOMAIN_RANGE = 6


cdef inline uint64_t pack3(int64_t s, int64_t p, int64_t o) nogil:
    return (<uint64_t>s << (2 * BITS)) | (<uint64_t>p << BITS) | <uint64_t>o


cdef inline uint64_t pack2(int64_t a, int64_t b) nogil:
    return (<uint64_t>a << BITS) | <uint64_t>b


cdef inline void _check(int64_t v) except *:
    if v < 0 or v > MASK:
        raise OverflowError(f"term id {v} does not fit the packed triple key")


cdef struct Trip:
    int64_t s
    int64_t p
    int64_t o


cdef void _fill(unordered_map[int64_t, vector[int64_t]]& target, dict source) except *:
    cdef int64_t key
    for key, values in source.items():
        for v in values:
            target[key].push_back(v)


cdef class Saturator:
    cdef int64_t type_id
    cdef unordered_map[int64_t, vector[int64_t]] super_props, inverses, super_classes, domains, ranges
    cdef unordered_set[int64_t] symmetric, transitive, literals
    cdef unordered_set[uint64_t] seen
    cdef unordered_map[uint64_t, vector[int64_t]] trans_out, trans_in
    cdef deque[Trip] queue
    cdef list out

    def __init__(self, type_id, super_props, inverses, symmetric, transitive,
                 super_classes, domains, ranges, literal_ids):
        self.type_id = type_id
        _check(type_id)
        _fill(self.super_props, super_props)
        _fill(self.inverses, inverses)
        _fill(self.super_classes, super_classes)
        _fill(self.domains, domains)
        _fill(self.ranges, ranges)
        for v in symmetric:
            self.symmetric.insert(v)
        for v in transitive:
            self.transitive.insert(v)
        for v in literal_ids:
            self.literals.insert(v)

    def __len__(self):
        return self.seen.size()

    cdef void _record(self, int64_t s, int64_t p, int64_t o):
        self.seen.insert(pack3(s, p, o))
        if self.transitive.count(p):
            self.trans_out[pack2(p, s)].push_back(o)
            self.trans_in[pack2(p, o)].push_back(s)

    cdef void _emit(self, int64_t s, int64_t p, int64_t o, int rule,
                    int64_t s1, int64_t p1, int64_t o1,
                    bint two, int64_t s2, int64_t p2, int64_t o2) except *:
        cdef Trip t
        if self.literals.count(s) or self.seen.count(pack3(s, p, o)):
            return
        self._record(s, p, o)
        t.s = s
        t.p = p
        t.o = o
        self.queue.push_back(t)
        self.out.append((s, p, o, rule, (s1, p1, o1), (s2, p2, o2) if two else None))

    def push(self, seeds):
        cdef Trip t
        cdef int64_t s, p, o, q, c, a
        cdef size_t k, n
        cdef vector[int64_t]* vec
        cdef unordered_map[int64_t, vector[int64_t]].iterator it
        cdef unordered_map[uint64_t, vector[int64_t]].iterator jt
        self.out = []
        for seed in seeds:
            s, p, o = seed[0], seed[1], seed[2]
            _check(s)
            _check(p)
            _check(o)
            if not self.seen.count(pack3(s, p, o)):
                self._record(s, p, o)
                t.s = s
                t.p = p
                t.o = o
                self.queue.push_back(t)
        while not self.queue.empty():
            t = self.queue.front()
            self.queue.pop_front()
            s, p, o = t.s, t.p, t.o
            it = self.super_props.find(p)
            if it != self.super_props.end():
                vec = &(self.super_props[p])
                for k in range(vec.size()):
                    q = vec[0][k]
                    self._emit(s, q, o, SUBPROPERTY, s, p, o, False, 0, 0, 0)
            it = self.inverses.find(p)
            if it != self.inverses.end():
                vec = &(self.inverses[p])
                for k in range(vec.size()):
                    q = vec[0][k]
                    self._emit(o, q, s, INVERSE, s, p, o, False, 0, 0, 0)
            if self.symmetric.count(p):
                self._emit(o, p, s, SYMMETRIC, s, p, o, False, 0, 0, 0)
            if self.transitive.count(p):
                jt = self.trans_out.find(pack2(p, o))
                if jt != self.trans_out.end():
                    vec = &(self.trans_out[pack2(p, o)])
                    n = vec.size()
                    for k in range(n):
                        c = vec[0][k]
                        self._emit(s, p, c, TRANSITIVE, s, p, o, True, o, p, c)
                jt = self.trans_in.find(pack2(p, s))
                if jt != self.trans_in.end():
                    vec = &(self.trans_in[pack2(p, s)])
                    n = vec.size()
                    for k in range(n):
                        a = vec[0][k]
                        self._emit(a, p, o, TRANSITIVE, a, p, s, True, s, p, o)
            if p == self.type_id:
                it = self.super_classes.find(o)
                if it != self.super_classes.end():
                    vec = &(self.super_classes[o])
                    for k in range(vec.size()):
                        self._emit(s, self.type_id, vec[0][k], SUBCLASS, s, p, o, False, 0, 0, 0)
            it = self.domains.find(p)
            if it != self.domains.end():
                vec = &(self.domains[p])
                for k in range(vec.size()):
                    self._emit(s, self.type_id, vec[0][k], DOMAIN_RANGE, s, p, o, False, 0, 0, 0)
            it = self.ranges.find(p)
            if it != self.ranges.end():
                vec = &(self.ranges[p])
                for k in range(vec.size()):
                    self._emit(o, self.type_id, vec[0][k], DOMAIN_RANGE, s, p, o, False, 0, 0, 0)
        result = self.out
        self.out = None
        return result

