"""A small SPARQL SELECT engine: basic graph patterns, FILTER, GROUP BY/COUNT,
ORDER BY, LIMIT/OFFSET.

Evaluation is plain pattern matching over whatever the graph holds, so run
the reasoner first when inferred answers are wanted.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal, InvalidOperation

from .errors import QuerySyntaxError, UnresolvedPrefixError, UnsupportedFeatureError
from .graph import Graph
from .terms import (
    DEFAULT_PREFIXES,
    NUMERIC_DATATYPES,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_INTEGER,
    XSD_STRING,
    Term,
    compact,
    unescape,
)

log = logging.getLogger(__name__)


# -- AST ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return "?" + self.name


@dataclass(frozen=True)
class Count:
    var: Var | None  # None is COUNT(*)
    distinct: bool
    alias: Var


@dataclass(frozen=True)
class Compare:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Logical:
    op: str  # "&&", "||" or "!"
    args: tuple


@dataclass(frozen=True)
class TriplePattern:
    s: Term | Var
    p: Term | Var
    o: Term | Var

    def variables(self) -> list[Var]:
        return [x for x in (self.s, self.p, self.o) if isinstance(x, Var)]


@dataclass
class Query:
    prefixes: dict[str, str]
    projection: list[Var | Count] | None  # None is SELECT *
    distinct: bool
    patterns: list[TriplePattern]
    filters: list = field(default_factory=list)
    group_by: list[Var] = field(default_factory=list)
    order_by: list[tuple[Var, bool]] = field(default_factory=list)  # (key, descending)
    limit: int | None = None
    offset: int | None = None

    def pattern_vars(self) -> list[Var]:
        seen: dict[Var, None] = {}
        for tp in self.patterns:
            for v in tp.variables():
                seen.setdefault(v)
        return list(seen)

    @property
    def aggregated(self) -> bool:
        return bool(self.group_by) or any(isinstance(x, Count) for x in self.projection or ())

    def header(self) -> list[str]:
        if self.projection is None:
            return [v.name for v in self.pattern_vars()]
        return [x.alias.name if isinstance(x, Count) else x.name for x in self.projection]


def expression_vars(expr) -> set[Var]:
    if isinstance(expr, Var):
        return {expr}
    if isinstance(expr, Compare):
        return expression_vars(expr.left) | expression_vars(expr.right)
    if isinstance(expr, Logical):
        out = set()
        for a in expr.args:
            out |= expression_vars(a)
        return out
    return set()


# -- tokenizer ---------------------------------------------------------------------

_PN_CHARS = r"[\w\-·̀-ͯ‿-⁀]"
_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iri><[^<>"{{}}|^`\\\s]*>)
  | (?P<var>[?$][A-Za-z_]\w*)
  | (?P<string>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<dtype>\^\^)
  | (?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<pname>(?:[A-Za-z][\w\-.]*)?:(?:(?:{_PN_CHARS}|:)(?:(?:{_PN_CHARS}|[.:])*(?:{_PN_CHARS}|:))?)?)
  | (?P<word>[A-Za-z_][\w]*)
  | (?P<op>&&|\|\||!=|<=|>=|[=<>!])
  | (?P<punct>[{{}}().;,*])
  | (?P<path>[/|^+])
    """,
    re.X,
)

_UNSUPPORTED = {
    "OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES", "CONSTRUCT",
    "ASK", "DESCRIBE", "INSERT", "DELETE", "HAVING", "FROM", "NAMED", "EXISTS", "NOT",
    "LOAD", "CLEAR", "DROP", "CREATE", "WITH", "BASE", "SUM", "AVG", "MIN", "MAX",
    "GROUP_CONCAT", "SAMPLE",
}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int

    @property
    def upper(self) -> str:
        return self.text.upper()


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "path":
            raise UnsupportedFeatureError("property path", pos)
        if kind == "number" and m.group()[0] in "+-" and out and out[-1].kind in ("var", "number", "string", "iri", "pname"):
            raise UnsupportedFeatureError("arithmetic", pos)
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    return out


# -- parser ------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = {}

    def peek(self, k: int = 0) -> _Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok.pos if tok else len(self.text)

    def error(self, message: str) -> QuerySyntaxError:
        return QuerySyntaxError(message, self.pos())

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of query")
        self.i += 1
        return tok

    def is_word(self, *words: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "word" and tok.upper in words

    def is_text(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind in ("punct", "op") and tok.text == text

    def expect_word(self, word: str) -> None:
        self.check_unsupported()
        if not self.is_word(word):
            tok = self.peek()
            raise self.error(f"expected {word}, found {tok.text if tok else 'end of query'!r}")
        self.i += 1

    def expect(self, text: str) -> None:
        if not self.is_text(text):
            tok = self.peek()
            raise self.error(f"expected {text!r}, found {tok.text if tok else 'end of query'!r}")
        self.i += 1

    def check_unsupported(self) -> None:
        tok = self.peek()
        if tok is not None and tok.kind == "word" and tok.upper in _UNSUPPORTED:
            raise UnsupportedFeatureError(tok.upper, tok.pos)

    # grammar

    def query(self) -> Query:
        while self.is_word("PREFIX"):
            self.i += 1
            tok = self.next()
            if tok.kind != "pname" or not tok.text.endswith(":") or tok.text.count(":") != 1:
                raise QuerySyntaxError("expected a prefix name such as codo:", tok.pos)
            iri = self.next()
            if iri.kind != "iri":
                raise QuerySyntaxError("expected an IRI in angle brackets", iri.pos)
            self.prefixes[tok.text[:-1]] = unescape(iri.text[1:-1])
        self.expect_word("SELECT")
        distinct = False
        if self.is_word("DISTINCT"):
            self.i += 1
            distinct = True
        elif self.is_word("REDUCED"):
            raise UnsupportedFeatureError("REDUCED", self.pos())
        projection = self.projection()
        self.check_unsupported()
        if self.is_word("WHERE"):
            self.i += 1
        patterns, filters = self.group()
        q = Query(dict(self.prefixes), projection, distinct, patterns, filters)
        self.modifiers(q)
        if self.peek() is not None:
            self.check_unsupported()
            raise self.error(f"unexpected {self.peek().text!r} after query")
        _validate(q)
        return q

    def projection(self) -> list | None:
        if self.is_text("*"):
            self.i += 1
            return None
        items: list = []
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "var":
                self.i += 1
                items.append(Var(tok.text[1:]))
            elif self.is_text("("):
                self.i += 1
                count = self.count_call()
                self.expect_word("AS")
                alias = self.next()
                if alias.kind != "var":
                    raise QuerySyntaxError("expected a variable after AS", alias.pos)
                self.expect(")")
                items.append(Count(count[0], count[1], Var(alias.text[1:])))
            else:
                break
        if not items:
            self.check_unsupported()
            raise self.error("expected projection variables or *")
        return items

    def count_call(self) -> tuple[Var | None, bool]:
        self.check_unsupported()
        if not self.is_word("COUNT"):
            tok = self.peek()
            raise self.error(f"expected COUNT, found {tok.text if tok else 'end of query'!r}")
        self.i += 1
        self.expect("(")
        distinct = False
        if self.is_word("DISTINCT"):
            self.i += 1
            distinct = True
        if self.is_text("*"):
            self.i += 1
            var = None
        else:
            tok = self.next()
            if tok.kind != "var":
                raise QuerySyntaxError("COUNT takes a variable or *", tok.pos)
            var = Var(tok.text[1:])
        self.expect(")")
        return var, distinct

    def group(self) -> tuple[list[TriplePattern], list]:
        self.expect("{")
        patterns: list[TriplePattern] = []
        filters: list = []
        while not self.is_text("}"):
            self.check_unsupported()
            if self.peek() is None:
                raise self.error("unterminated group pattern")
            if self.is_text("{"):
                raise UnsupportedFeatureError("nested group", self.pos())
            if self.is_word("FILTER"):
                self.i += 1
                filters.append(self.bracketted())
                if self.is_text("."):
                    self.i += 1
                continue
            patterns.extend(self.triples_block())
            if self.is_text("."):
                self.i += 1
            elif not self.is_text("}") and not self.is_word("FILTER"):
                raise self.error("expected '.' or '}' after triple pattern")
        self.i += 1
        return patterns, filters

    def triples_block(self) -> list[TriplePattern]:
        out = []
        subject = self.term(position="subject")
        while True:
            pred = self.verb()
            while True:
                obj = self.term(position="object")
                out.append(TriplePattern(subject, pred, obj))
                if self.is_text(","):
                    self.i += 1
                    continue
                break
            if self.is_text(";"):
                self.i += 1
                while self.is_text(";"):
                    self.i += 1
                if self.is_text(".") or self.is_text("}"):
                    break
                continue
            break
        return out

    def verb(self):
        tok = self.peek()
        if tok is not None and tok.kind == "word" and tok.text == "a":
            self.i += 1
            return RDF_TYPE
        return self.term(position="predicate")

    def term(self, position: str):
        self.check_unsupported()
        tok = self.next()
        kind = tok.kind
        if kind == "var":
            return Var(tok.text[1:])
        if kind == "iri":
            return Term.iri(unescape(tok.text[1:-1]))
        if kind == "pname":
            return self.expand(tok)
        if position == "predicate":
            raise QuerySyntaxError(f"a predicate must be an IRI or variable, found {tok.text!r}", tok.pos)
        if kind == "string":
            return self.literal(tok)
        if kind == "number":
            return _number_term(tok.text)
        if kind == "word" and tok.text in ("true", "false"):
            return Term.literal(tok.text, XSD_BOOLEAN)
        raise QuerySyntaxError(f"unexpected {tok.text!r} in {position} position", tok.pos)

    def expand(self, tok: _Tok) -> Term:
        prefix, _, local = tok.text.partition(":")
        if prefix == "_":
            raise UnsupportedFeatureError("blank node", tok.pos)
        base = self.prefixes.get(prefix)
        if base is None:
            base = DEFAULT_PREFIXES.get(prefix)
        if base is None:
            raise QuerySyntaxError(f"undeclared prefix {prefix!r}", tok.pos)
        return Term.iri(base + local)

    def literal(self, tok: _Tok) -> Term:
        lexical = unescape(tok.text[1:-1])
        nxt = self.peek()
        if nxt is not None and nxt.kind == "lang":
            self.i += 1
            return Term.literal(lexical, lang=nxt.text[1:])
        if nxt is not None and nxt.kind == "dtype":
            self.i += 1
            dt = self.next()
            if dt.kind == "iri":
                datatype = unescape(dt.text[1:-1])
            elif dt.kind == "pname":
                datatype = self.expand(dt).value
            else:
                raise QuerySyntaxError("expected a datatype IRI after ^^", dt.pos)
            try:
                return Term.literal(lexical, datatype)
            except ValueError as exc:
                raise QuerySyntaxError(str(exc), tok.pos) from None
        return Term.literal(lexical)

    # filters

    def bracketted(self):
        if not self.is_text("("):
            tok = self.peek()
            if tok is not None and tok.kind == "word":
                raise UnsupportedFeatureError(tok.upper, tok.pos)
            raise self.error("expected '(' after FILTER")
        self.i += 1
        expr = self.or_expr()
        self.expect(")")
        return expr

    def or_expr(self):
        left = self.and_expr()
        while self.is_text("||"):
            self.i += 1
            left = Logical("||", (left, self.and_expr()))
        return left

    def and_expr(self):
        left = self.relational()
        while self.is_text("&&"):
            self.i += 1
            left = Logical("&&", (left, self.relational()))
        return left

    def relational(self):
        left = self.unary()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in ("=", "!=", "<", "<=", ">", ">="):
            self.i += 1
            return Compare(tok.text, left, self.unary())
        return left

    def unary(self):
        if self.is_text("!"):
            self.i += 1
            return Logical("!", (self.unary(),))
        if self.is_text("("):
            self.i += 1
            expr = self.or_expr()
            self.expect(")")
            return expr
        tok = self.peek()
        if tok is not None and tok.kind == "word" and self.peek(1) is not None and self.peek(1).text == "(":
            raise UnsupportedFeatureError(f"function {tok.upper}", tok.pos)
        if tok is not None and tok.kind == "punct" and tok.text == "*":
            raise UnsupportedFeatureError("arithmetic", tok.pos)
        return self.term(position="expression")

    # solution modifiers

    def modifiers(self, q: Query) -> None:
        if self.is_word("GROUP"):
            self.i += 1
            self.expect_word("BY")
            while self.peek() is not None and self.peek().kind == "var":
                q.group_by.append(Var(self.next().text[1:]))
            if not q.group_by:
                raise self.error("GROUP BY needs at least one variable")
        self.check_unsupported()
        if self.is_word("ORDER"):
            self.i += 1
            self.expect_word("BY")
            while True:
                tok = self.peek()
                if tok is None:
                    break
                if tok.kind == "var":
                    self.i += 1
                    q.order_by.append((Var(tok.text[1:]), False))
                elif tok.kind == "word" and tok.upper in ("ASC", "DESC"):
                    self.i += 1
                    self.expect("(")
                    var = self.next()
                    if var.kind != "var":
                        raise QuerySyntaxError("ORDER BY supports variables only", var.pos)
                    self.expect(")")
                    q.order_by.append((Var(var.text[1:]), tok.upper == "DESC"))
                elif tok.kind == "punct" and tok.text == "(":
                    raise UnsupportedFeatureError("ORDER BY expression", tok.pos)
                else:
                    break
            if not q.order_by:
                raise self.error("ORDER BY needs at least one key")
        for _ in range(2):
            if self.is_word("LIMIT") and q.limit is None:
                self.i += 1
                q.limit = self.integer()
            elif self.is_word("OFFSET") and q.offset is None:
                self.i += 1
                q.offset = self.integer()

    def integer(self) -> int:
        tok = self.next()
        if tok.kind != "number" or not tok.text.isdigit():
            raise QuerySyntaxError("expected a non-negative integer", tok.pos)
        return int(tok.text)


def _number_term(text: str) -> Term:
    if re.fullmatch(r"[+-]?\d+", text):
        return Term.literal(str(int(text)), XSD_INTEGER)
    if "e" in text.lower():
        return Term.literal(text, "http://www.w3.org/2001/XMLSchema#double")
    return Term.literal(text, "http://www.w3.org/2001/XMLSchema#decimal")


def _validate(q: Query) -> None:
    bound = set(q.pattern_vars())
    if q.projection is None:
        if q.aggregated:
            raise QuerySyntaxError("SELECT * cannot be combined with GROUP BY", 0)
        return
    names: set[str] = set()
    for item in q.projection:
        name = item.alias.name if isinstance(item, Count) else item.name
        if name in names:
            raise QuerySyntaxError(f"duplicate projection ?{name}", 0)
        names.add(name)
        if isinstance(item, Count):
            if item.alias in bound:
                raise QuerySyntaxError(f"alias ?{name} is already used in the pattern", 0)
            if item.var is not None and item.var not in bound:
                raise QuerySyntaxError(f"?{item.var.name} is not bound by the pattern", 0)
        elif item not in bound:
            raise QuerySyntaxError(f"projected ?{name} is not bound by the pattern", 0)
        elif q.aggregated and item not in q.group_by:
            raise QuerySyntaxError(f"?{name} must appear in GROUP BY", 0)
    for v in q.group_by:
        if v not in bound:
            raise QuerySyntaxError(f"GROUP BY ?{v.name} is not bound by the pattern", 0)
    visible = names if q.aggregated else names | {v.name for v in bound}
    for key, _ in q.order_by:
        if key.name not in visible:
            raise QuerySyntaxError(f"ORDER BY ?{key.name} is not available", 0)


def parse_query(text) -> Query:
    """Parse the supported SELECT subset; unsupported keywords raise :class:`UnsupportedFeatureError`."""
    if not isinstance(text, str):
        text = text.read()
    return _Parser(text).query()


# -- value semantics -------------------------------------------------------------

class _TypeError(Exception):
    pass


def _parse_datetime(lexical: str) -> datetime:
    return datetime.fromisoformat(lexical.replace("Z", "+00:00"))


def _value(term: Term):
    """(category, comparable value) for FILTER comparisons."""
    if not term.is_literal:
        return ("node", term)
    dt = term.datatype or XSD_STRING
    if dt in NUMERIC_DATATYPES or dt.endswith(("#double", "#float")):
        try:
            return ("number", Decimal(term.value))
        except InvalidOperation:
            raise _TypeError from None
    if dt == XSD_DATETIME:
        try:
            return ("datetime", _parse_datetime(term.value))
        except ValueError:
            raise _TypeError from None
    if dt == XSD_BOOLEAN:
        return ("boolean", term.value == "true")
    if dt == XSD_STRING:
        return ("string", term.value, term.lang)
    return ("other", term)


def _compare(op: str, a: Term, b: Term) -> bool:
    va, vb = _value(a), _value(b)
    if va[0] == "node" or vb[0] == "node":
        if op == "=":
            return a == b
        if op == "!=":
            return a != b
        raise _TypeError
    if va[0] != vb[0]:
        raise _TypeError
    if va[0] == "other":
        if op in ("=", "!="):
            return (a == b) == (op == "=")
        raise _TypeError
    if va[0] == "string":
        if va[2] != vb[2]:
            if op in ("=", "!="):
                return op == "!="
            raise _TypeError
        x, y = va[1], vb[1]
    else:
        x, y = va[1], vb[1]
    try:
        if op == "=":
            return x == y
        if op == "!=":
            return x != y
        if op == "<":
            return x < y
        if op == "<=":
            return x <= y
        if op == ">":
            return x > y
        return x >= y
    except TypeError:  # naive vs aware datetimes
        raise _TypeError from None


def _truth(term: Term) -> bool:
    kind = _value(term)
    if kind[0] == "boolean":
        return kind[1]
    if kind[0] == "number":
        return kind[1] != 0
    if kind[0] == "string":
        return bool(kind[1])
    raise _TypeError


def _eval(expr, row: dict[Var, Term]):
    """True, False, or raises _TypeError (SPARQL's error value)."""
    if isinstance(expr, Compare):
        return _compare(expr.op, _operand(expr.left, row), _operand(expr.right, row))
    if isinstance(expr, Logical):
        if expr.op == "!":
            return not _eval(expr.args[0], row)
        results = []
        for arg in expr.args:
            try:
                results.append(_eval(arg, row))
            except _TypeError:
                results.append(None)
        if expr.op == "&&":
            if False in results:
                return False
        elif True in results:
            return True
        if None in results:
            raise _TypeError
        return expr.op == "&&"
    return _truth(_operand(expr, row))


def _operand(expr, row) -> Term:
    if isinstance(expr, Var):
        value = row.get(expr)
        if value is None:
            raise _TypeError
        return value
    if isinstance(expr, Term):
        return expr
    return Term.literal("true" if _eval(expr, row) else "false", XSD_BOOLEAN)


def order_key(term: Term | None):
    """Ordering used by ORDER BY: unbound, blank nodes, IRIs, then literals by value."""
    if term is None:
        return (0,)
    if term.is_blank:
        return (1, term.value)
    if term.is_iri:
        return (2, term.value)
    try:
        kind = _value(term)
    except _TypeError:
        kind = ("other", term)
    if kind[0] == "number":
        return (3, 0, kind[1], term.value)
    if kind[0] == "datetime":
        return (3, 1, term.value)
    if kind[0] == "boolean":
        return (3, 2, kind[1])
    if kind[0] == "string":
        return (3, 3, term.value, term.lang or "")
    return (3, 4, term.datatype or "", term.value)


# -- evaluation --------------------------------------------------------------------

@dataclass
class SolutionTable:
    header: list[str]
    rows: list[tuple[Term | None, ...]]

    def __len__(self):
        return len(self.rows)

    def bindings(self) -> list[dict[str, Term]]:
        return [{h: v for h, v in zip(self.header, row) if v is not None} for row in self.rows]

    def column(self, name: str) -> list[Term | None]:
        idx = self.header.index(name)
        return [row[idx] for row in self.rows]


def _row_key(row):
    return tuple(Term.sort_key(v) if v is not None else (-1,) for v in row)


def _plan(patterns: list, bound: set[Var]) -> list[int]:
    """Greedy join order: repeatedly take the pattern with most bound positions."""
    remaining = list(range(len(patterns)))
    order = []
    bound = set(bound)
    while remaining:
        def score(i):
            tp = patterns[i]
            n = sum(1 for x in (tp.s, tp.p, tp.o) if not isinstance(x, Var) or x in bound)
            return (-n, i)
        best = min(remaining, key=score)
        remaining.remove(best)
        order.append(best)
        bound.update(patterns[best].variables())
    return order


def _solutions(q: Query, graph: Graph, on_type_error) -> list[dict[Var, int]]:
    id_patterns = []
    for tp in q.patterns:
        parts = []
        for x in (tp.s, tp.p, tp.o):
            if isinstance(x, Var):
                parts.append(x)
            else:
                tid = graph.lookup_id(x)
                if tid is None:
                    return []
                parts.append(tid)
        id_patterns.append(parts)

    order = _plan(q.patterns, set())
    # each filter runs at the first step where all of its variables are bound
    filters_at: dict[int, list] = {}
    final_filters = []
    for f in q.filters:
        needed = expression_vars(f)
        bound: set[Var] = set()
        for step, idx in enumerate(order):
            bound.update(q.patterns[idx].variables())
            if needed <= bound:
                filters_at.setdefault(step, []).append(f)
                break
        else:
            final_filters.append(f)

    results: list[dict[Var, int]] = []
    term_cache: dict[int, Term] = {}

    def as_terms(binding):
        row = {}
        for var, tid in binding.items():
            term = term_cache.get(tid)
            if term is None:
                term = term_cache[tid] = graph.term(tid)
            row[var] = term
        return row

    def passes(fs, binding) -> bool:
        if not fs:
            return True
        row = as_terms(binding)
        for f in fs:
            try:
                if not _eval(f, row):
                    return False
            except _TypeError:
                on_type_error()
                return False
        return True

    def extend(step: int, binding: dict[Var, int]) -> None:
        if step == len(order):
            if passes(final_filters, binding):
                results.append(dict(binding))
            return
        s, p, o = id_patterns[order[step]]
        key = [binding.get(x) if isinstance(x, Var) else x for x in (s, p, o)]
        for triple in graph.match_ids(*key):
            new = dict(binding)
            ok = True
            for pos, x in enumerate((s, p, o)):
                if isinstance(x, Var):
                    prev = new.get(x)
                    if prev is None:
                        new[x] = triple[pos]
                    elif prev != triple[pos]:
                        ok = False
                        break
            if ok and passes(filters_at.get(step, ()), new):
                extend(step + 1, new)

    extend(0, {})
    return results


def evaluate(q: Query, graph: Graph) -> SolutionTable:
    """Evaluate ``q`` over ``graph``.

    Row order follows ORDER BY with the canonical term order as tiebreak, so
    results are reproducible even without ORDER BY.
    """
    warned = []

    def on_type_error():
        if not warned:
            warned.append(True)
            log.warning("type error in FILTER; affected rows are dropped")

    raw = _solutions(q, graph, on_type_error)
    header = q.header()
    cache: dict[int, Term] = {}

    def term(tid):
        t = cache.get(tid)
        if t is None:
            t = cache[tid] = graph.term(tid)
        return t

    if q.aggregated:
        groups: dict[tuple, list[dict[Var, int]]] = {}
        for sol in raw:
            groups.setdefault(tuple(sol[v] for v in q.group_by), []).append(sol)
        if not q.group_by and not groups:
            groups[()] = []
        env_rows = []
        for key, members in groups.items():
            env = {v: term(tid) for v, tid in zip(q.group_by, key)}
            for item in q.projection:
                if isinstance(item, Count):
                    if item.var is None:
                        values = [tuple(sorted((v.name, t) for v, t in m.items())) for m in members]
                    else:
                        values = [m[item.var] for m in members if item.var in m]
                    n = len(set(values)) if item.distinct else len(values)
                    env[item.alias] = Term.literal(str(n), XSD_INTEGER)
            env_rows.append(env)
    else:
        env_rows = [{v: term(tid) for v, tid in sol.items()} for sol in raw]

    names = [Var(h) for h in header]
    env_rows.sort(key=lambda env: _row_key([env.get(v) for v in names]))
    for key, descending in reversed(q.order_by):
        env_rows.sort(key=lambda env: order_key(env.get(key)), reverse=descending)
    rows = [tuple(env.get(v) for v in names) for env in env_rows]
    if q.distinct:
        seen = set()
        unique = []
        for row in rows:
            if row not in seen:
                seen.add(row)
                unique.append(row)
        rows = unique
    start = q.offset or 0
    stop = None if q.limit is None else start + q.limit
    return SolutionTable(header, rows[start:stop])


def run_query(text: str, graph: Graph) -> SolutionTable:
    return evaluate(parse_query(text), graph)


# -- serializations ---------------------------------------------------------------

def term_to_json(term: Term) -> dict:
    if term.is_iri:
        return {"type": "uri", "value": term.value}
    if term.is_blank:
        return {"type": "bnode", "value": term.value}
    out = {"type": "literal", "value": term.value}
    if term.lang:
        out["xml:lang"] = term.lang
    elif term.datatype and term.datatype != XSD_STRING:
        out["datatype"] = term.datatype
    return out


def to_json_results(table: SolutionTable) -> str:
    """SPARQL 1.1 JSON results, compact and deterministic."""
    doc = {
        "head": {"vars": list(table.header)},
        "results": {"bindings": [
            {h: term_to_json(v) for h, v in zip(table.header, row) if v is not None}
            for row in table.rows
        ]},
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def from_json_results(text: str) -> SolutionTable:
    doc = json.loads(text)
    header = list(doc["head"]["vars"])
    rows = []
    for binding in doc["results"]["bindings"]:
        row = []
        for h in header:
            cell = binding.get(h)
            if cell is None:
                row.append(None)
            elif cell["type"] == "uri":
                row.append(Term.iri(cell["value"]))
            elif cell["type"] == "bnode":
                row.append(Term.blank(cell["value"]))
            else:
                row.append(Term.literal(cell["value"], cell.get("datatype"), cell.get("xml:lang")))
        rows.append(tuple(row))
    return SolutionTable(header, rows)


def to_text_table(table: SolutionTable, prefixes: dict[str, str] | None = None) -> str:
    """Aligned plain-text rendering with prefixed names."""
    prefixes = prefixes or DEFAULT_PREFIXES
    cells = [["?" + h for h in table.header]]
    for row in table.rows:
        cells.append(["" if v is None else compact(v, prefixes) for v in row])
    if not table.header:
        return f"({len(table.rows)} rows)\n"
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    lines.append(f"({len(table.rows)} row{'s' if len(table.rows) != 1 else ''})")
    return "\n".join(lines) + "\n"


__all__ = [
    "Compare", "Count", "Logical", "Query", "QuerySyntaxError", "SolutionTable", "TriplePattern",
    "UnresolvedPrefixError", "UnsupportedFeatureError", "Var", "evaluate", "from_json_results",
    "order_key", "parse_query", "run_query", "to_json_results", "to_text_table",
]
