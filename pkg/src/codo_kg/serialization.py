"""N-Triples and Turtle-subset reading and writing.

The Turtle reader accepts ``@prefix``/``PREFIX`` directives, prefixed names,
the ``a`` keyword, predicate lists (``;``), object lists (``,``), blank node
labels and plain, typed, language-tagged or bare (number/boolean) literals.
Collections and ``[ ... ]`` property lists are rejected.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from typing import TextIO

from .errors import CodoError, InvalidLiteralError, RDFSyntaxError, UnresolvedPrefixError, UnsupportedConstructError
from .graph import Graph
from .terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    Term,
    Triple,
    escape_string,
    is_absolute_iri,
    unescape,
)


@dataclass
class ParseReport:
    triple_count: int = 0
    line_errors: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.line_errors


def _read(text: str | TextIO) -> str:
    return text if isinstance(text, str) else text.read()


# -- N-Triples -------------------------------------------------------------

_IRI = r"<([^<>\"{}|^`\\\x00-\x20]*(?:\\u[0-9A-Fa-f]{4}[^<>\"{}|^`\\\x00-\x20]*|\\U[0-9A-Fa-f]{8}[^<>\"{}|^`\\\x00-\x20]*)*)>"
_BNODE = r"_:([A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)"
_LITERAL = r'"((?:[^"\\\n\r]|\\.)*)"(?:\^\^' + _IRI + r"|@([A-Za-z]+(?:-[A-Za-z0-9]+)*))?"
_NT_LINE = re.compile(
    r"^[ \t]*(?:" + _IRI + "|" + _BNODE + r")[ \t]*"
    + _IRI + r"[ \t]*"
    r"(?:" + _IRI + "|" + _BNODE + "|" + _LITERAL + r")[ \t]*\.[ \t]*(?:#.*)?$"
)


def _nt_iri(raw: str, lineno: int) -> Term:
    value = unescape(raw)
    if not is_absolute_iri(value):
        raise RDFSyntaxError(f"malformed IRI <{raw}>", lineno)
    return Term.iri(value)


def _nt_line_triple(line: str, lineno: int) -> Triple:
    m = _NT_LINE.match(line)
    if m is None:
        stripped = line.rstrip()
        if not stripped.endswith("."):
            raise RDFSyntaxError("statement not terminated by '.'", lineno)
        if stripped.count('"') % 2:
            raise RDFSyntaxError("malformed literal", lineno)
        raise RDFSyntaxError("malformed statement", lineno)
    s_iri, s_bn, p_iri, o_iri, o_bn, lex, dt, lang = m.groups()
    subject = _nt_iri(s_iri, lineno) if s_iri is not None else Term.blank(s_bn)
    predicate = _nt_iri(p_iri, lineno)
    if o_iri is not None:
        obj = _nt_iri(o_iri, lineno)
    elif o_bn is not None:
        obj = Term.blank(o_bn)
    else:
        try:
            if lang:
                obj = Term.literal(unescape(lex), lang=lang)
            else:
                obj = Term.literal(unescape(lex), _nt_iri(dt, lineno).value if dt else None)
        except InvalidLiteralError as exc:
            raise RDFSyntaxError(str(exc), lineno) from None
    return Triple(subject, predicate, obj)


def parse_ntriples(text: str | TextIO, graph: Graph, strict: bool = True, inferred: bool = False) -> ParseReport:
    """Add every statement of an N-Triples document to ``graph``.

    In strict mode the first bad line raises :class:`RDFSyntaxError`;
    otherwise bad lines are collected in the report and skipped.
    """
    report = ParseReport()
    for lineno, line in enumerate(_read(text).splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            t = _nt_line_triple(line, lineno)
        except RDFSyntaxError as exc:
            if strict:
                raise
            report.line_errors.append((lineno, exc.message))
            continue
        if graph.add(t, inferred):
            report.triple_count += 1
    return report


def _blank_label(label: str) -> str:
    clean = re.sub(r"[^A-Za-z0-9_\-]", "_", label)
    return clean or "b"


def _term_nt(term: Term) -> str:
    if term.is_blank:
        return "_:" + _blank_label(term.value)
    return term.n3()


def ntriples_lines(graph: Graph, which: str = "all") -> list[str]:
    if which == "asserted":
        triples = graph.asserted()
    elif which == "inferred":
        triples = graph.inferred()
    else:
        triples = graph.match()
    return sorted(f"{_term_nt(s)} {_term_nt(p)} {_term_nt(o)} ." for s, p, o in triples)


def serialize_ntriples(graph: Graph, which: str = "all") -> str:
    """Canonical N-Triples: one statement per line, lines sorted.

    ``which`` selects ``"all"`` triples, only ``"asserted"`` ones or only
    ``"inferred"`` ones.
    """
    lines = ntriples_lines(graph, which)
    return "".join(line + "\n" for line in lines)


# -- Turtle subset ---------------------------------------------------------

_PN_CHARS_BASE = r"A-Za-zÀ-ÖØ-öø-˿Ͱ-ͽͿ-῿‌-‍⁰-↏Ⰰ-⿯、-퟿豈-﷏ﷰ-�"
_PN_CHARS = _PN_CHARS_BASE + r"_\-0-9·̀-ͯ‿-⁀"
_PN_PREFIX = rf"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PN_LOCAL = rf"(?:[{_PN_CHARS}:]|%[0-9A-Fa-f]{{2}}|\\[_~.\-!$&'()*+,;=/?#@%])(?:(?:[{_PN_CHARS}.:]|%[0-9A-Fa-f]{{2}}|\\[_~.\-!$&'()*+,;=/?#@%])*(?:[{_PN_CHARS}:]|%[0-9A-Fa-f]{{2}}|\\[_~.\-!$&'()*+,;=/?#@%]))?"
PNAME_RE = re.compile(rf"(?:{_PN_PREFIX})?:(?:{_PN_LOCAL})?")
LOCAL_NAME_RE = re.compile(rf"(?:{_PN_LOCAL})")

_TTL_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\x00-\x20]*>)
  | (?P<long>\"\"\"(?:[^"\\]|\\.|"(?!""))*\"\"\"|'''(?:[^'\\]|\\.|'(?!''))*''')
  | (?P<string>"(?:[^"\\\n\r]|\\.)*"|'(?:[^'\\\n\r]|\\.)*')
  | (?P<dtmark>\^\^)
  | (?P<lang>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<bnode>_:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)
  | (?P<number>[+-]?(?:\d+\.\d*[eE][+-]?\d+|\.\d+[eE][+-]?\d+|\d+[eE][+-]?\d+|\d*\.\d+|\d+))
  | (?P<pname>"""
    + PNAME_RE.pattern
    + r""")
  | (?P<word>[A-Za-z]+)
  | (?P<punct>[.;,\[\]()])
    """,
    re.X,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int


def _tokenize_turtle(text: str) -> list[_Tok]:
    tokens = []
    pos, line, n = 0, 1, len(text)
    while pos < n:
        m = _TTL_TOKEN.match(text, pos)
        if m is None:
            raise RDFSyntaxError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        value = m.group()
        if kind == "lang" and (not tokens or tokens[-1].kind not in ("string", "long")):
            if value in ("@prefix", "@base"):
                kind = "directive"
            else:
                raise RDFSyntaxError(f"unexpected {value}", line)
        if kind != "ws":
            tokens.append(_Tok(kind, value, line))
        line += value.count("\n")
        pos = m.end()
    return tokens


class _TurtleParser:
    def __init__(self, text: str, graph: Graph):
        self.tokens = _tokenize_turtle(text)
        self.i = 0
        self.graph = graph
        self.prefixes = dict(graph.prefixes)
        self.count = 0

    def peek(self) -> _Tok | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1].line if self.tokens else 1
            raise RDFSyntaxError("unexpected end of input", last)
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.next()
        if tok.text != text:
            raise RDFSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.line)

    def run(self) -> int:
        while self.peek() is not None:
            tok = self.peek()
            if tok.kind == "directive" or (tok.kind == "word" and tok.text.upper() in ("PREFIX", "BASE")):
                self.directive()
            else:
                self.statement()
        return self.count

    def directive(self) -> None:
        tok = self.next()
        keyword = tok.text.lstrip("@").lower()
        if keyword == "base":
            raise UnsupportedConstructError("base directive", tok.line)
        name = self.next()
        if name.kind != "pname" or not name.text.endswith(":") or name.text.count(":") != 1:
            raise RDFSyntaxError(f"bad prefix name {name.text!r}", name.line)
        iri = self.next()
        if iri.kind != "iri":
            raise RDFSyntaxError("prefix directive needs an IRI", iri.line)
        value = unescape(iri.text[1:-1])
        if not is_absolute_iri(value):
            raise RDFSyntaxError(f"relative IRI <{value}> not supported", iri.line)
        self.prefixes[name.text[:-1]] = value
        self.graph.bind(name.text[:-1], value)
        if tok.kind == "directive":
            self.expect(".")

    def statement(self) -> None:
        subject = self.subject()
        while True:
            predicate = self.predicate()
            while True:
                obj = self.object()
                if self.graph.add(Triple(subject, predicate, obj)):
                    self.count += 1
                tok = self.next()
                if tok.text == ",":
                    continue
                break
            if tok.text == ";":
                nxt = self.peek()
                while nxt is not None and nxt.text == ";":
                    self.next()
                    nxt = self.peek()
                if nxt is not None and nxt.text == ".":
                    self.next()
                    return
                continue
            if tok.text == ".":
                return
            raise RDFSyntaxError(f"expected ',', ';' or '.', found {tok.text!r}", tok.line)

    def _unsupported(self, tok: _Tok) -> None:
        if tok.text == "(":
            raise UnsupportedConstructError("collection", tok.line)
        if tok.text == "[":
            raise UnsupportedConstructError("blank node property list", tok.line)

    def node(self, tok: _Tok) -> Term:
        if tok.kind == "iri":
            value = unescape(tok.text[1:-1])
            if not is_absolute_iri(value):
                raise RDFSyntaxError(f"relative IRI <{value}> not supported", tok.line)
            return Term.iri(value)
        if tok.kind == "pname":
            prefix, _, local = tok.text.partition(":")
            if prefix not in self.prefixes:
                raise UnresolvedPrefixError(prefix)
            local = re.sub(r"\\(.)", r"\1", local)
            return Term.iri(self.prefixes[prefix] + local)
        if tok.kind == "bnode":
            return Term.blank(tok.text[2:])
        self._unsupported(tok)
        raise RDFSyntaxError(f"unexpected {tok.text!r}", tok.line)

    def subject(self) -> Term:
        tok = self.next()
        if tok.kind in ("string", "long", "number") or tok.text in ("true", "false"):
            raise RDFSyntaxError("literal in subject position", tok.line)
        return self.node(tok)

    def predicate(self) -> Term:
        tok = self.next()
        if tok.kind == "word" and tok.text == "a":
            return RDF_TYPE
        if tok.kind == "bnode":
            raise RDFSyntaxError("blank node in predicate position", tok.line)
        return self.node(tok)

    def object(self) -> Term:
        tok = self.next()
        try:
            if tok.kind in ("string", "long"):
                quote = 3 if tok.kind == "long" else 1
                lexical = unescape(tok.text[quote:-quote])
                nxt = self.peek()
                if nxt is not None and nxt.kind == "lang":
                    self.next()
                    return Term.literal(lexical, lang=nxt.text[1:])
                if nxt is not None and nxt.kind == "dtmark":
                    self.next()
                    dt = self.node(self.next())
                    return Term.literal(lexical, dt.value)
                return Term.literal(lexical, XSD_STRING)
            if tok.kind == "number":
                text = tok.text
                if "e" in text or "E" in text:
                    return Term.literal(text, XSD_DOUBLE)
                if "." in text:
                    return Term.literal(text, XSD_DECIMAL)
                return Term.literal(text, XSD_INTEGER)
        except InvalidLiteralError as exc:
            raise RDFSyntaxError(str(exc), tok.line) from None
        if tok.kind == "word" and tok.text in ("true", "false"):
            return Term.literal(tok.text, XSD_BOOLEAN)
        return self.node(tok)


def parse_turtle(text: str | TextIO, graph: Graph) -> ParseReport:
    """Parse a Turtle-subset document into ``graph``.

    Raises :class:`UnsupportedConstructError` for collections, ``[ ]``
    property lists and ``@base``; other errors raise :class:`RDFSyntaxError`.
    """
    parser = _TurtleParser(_read(text), graph)
    return ParseReport(triple_count=parser.run())


def _ttl_term(term: Term, prefixes: dict[str, str]) -> str:
    if term.is_iri:
        best = None
        for prefix, ns in prefixes.items():
            if term.value.startswith(ns) and (best is None or len(ns) > len(prefixes[best])):
                local = term.value[len(ns):]
                if local == "" or LOCAL_NAME_RE.fullmatch(local):
                    best = prefix
        if best is not None:
            return f"{best}:{term.value[len(prefixes[best]):]}"
        return f"<{term.value}>"
    if term.is_blank:
        return "_:" + _blank_label(term.value)
    text = '"' + escape_string(term.value, ascii_only=False) + '"'
    if term.lang:
        return text + "@" + term.lang
    if term.datatype == XSD_STRING:
        return text
    if term.datatype == XSD_BOOLEAN:
        return term.value
    if term.datatype == XSD_INTEGER and re.fullmatch(r"[+-]?\d+", term.value):
        return term.value
    if term.datatype == XSD_DECIMAL and re.fullmatch(r"[+-]?\d*\.\d+", term.value):
        return term.value
    return text + "^^" + _ttl_term(Term.iri(term.datatype), prefixes)


def serialize_turtle(graph: Graph, which: str = "all") -> str:
    """Turtle with prefixes, grouped by subject; output is sorted and stable."""
    prefixes = graph.prefixes
    if which == "asserted":
        triples = list(graph.asserted())
    elif which == "inferred":
        triples = list(graph.inferred())
    else:
        triples = list(graph.match())
    by_subject: dict[Term, dict[Term, list[Term]]] = {}
    for s, p, o in triples:
        by_subject.setdefault(s, {}).setdefault(p, []).append(o)
    out = io.StringIO()
    for prefix in sorted(prefixes):
        out.write(f"@prefix {prefix}: <{prefixes[prefix]}> .\n")
    for s in sorted(by_subject, key=Term.sort_key):
        out.write("\n" + _ttl_term(s, prefixes))
        preds = by_subject[s]
        order = sorted(preds, key=lambda p: (p != RDF_TYPE, p.sort_key()))
        for n, p in enumerate(order):
            objs = ", ".join(_ttl_term(o, prefixes) for o in sorted(preds[p], key=Term.sort_key))
            pred = "a" if p == RDF_TYPE else _ttl_term(p, prefixes)
            sep = " " if n == 0 else " ;\n    "
            out.write(f"{sep}{pred} {objs}")
        out.write(" .\n")
    return out.getvalue()


def load_file(path, graph: Graph, strict: bool = True) -> ParseReport:
    """Load ``.nt`` or ``.ttl`` by file extension."""
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".nt"):
        return parse_ntriples(text, graph, strict=strict)
    if path.endswith((".ttl", ".turtle")):
        return parse_turtle(text, graph)
    raise CodoError(f"unknown RDF file type: {path} (expected .nt or .ttl)")
