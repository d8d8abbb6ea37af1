"""Parsing and deterministic serialization of N-Quads and TriG documents.

The parsers cover the fragment the toolkit emits plus the usual authoring
conveniences (prefixes, ``a``, predicate/object lists, numeric and boolean
shorthand). Blank nodes are rejected outright: the quad model has no place
for them, and silently Skolemizing them would hide modelling mistakes.

Serialization is canonical: quads are written in (graph, subject,
predicate, object) order, so two datasets with equal quad sets always
produce byte-identical documents.
"""

from __future__ import annotations

from . import vocab
from .errors import BlankNodeError, ParseError
from .store import Iri, Literal, Quad, QuadDataset, Term, is_absolute_iri

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_PN_LOCAL_OK = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-."
)


class _Scanner:
    """Character scanner with 1-based line/column tracking."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def blank_error(self) -> BlankNodeError:
        return BlankNodeError("blank node encountered; the model is blank-node-free", self.line, self.col)

    def skip_ws(self, newlines: bool = True):
        while not self.eof():
            ch = self.peek()
            if ch == "#":
                while not self.eof() and self.peek() != "\n":
                    self.advance()
            elif ch in " \t\r" or (newlines and ch == "\n"):
                self.advance()
            else:
                return

    def expect(self, ch: str):
        if self.eof() or self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.advance()

    def read_iriref(self) -> str:
        self.expect("<")
        out = []
        while True:
            if self.eof():
                raise self.error("unterminated IRI")
            ch = self.advance()
            if ch == ">":
                break
            if ch == "\\":
                out.append(self._read_unicode_escape())
            else:
                out.append(ch)
        iri = "".join(out)
        if not is_absolute_iri(iri):
            raise self.error(f"not a valid absolute IRI: <{iri}>")
        return iri

    def _read_unicode_escape(self) -> str:
        kind = self.advance()
        if kind == "u":
            width = 4
        elif kind == "U":
            width = 8
        else:
            raise self.error(f"invalid escape \\{kind} in IRI")
        digits = "".join(self.advance() for _ in range(width))
        try:
            return chr(int(digits, 16))
        except ValueError:
            raise self.error(f"invalid unicode escape \\{kind}{digits}") from None

    def read_string(self) -> str:
        self.expect('"')
        if self.text.startswith('""', self.pos):
            # Long string form """..."""
            self.advance()
            self.advance()
            return self._read_until_triple_quote()
        out = []
        while True:
            if self.eof():
                raise self.error("unterminated string literal")
            ch = self.advance()
            if ch == '"':
                break
            if ch == "\n":
                raise self.error("newline in single-quoted string literal")
            if ch == "\\":
                esc = self.advance()
                if esc in _ESCAPES:
                    out.append(_ESCAPES[esc])
                elif esc in "uU":
                    self.pos -= 1
                    self.col -= 1
                    out.append(self._read_unicode_escape())
                else:
                    raise self.error(f"invalid string escape \\{esc}")
            else:
                out.append(ch)
        return "".join(out)

    def _read_until_triple_quote(self) -> str:
        out = []
        while True:
            if self.eof():
                raise self.error("unterminated long string literal")
            if self.text.startswith('"""', self.pos):
                for _ in range(3):
                    self.advance()
                return "".join(out)
            ch = self.advance()
            if ch == "\\":
                esc = self.advance()
                if esc in _ESCAPES:
                    out.append(_ESCAPES[esc])
                elif esc in "uU":
                    self.pos -= 1
                    self.col -= 1
                    out.append(self._read_unicode_escape())
                else:
                    raise self.error(f"invalid string escape \\{esc}")
            else:
                out.append(ch)

    def read_token(self) -> str:
        out = []
        while not self.eof() and self.peek() not in ' \t\r\n<>"{};,.#()[]' :
            out.append(self.advance())
        return "".join(out)

    def read_number(self) -> str:
        # [+-]?digits(.digits)?; the trailing '.' of a statement is not
        # part of the number.
        out = []
        if self.peek() in "+-":
            out.append(self.advance())
        while not self.eof() and self.peek().isdigit():
            out.append(self.advance())
        if (
            self.peek() == "."
            and self.pos + 1 < len(self.text)
            and self.text[self.pos + 1].isdigit()
        ):
            out.append(self.advance())
            while not self.eof() and self.peek().isdigit():
                out.append(self.advance())
        return "".join(out)


# ---------------------------------------------------------------------------
# N-Quads
# ---------------------------------------------------------------------------


def parse_nquads(text: str) -> QuadDataset:
    """Parse an N-Quads document. Triples without a graph label land in the
    designated default graph so that every quad has a graph name."""
    scanner = _Scanner(text)
    quads: list[Quad] = []
    while True:
        scanner.skip_ws()
        if scanner.eof():
            break
        subject = _nq_resource(scanner)
        scanner.skip_ws(newlines=False)
        predicate = _nq_resource(scanner)
        scanner.skip_ws(newlines=False)
        obj = _nq_object(scanner)
        scanner.skip_ws(newlines=False)
        if scanner.peek() == "<":
            graph = scanner.read_iriref()
        elif scanner.peek() == "_":
            raise scanner.blank_error()
        else:
            graph = vocab.DEFAULT_GRAPH
        scanner.skip_ws(newlines=False)
        scanner.expect(".")
        quads.append(Quad(subject, predicate, obj, graph))
    return QuadDataset(quads)


def _nq_resource(scanner: _Scanner) -> str:
    if scanner.peek() == "_":
        raise scanner.blank_error()
    if scanner.peek() != "<":
        raise scanner.error("expected IRI")
    return scanner.read_iriref()


def _nq_object(scanner: _Scanner) -> Term:
    ch = scanner.peek()
    if ch == "_":
        raise scanner.blank_error()
    if ch == "<":
        return Iri(scanner.read_iriref())
    if ch == '"':
        lexical = scanner.read_string()
        return _literal_suffix(scanner, lexical)
    raise scanner.error("expected IRI or literal object")


def _literal_suffix(scanner: _Scanner, lexical: str) -> Literal:
    if scanner.peek() == "^":
        scanner.expect("^")
        scanner.expect("^")
        return Literal(lexical, datatype=scanner.read_iriref())
    if scanner.peek() == "@":
        scanner.advance()
        tag = scanner.read_token()
        if not tag:
            raise scanner.error("empty language tag")
        return Literal(lexical, language=tag)
    return Literal(lexical)


# ---------------------------------------------------------------------------
# TriG
# ---------------------------------------------------------------------------


class _TrigParser:
    def __init__(self, text: str):
        self.s = _Scanner(text)
        self.prefixes: dict[str, str] = {}
        self.quads: list[Quad] = []

    def parse(self) -> QuadDataset:
        while True:
            self.s.skip_ws()
            if self.s.eof():
                break
            if self.s.peek() == "@":
                self._directive()
            elif self._lookahead_keyword("PREFIX"):
                self._sparql_prefix()
            elif self._lookahead_keyword("GRAPH"):
                self._consume_keyword("GRAPH")
                self.s.skip_ws()
                name = self._resource()
                self._graph_block(name)
            else:
                # Either `<g> { ... }` or a default-graph triple block.
                mark = (self.s.pos, self.s.line, self.s.col)
                node = self._resource()
                self.s.skip_ws()
                if self.s.peek() == "{":
                    self._graph_block(node)
                else:
                    self.s.pos, self.s.line, self.s.col = mark
                    self._triples(vocab.DEFAULT_GRAPH)
                    self.s.skip_ws()
                    self.s.expect(".")
        return QuadDataset(self.quads)

    def _lookahead_keyword(self, word: str) -> bool:
        end = self.s.pos + len(word)
        if self.s.text[self.s.pos : end].upper() != word:
            return False
        return end >= len(self.s.text) or self.s.text[end] in " \t\r\n<#"

    def _consume_keyword(self, word: str):
        for _ in word:
            self.s.advance()

    def _directive(self):
        self.s.advance()  # '@'
        word = self.s.read_token()
        if word == "prefix":
            self.s.skip_ws()
            name = self.s.read_token()
            if not name.endswith(":"):
                raise self.s.error("prefix name must end with ':'")
            self.s.skip_ws()
            iri = self.s.read_iriref()
            self.prefixes[name[:-1]] = iri
            self.s.skip_ws()
            self.s.expect(".")
        elif word == "base":
            raise self.s.error("@base is not supported; use absolute IRIs")
        else:
            raise self.s.error(f"unknown directive @{word}")

    def _sparql_prefix(self):
        self._consume_keyword("PREFIX")
        self.s.skip_ws()
        name = self.s.read_token()
        if not name.endswith(":"):
            raise self.s.error("prefix name must end with ':'")
        self.s.skip_ws()
        iri = self.s.read_iriref()
        self.prefixes[name[:-1]] = iri

    def _graph_block(self, graph: str):
        self.s.skip_ws()
        self.s.expect("{")
        while True:
            self.s.skip_ws()
            if self.s.peek() == "}":
                self.s.advance()
                break
            if self.s.eof():
                raise self.s.error("unterminated graph block")
            self._triples(graph)
            self.s.skip_ws()
            if self.s.peek() == ".":
                self.s.advance()
            elif self.s.peek() != "}":
                raise self.s.error("expected '.' or '}' after triples")

    def _triples(self, graph: str):
        subject = self._resource()
        while True:
            self.s.skip_ws()
            predicate = self._predicate()
            while True:
                self.s.skip_ws()
                obj = self._object()
                self.quads.append(Quad(subject, predicate, obj, graph))
                self.s.skip_ws()
                if self.s.peek() == ",":
                    self.s.advance()
                    continue
                break
            if self.s.peek() == ";":
                self.s.advance()
                self.s.skip_ws()
                # A dangling ';' before '.' or '}' is tolerated.
                if self.s.peek() in ".}":
                    return
                continue
            return

    def _predicate(self) -> str:
        if self.s.peek() == "a" and self.s.text[self.s.pos + 1 : self.s.pos + 2] in (
            " ",
            "\t",
            "\n",
            "<",
        ):
            self.s.advance()
            return vocab.RDF_TYPE
        return self._resource()

    def _resource(self) -> str:
        ch = self.s.peek()
        if ch == "_":
            raise self.s.blank_error()
        if ch == "[":
            raise self.s.blank_error()
        if ch == "<":
            return self.s.read_iriref()
        token = self.s.read_token()
        if not token:
            raise self.s.error("expected IRI or prefixed name")
        return self._expand(token)

    def _expand(self, token: str) -> str:
        if ":" not in token:
            raise self.s.error(f"not a prefixed name: {token!r}")
        prefix, _, local = token.partition(":")
        if prefix not in self.prefixes:
            raise self.s.error(f"undeclared prefix: {prefix}:")
        iri = self.prefixes[prefix] + local
        if not is_absolute_iri(iri):
            raise self.s.error(f"prefixed name expands to invalid IRI: {iri}")
        return iri

    def _object(self) -> Term:
        ch = self.s.peek()
        if ch == "_" or ch == "[" or ch == "(":
            raise self.s.blank_error()
        if ch == "<":
            return Iri(self.s.read_iriref())
        if ch == '"':
            lexical = self.s.read_string()
            if self.s.peek() == "^":
                self.s.expect("^")
                self.s.expect("^")
                if self.s.peek() == "<":
                    dt = self.s.read_iriref()
                else:
                    dt = self._expand(self.s.read_token())
                return Literal(lexical, datatype=dt)
            if self.s.peek() == "@":
                self.s.advance()
                return Literal(lexical, language=self.s.read_token())
            return Literal(lexical)
        if ch.isdigit() or (
            ch in "+-" and self.s.text[self.s.pos + 1 : self.s.pos + 2].isdigit()
        ):
            token = self.s.read_number()
            if _is_integer(token):
                return Literal(token, datatype=vocab.XSD_INTEGER)
            if _is_decimal(token):
                return Literal(token, datatype=vocab.XSD_DECIMAL)
            raise self.s.error(f"malformed numeric literal {token!r}")
        token = self.s.read_token()
        if not token:
            raise self.s.error("expected object term")
        if token in ("true", "false"):
            return Literal(token, datatype=vocab.XSD_BOOLEAN)
        return Iri(self._expand(token))


def _is_integer(token: str) -> bool:
    body = token[1:] if token[:1] in "+-" else token
    return body.isdigit()


def _is_decimal(token: str) -> bool:
    body = token[1:] if token[:1] in "+-" else token
    if body.count(".") != 1:
        return False
    left, _, right = body.partition(".")
    return (left.isdigit() or left == "") and right.isdigit()


def parse_trig(text: str) -> QuadDataset:
    return _TrigParser(text).parse()


def parse_quads(text: str, syntax: str = "trig") -> QuadDataset:
    """Parse ``text`` in the named syntax (``nquads`` or ``trig``)."""
    if syntax == "nquads":
        return parse_nquads(text)
    if syntax == "trig":
        return parse_trig(text)
    raise ParseError(f"unknown syntax: {syntax}")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _escape(lexical: str) -> str:
    out = []
    for ch in lexical:
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
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _term_nq(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if term.language is not None:
        return f'"{_escape(term.lexical)}"@{term.language}'
    if term.datatype == vocab.XSD_STRING:
        return f'"{_escape(term.lexical)}"'
    return f'"{_escape(term.lexical)}"^^<{term.datatype}>'


def serialize_nquads(dataset: QuadDataset) -> str:
    lines = []
    for q in dataset:
        lines.append(
            f"<{q.subject}> <{q.predicate}> {_term_nq(q.object)} <{q.graph}> .\n"
        )
    return "".join(lines)


def _compact(iri: str, prefixes: dict[str, str]) -> str:
    best_name = None
    best_len = -1
    for name, ns in prefixes.items():
        if iri.startswith(ns) and len(ns) > best_len:
            local = iri[len(ns) :]
            if local and all(c in _PN_LOCAL_OK for c in local) and not local.startswith(
                ("-", ".")
            ) and not local.endswith("."):
                best_name, best_len = name, len(ns)
    if best_name is None:
        return f"<{iri}>"
    return f"{best_name}:{iri[len(prefixes[best_name]):]}"


def _term_trig(term: Term, prefixes: dict[str, str]) -> str:
    if isinstance(term, Iri):
        return _compact(term.value, prefixes)
    if term.language is not None:
        return f'"{_escape(term.lexical)}"@{term.language}'
    if term.datatype == vocab.XSD_STRING:
        return f'"{_escape(term.lexical)}"'
    return f'"{_escape(term.lexical)}"^^{_compact(term.datatype, prefixes)}'


def serialize_trig(dataset: QuadDataset, prefixes: dict[str, str] | None = None) -> str:
    """Canonical TriG: sorted prefix header, graphs in sorted order, one
    triple per line."""
    prefixes = dict(sorted((prefixes or vocab.PREFIXES).items()))
    out = []
    used = set()
    body = []
    for name in dataset.graph_names():
        body.append(f"{_compact(name, prefixes)} {{\n")
        for q in dataset.graph(name):
            line = (
                f"    {_compact(q.subject, prefixes)} "
                f"{_compact(q.predicate, prefixes)} "
                f"{_term_trig(q.object, prefixes)} .\n"
            )
            body.append(line)
        body.append("}\n")
    text = "".join(body)
    for name, ns in prefixes.items():
        if f"{name}:" in text:
            used.add(name)
    for name in sorted(used):
        out.append(f"@prefix {name}: <{prefixes[name]}> .\n")
    if out and body:
        out.append("\n")
    out.extend(body)
    return "".join(out)


def serialize_quads(
    dataset: QuadDataset, syntax: str = "trig", prefixes: dict[str, str] | None = None
) -> str:
    if syntax == "nquads":
        return serialize_nquads(dataset)
    if syntax == "trig":
        return serialize_trig(dataset, prefixes)
    raise ParseError(f"unknown syntax: {syntax}")
