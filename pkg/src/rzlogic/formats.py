"""Readers and writers for the text formats.

Poset files::

    # comment
    elements: a b t
    le: a t          # a is below t; pairs are closed transitively
    le: b t
    bottom: _bot_    # optional; must be the least element
    alias: top t     # optional extra name for an element

Several ``elements:`` lines accumulate.  Without a least element the file
is rejected unless ``auto_bottom`` is requested, which appends ``_bot_``.

Domain programs (``#`` comments, statements end with ``.``)::

    {d} <- {_bot_}.
    {rw} <- {_bot_}, ~{ww}.
    {a, b}.                  # fact: body defaults to {bottom}

Classical programs (``%`` comments)::

    p, -q :- r, not s.       # heads may also be separated by '|'
    p.                       # fact
    :- p, q.                 # constraint (empty head)

Clauses are written ``{a, b}``; a theory file holds one clause per line.

Burmeister ``.cxt`` contexts: ``B``, optional blank line, object count,
attribute count, optional blank line, object names, attribute names, then
one row per object of ``.``/``X`` characters.  The CSV variant has a header
row of attribute names after one leading cell, then one row per object:
name followed by ``1``/``0`` cells.
"""

from __future__ import annotations

import csv
import io
import re

from .asp import ClassicalProgram, ClassicalRule, Literal
from .errors import DomainError, ParseError
from .fca import FormalContext
from .poset import Domain, build_domain
from .programs import ExtendedRule, Program

# -- poset files -----------------------------------------------------------

_DIRECTIVE = re.compile(r"^\s*([a-z_]+)\s*:(.*)$")


def _strip_comment(line: str, mark: str) -> str:
    i = line.find(mark)
    return line if i < 0 else line[:i]


def parse_domain_file(text: str, auto_bottom: bool = False) -> Domain:
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    where: dict[str, tuple[int, int]] = {}
    bottom = None
    aliases: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw, "#")
        if not line.strip():
            continue
        m = _DIRECTIVE.match(line)
        if not m:
            raise ParseError("expected 'elements:', 'le:', 'bottom:' or 'alias:'", lineno, 1)
        key, rest = m.group(1), m.group(2)
        col = m.start(2) + 1
        toks = [(t.group(), col + t.start()) for t in re.finditer(r"\S+", rest)]
        if key == "elements":
            for name, c in toks:
                if name in where:
                    raise ParseError(f"duplicate element {name!r}", lineno, c)
                where[name] = (lineno, c)
                elements.append(name)
        elif key in ("le", "alias"):
            if len(toks) != 2:
                raise ParseError(f"'{key}:' takes exactly two names", lineno, col)
            if key == "le":
                for name, c in toks:
                    if name not in where:
                        raise ParseError(f"unknown element {name!r}", lineno, c)
                pairs.append((toks[0][0], toks[1][0]))
            else:
                if toks[1][0] not in where:
                    raise ParseError(f"unknown element {toks[1][0]!r}", lineno, toks[1][1])
                aliases[toks[0][0]] = toks[1][0]
        elif key == "bottom":
            if len(toks) != 1:
                raise ParseError("'bottom:' takes exactly one name", lineno, col)
            bottom = toks[0][0]
            if bottom not in where:
                raise ParseError(f"unknown element {bottom!r}", lineno, toks[0][1])
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, 1)
    if not elements:
        raise ParseError("no 'elements:' line")
    try:
        return build_domain(elements, pairs, auto_bottom=auto_bottom, bottom=bottom,
                            aliases=aliases)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def emit_domain(d: Domain) -> str:
    lines = ["elements: " + " ".join(d.names)]
    lines += [f"le: {d.name(x)} {d.name(y)}" for x, y in d.covers()]
    lines.append(f"bottom: {d.name(d.bottom)}")
    lines += [f"alias: {a} {d.name(t)}" for a, t in sorted(d.aliases.items())]
    return "\n".join(lines) + "\n"


# -- tokenizer shared by the program grammars ------------------------------

class _Tokens:
    def __init__(self, text: str, spec: list[tuple[str, str]], comment: str):
        self.items: list[tuple[str, str, int, int]] = []
        pattern = re.compile("|".join(f"(?P<{k}>{v})" for k, v in spec))
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = _strip_comment(raw, comment)
            pos = 0
            while pos < len(line):
                if line[pos].isspace():
                    pos += 1
                    continue
                m = pattern.match(line, pos)
                if not m:
                    raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
                self.items.append((m.lastgroup, m.group(), lineno, pos + 1))
                pos = m.end()
        self.i = 0
        lines = text.splitlines()
        self.end = (len(lines) or 1, (len(lines[-1]) + 1) if lines else 1)

    def peek(self) -> str | None:
        return self.items[self.i][0] if self.i < len(self.items) else None

    def peek_value(self) -> str | None:
        return self.items[self.i][1] if self.i < len(self.items) else None

    def where(self) -> tuple[int, int]:
        if self.i < len(self.items):
            return self.items[self.i][2], self.items[self.i][3]
        return self.end

    def take(self, kind: str, what: str | None = None) -> tuple[str, int, int]:
        if self.peek() != kind:
            found = self.peek_value()
            raise ParseError(f"expected {what or kind}, found "
                             f"{'end of input' if found is None else repr(found)}",
                             *self.where())
        _, value, line, col = self.items[self.i]
        self.i += 1
        return value, line, col

    def accept(self, kind: str) -> bool:
        if self.peek() == kind:
            self.i += 1
            return True
        return False


_NAME = r"[A-Za-z0-9_&+\-']+"

_DOMAIN_TOKENS = [("arrow", r"<-"), ("lbrace", r"\{"), ("rbrace", r"\}"),
                  ("comma", r","), ("tilde", r"~"), ("dot", r"\."), ("name", _NAME)]


def _clause(tokens: _Tokens, d: Domain) -> frozenset[int]:
    tokens.take("lbrace", "'{'")
    out = set()
    if tokens.peek() != "rbrace":
        while True:
            name, line, col = tokens.take("name", "element name")
            try:
                out.add(d.index(name))
            except DomainError:
                raise ParseError(f"unknown element {name!r}", line, col) from None
            if not tokens.accept("comma"):
                break
    tokens.take("rbrace", "'}'")
    return frozenset(out)


def parse_program_file(text: str, d: Domain) -> Program:
    tokens = _Tokens(text, _DOMAIN_TOKENS, "#")
    rules = []
    while tokens.peek() is not None:
        head = _clause(tokens, d)
        pos, neg = frozenset({d.bottom}), frozenset()
        if tokens.accept("arrow"):
            pos = _clause(tokens, d)
            if tokens.accept("comma"):
                tokens.take("tilde", "'~'")
                neg = _clause(tokens, d)
        tokens.take("dot", "'.'")
        rules.append(ExtendedRule(head, pos, neg))
    return Program(d, tuple(rules))


def format_clause(d: Domain, clause) -> str:
    return "{" + ", ".join(d.sorted_names(clause)) + "}"


def emit_program(p: Program) -> str:
    d = p.domain
    lines = []
    for r in p.rules:
        s = f"{format_clause(d, r.head)} <- {format_clause(d, r.pos_body)}"
        if r.neg_body:
            s += f", ~{format_clause(d, r.neg_body)}"
        lines.append(s + ".")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_clause(text: str, d: Domain) -> frozenset[int]:
    tokens = _Tokens(text, _DOMAIN_TOKENS, "#")
    out = _clause(tokens, d)
    if tokens.peek() is not None:
        raise ParseError("trailing input after clause", *tokens.where())
    return out


def parse_theory(text: str, d: Domain) -> list[frozenset[int]]:
    tokens = _Tokens(text, _DOMAIN_TOKENS, "#")
    out = []
    while tokens.peek() is not None:
        out.append(_clause(tokens, d))
        tokens.accept("comma")
    return out


# -- classical programs ----------------------------------------------------

_CLASSICAL_TOKENS = [("if", r":-"), ("comma", r","), ("bar", r"\|"), ("dot", r"\."),
                     ("not", r"not\b"), ("literal", r"-?[A-Za-z_][A-Za-z0-9_]*")]


def _literal(tokens: _Tokens) -> Literal:
    value, _, _ = tokens.take("literal", "literal")
    return Literal.parse(value)


def parse_classical_program(text: str) -> ClassicalProgram:
    tokens = _Tokens(text, _CLASSICAL_TOKENS, "%")
    rules = []
    while tokens.peek() is not None:
        head: list[Literal] = []
        if tokens.peek() == "literal":
            head.append(_literal(tokens))
            while tokens.peek() in ("comma", "bar"):
                tokens.i += 1
                head.append(_literal(tokens))
        pos: list[Literal] = []
        neg: list[Literal] = []
        if tokens.accept("if"):
            if tokens.peek() != "dot":
                while True:
                    if tokens.accept("not"):
                        neg.append(_literal(tokens))
                    else:
                        pos.append(_literal(tokens))
                    if not tokens.accept("comma"):
                        break
        elif not head:
            raise ParseError("expected a literal or ':-'", *tokens.where())
        tokens.take("dot", "'.'")
        rules.append(ClassicalRule(tuple(head), tuple(pos), tuple(neg)))
    return ClassicalProgram(tuple(rules))


def emit_classical_program(p: ClassicalProgram) -> str:
    return "".join(f"{r}\n" for r in p.rules)


# -- formal contexts -------------------------------------------------------

def parse_cxt(text: str) -> FormalContext:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    pos = 0

    def line_no():
        return pos + 1

    def next_line(what):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}", line_no())
        s = lines[pos]
        pos += 1
        return s

    if next_line("'B'").strip() != "B":
        raise ParseError("first line must be 'B'", 1, 1)
    if pos < len(lines) and not lines[pos].strip():
        pos += 1

    def count(what):
        s = next_line(what).strip()
        if not s.isdigit():
            raise ParseError(f"expected {what}, found {s!r}", pos, 1)
        return int(s)

    n_obj = count("object count")
    n_att = count("attribute count")
    if pos < len(lines) and not lines[pos].strip():
        pos += 1
    objects = []
    for _ in range(n_obj):
        name = next_line("object name")
        if not name.strip():
            raise ParseError("empty object name", pos)
        objects.append(name)
    attributes = []
    for _ in range(n_att):
        name = next_line("attribute name")
        if not name.strip():
            raise ParseError("empty attribute name", pos)
        attributes.append(name)
    rows = []
    for r in range(n_obj):
        row = next_line(f"incidence row {r + 1}").rstrip()
        if len(row) != n_att:
            raise ParseError(f"incidence row {r + 1} has {len(row)} entries, "
                             f"expected {n_att}", pos, 1)
        bad = next((k for k, ch in enumerate(row) if ch not in ".X"), None)
        if bad is not None:
            raise ParseError(f"incidence row {r + 1}: unexpected character {row[bad]!r}",
                             pos, bad + 1)
        rows.append([ch == "X" for ch in row])
    for extra in lines[pos:]:
        pos += 1
        if extra.strip():
            raise ParseError("unexpected content after incidence rows", pos, 1)
    return FormalContext.from_matrix(objects, attributes, rows)


def emit_cxt(ctx: FormalContext) -> str:
    out = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    out += list(ctx.objects)
    out += list(ctx.attributes)
    out += ["".join("X" if x else "." for x in row) for row in ctx.matrix()]
    return "\n".join(out) + "\n"


def parse_csv_context(text: str) -> FormalContext:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty CSV context", 1)
    attributes = [c.strip() for c in rows[0][1:]]
    objects, matrix = [], []
    for lineno, row in enumerate(rows[1:], 2):
        if len(row) != len(attributes) + 1:
            raise ParseError(f"row has {len(row) - 1} cells, expected {len(attributes)}",
                             lineno, 1)
        objects.append(row[0].strip())
        cells = []
        for k, c in enumerate(row[1:]):
            c = c.strip()
            if c not in ("0", "1"):
                raise ParseError(f"cell must be 0 or 1, found {c!r}", lineno, k + 2)
            cells.append(c == "1")
        matrix.append(cells)
    return FormalContext.from_matrix(objects, attributes, matrix)


def emit_csv_context(ctx: FormalContext) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(ctx.attributes))
    for g, row in zip(ctx.objects, ctx.matrix()):
        w.writerow([g] + ["1" if x else "0" for x in row])
    return buf.getvalue()


def parse_context_file(text: str, format: str = "cxt") -> FormalContext:
    if format == "cxt":
        return parse_cxt(text)
    if format == "csv":
        return parse_csv_context(text)
    raise ValueError(f"unknown context format {format!r}")

