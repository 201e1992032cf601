"""Parser and printer for the ``.fp`` presentation grammar.

    presentation := "<" gens "|" rels ">"
    gens         := ident ("," ident)*
    rels         := <empty> | rel ("," rel)*
    rel          := word ("=" word)?
    word         := "1" | factor+          (factors optionally separated by "*")
    factor       := base ("^" int)?
    base         := ident | "(" word ")"
    ident        := [A-Za-z][A-Za-z0-9_]*
    int          := "-"? digits

Whitespace is insignificant.  A relation ``u = v`` is stored as the relator
``u*v^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation
from .words import GeneratorId, Letter, Word, format_word, make_generator, power


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.message = message
        self.span = span

    def render(self, text: str, filename: str = "<input>") -> str:
        """Message with the offending line and a caret marker."""
        raw = text.encode("utf-8")
        start = min(self.span.start, len(raw))
        line_start = raw.rfind(b"\n", 0, start) + 1
        line_end = raw.find(b"\n", start)
        if line_end < 0:
            line_end = len(raw)
        line_no = raw.count(b"\n", 0, start) + 1
        col = start - line_start
        width = max(1, min(self.span.end, line_end) - start)
        line = raw[line_start:line_end].decode("utf-8", "replace")
        return (f"{filename}:{line_no}:{col + 1}: error: {self.message}\n"
                f"  {line}\n  {' ' * col}{'^' * width}")

    def __str__(self) -> str:
        return f"{self.message} at bytes {self.span.start}..{self.span.end}"


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<int>-?[0-9]+)
  | (?P<punct>[<>|,=*^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    # byte offsets are reported; the grammar is ASCII so only errors can see non-ASCII
    boff = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = text[pos]
            width = len(bad.encode("utf-8"))
            raise ParseError(f"unexpected character {bad!r}", SourceSpan(boff, boff + width))
        kind = m.lastgroup
        chunk = m.group()
        width = len(chunk.encode("utf-8"))
        if kind != "ws":
            tokens.append(_Token(kind if kind != "punct" else chunk, chunk, boff, boff + width))
        boff += width
        pos = m.end()
    tokens.append(_Token("eof", "", boff, boff))
    return tokens


class _Parser:
    def __init__(self, text: str, generators: Sequence[GeneratorId] = ()):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.gens = {g.name: g for g in generators}

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, what: str | None = None) -> _Token:
        t = self.tok
        if t.kind != kind:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {what or repr(kind)}, found {found}",
                             SourceSpan(t.start, t.end))
        return self.advance()

    def presentation(self) -> Presentation:
        self.expect("<")
        gens: list[GeneratorId] = []
        while True:
            t = self.expect("ident", "generator name")
            if t.text in self.gens:
                raise ParseError(f"duplicate generator {t.text!r}", SourceSpan(t.start, t.end))
            g = make_generator(len(gens), t.text)
            gens.append(g)
            self.gens[t.text] = g
            if self.tok.kind != ",":
                break
            self.advance()
        self.expect("|")
        relators: list[Word] = []
        if self.tok.kind != ">":
            while True:
                relators.append(self.relator())
                if self.tok.kind != ",":
                    break
                self.advance()
        self.expect(">", "',' or '>'")
        self.expect("eof", "end of input")
        return Presentation(tuple(gens), tuple(relators))

    def relator(self) -> Word:
        start = self.tok.start
        lhs = self.word()
        if self.tok.kind == "=":
            self.advance()
            rhs = self.word()
            rel = Word(lhs.letters + rhs.inverse().letters)
        else:
            rel = lhs
        if not rel:
            end = self.tokens[self.pos - 1].end
            raise ParseError("relator reduces to the identity", SourceSpan(start, end))
        return rel

    def word(self) -> Word:
        t = self.tok
        if t.kind == "int":
            if t.text != "1":
                raise ParseError(f"unexpected integer {t.text!r}; only 1 denotes the identity",
                                 SourceSpan(t.start, t.end))
            self.advance()
            return Word()
        letters: list[Letter] = []
        letters.extend(self.factor())
        while True:
            if self.tok.kind == "*":
                self.advance()
                letters.extend(self.factor())
            elif self.tok.kind in ("ident", "("):
                letters.extend(self.factor())
            else:
                break
        return Word(tuple(letters))

    def factor(self) -> tuple[Letter, ...]:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            gen = self.gens.get(t.text)
            if gen is None:
                raise ParseError(f"undeclared generator {t.text!r}", SourceSpan(t.start, t.end))
            base = Word.generator(gen)
        elif t.kind == "(":
            self.advance()
            base = self.word()
            self.expect(")")
        else:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected generator or '(', found {found}",
                             SourceSpan(t.start, t.end))
        if self.tok.kind == "^":
            self.advance()
            n = int(self.expect("int", "integer exponent").text)
            base = power(base, n)
        return base.letters


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).presentation()


def parse_word(text: str, generators: Sequence[GeneratorId]) -> Word:
    parser = _Parser(text, generators)
    w = parser.word()
    parser.expect("eof", "end of input")
    return w


def print_presentation(p: Presentation) -> str:
    gens = ", ".join(p.names)
    rels = ", ".join(format_word(r) for r in p.relators)
    return f"< {gens} | {rels} >" if rels else f"< {gens} | >"
