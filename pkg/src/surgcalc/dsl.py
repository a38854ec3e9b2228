"""Text syntax for presentations: ``<g1, g2 | w1, w2>``.

Words are juxtaposed atoms separated by optional whitespace.  An atom is a
generator name, ``name^k``, a commutator ``[u, v]`` or a group ``(w)``, each
optionally raised to an integer power.  ``1`` denotes the empty word and
``u = v`` is accepted as shorthand for the relator ``u v^-1``.
"""

from __future__ import annotations

import re
from typing import Sequence

from .presentation import GroupPresentation
from .words import Word, commutator

MAX_EXPONENT = 10**6


class DSLError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"{message} (line {line}, column {col})")


class UnknownGeneratorError(DSLError):
    pass


class ExponentOverflowError(DSLError):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>-?\d+)
  | (?P<name>[^\W\d]\w*'*)
  | (?P<sym>[<>|,^\[\]()=])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, generators: Sequence[str] | None = None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.gens = list(generators) if generators is not None else None
        self.index = {g: k for k, g in enumerate(self.gens or [])}

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def fail(self, message: str, pos: int, cls=DSLError):
        raise cls(message, self.text, pos)

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] == "sym"

    # -- grammar -------------------------------------------------------
    def presentation(self) -> GroupPresentation:
        self.take("<")
        gens: list[str] = []
        if not self.at("|"):
            while True:
                _, name, pos = self.take(kind="name")
                if name in gens:
                    self.fail(f"duplicate generator {name!r}", pos)
                gens.append(name)
                if self.at(","):
                    self.take(",")
                    continue
                break
        self.take("|")
        self.gens = gens
        self.index = {g: k for k, g in enumerate(gens)}
        rels: list[Word] = []
        if not self.at(">"):
            while True:
                rels.extend(self.relation())
                if self.at(","):
                    self.take(",")
                    continue
                break
        self.take(">")
        self.take(kind="end")
        return GroupPresentation(tuple(gens), tuple(rels))

    def relation(self) -> list[Word]:
        sides = [self.word()]
        while self.at("="):
            self.take("=")
            sides.append(self.word())
        if len(sides) == 1:
            return sides
        return [a * b.inverse() for a, b in zip(sides, sides[1:])]

    def word(self) -> Word:
        out = Word()
        while True:
            kind, value, _ = self.peek()
            if kind == "name" or (kind == "sym" and value in "[(") or (kind == "int" and value == "1"):
                out = out * self.atom()
            else:
                return out

    def atom(self) -> Word:
        kind, value, pos = self.take()
        if kind == "int":
            base = Word()
        elif kind == "name":
            base = self.resolve(value, pos)
        elif value == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            base = commutator(u, v)
        else:
            base = self.word()
            self.take(")")
        if self.at("^"):
            self.take("^")
            _, num, npos = self.take(kind="int")
            k = int(num)
            if abs(k) > MAX_EXPONENT:
                self.fail(f"exponent {k} exceeds {MAX_EXPONENT}", npos, ExponentOverflowError)
            base = base**k
        return base

    def resolve(self, name: str, pos: int) -> Word:
        if name in self.index:
            return Word.gen(self.index[name])
        # juxtaposed single names without spaces, e.g. "ab" for a b
        letters = []
        rest = name
        names = sorted(self.index, key=len, reverse=True)
        while rest:
            for g in names:
                if rest.startswith(g):
                    letters.append((self.index[g], 1))
                    rest = rest[len(g):]
                    break
            else:
                self.fail(f"unknown generator {name!r}", pos, UnknownGeneratorError)
        return Word(tuple(letters))


def parse_presentation(text: str) -> GroupPresentation:
    return _Parser(text).presentation()


def parse_word(text: str, generators: Sequence[str]) -> Word:
    p = _Parser(text, generators)
    w = p.word()
    p.take(kind="end")
    return w


def format_word(w: Word, generators: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    run_gen, run = None, 0
    for g, s in list(w.letters) + [(None, 0)]:
        if g == run_gen and (s > 0) == (run > 0):
            run += s
            continue
        if run_gen is not None:
            name = generators[run_gen]
            parts.append(name if run == 1 else f"{name}^{run}")
        run_gen, run = g, s
    return " ".join(parts)


def format_presentation(p: GroupPresentation) -> str:
    gens = ", ".join(p.generators)
    rels = ", ".join(format_word(r, p.generators) for r in p.relators)
    left = f"<{gens} |" if gens else "< |"
    return f"{left} {rels}>" if rels else f"{left} >"
