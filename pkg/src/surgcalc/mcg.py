"""Dehn-twist words in the torus mapping class group, realized in SL(2, Z).

Matrix convention: ``t_a = [[1, 1], [0, 1]]`` and ``t_b = [[1, 0], [-1, 1]]``.
This pair satisfies the braid relation and ``(t_a t_b)^6 = 1``; since the
group is isomorphic to SL(2, Z), equality of words reduces to matrix equality.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

TWISTS = ("a", "b")


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    def __matmul__(self, o: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2Matrix":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self == IDENTITY

    def to_rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = SL2Matrix(1, 0, 0, 1)
TWIST_MATRIX = {"a": SL2Matrix(1, 1, 0, 1), "b": SL2Matrix(1, 0, -1, 1)}


def _merge(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for t, e in letters:
        if t not in TWISTS:
            raise ValueError(f"unknown twist {t!r}")
        if e == 0:
            continue
        if out and out[-1][0] == t:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((t, e))
    return tuple(out)


@dataclass(frozen=True)
class MonodromyWord:
    """Product of twists, left to right; adjacent equal twists are merged."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _merge(self.letters))

    @classmethod
    def twist(cls, t: str, e: int = 1) -> "MonodromyWord":
        return cls(((t, e),))

    def __mul__(self, o: "MonodromyWord") -> "MonodromyWord":
        return MonodromyWord(self.letters + o.letters)

    def inverse(self) -> "MonodromyWord":
        return MonodromyWord(tuple((t, -e) for t, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "MonodromyWord":
        base = self if n >= 0 else self.inverse()
        return MonodromyWord(base.letters * abs(n))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def twist_count(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(t if e == 1 else f"{t}^{e}" for t, e in self.letters)


def to_matrix(w: MonodromyWord) -> SL2Matrix:
    m = IDENTITY
    for t, e in w.letters:
        m = m @ (TWIST_MATRIX[t] ** e)
    return m


def is_identity_factorization(w: MonodromyWord) -> bool:
    return to_matrix(w).is_identity()


def conjugate(w: MonodromyWord, u: MonodromyWord) -> MonodromyWord:
    """``u w u^-1``."""
    return u * w * u.inverse()


@dataclass(frozen=True)
class FiberType:
    kind: str  # "fishtail", "necklace" or "unrecognized"
    k: int = 1

    def __post_init__(self):
        if self.kind not in ("fishtail", "necklace", "unrecognized"):
            raise ValueError(f"bad fiber kind {self.kind!r}")
        if self.kind == "necklace" and self.k < 2:
            raise ValueError("necklace fibers have k >= 2")

    @property
    def euler(self) -> int | None:
        return {"fishtail": 1, "necklace": self.k}.get(self.kind)

    def __str__(self) -> str:
        return {"fishtail": "I1", "necklace": f"I{self.k}"}.get(self.kind, "unrecognized")


FISHTAIL = FiberType("fishtail")
UNRECOGNIZED = FiberType("unrecognized")


def _conjugated_core(w: MonodromyWord) -> tuple[str, int] | None:
    """If ``w`` is literally ``u t^k u^-1``, return ``(t, k)``.

    Merged words are canonical, so a conjugate of a single power always has
    this palindromic-inverse shape with ``u`` not ending in ``t``.
    """
    L = w.letters
    if len(L) % 2 == 0:
        return None
    n = len(L) // 2
    for i in range(n):
        (t1, e1), (t2, e2) = L[i], L[-1 - i]
        if t1 != t2 or e1 != -e2:
            return None
    return L[n]


def recognize_fiber(segment: MonodromyWord) -> FiberType:
    core = _conjugated_core(segment)
    if core is None:
        return UNRECOGNIZED
    _, k = core
    m = to_matrix(segment)
    if m.trace != 2 or m.is_identity():
        return UNRECOGNIZED
    if abs(k) == 1:
        return FISHTAIL
    if k >= 2:
        return FiberType("necklace", k)
    return UNRECOGNIZED


def euler_number(w: MonodromyWord, segments: Sequence[MonodromyWord] | None = None) -> int:
    """Euler number of the elliptic fibration with global monodromy ``w``.

    Without a segmentation ``w`` must be a positive word and every twist is a
    fishtail.  With one, the segments must multiply to ``w`` and each must be
    a recognized fiber; their contributions are summed.
    """
    if not is_identity_factorization(w):
        raise ValueError("not a global monodromy")
    if segments is None:
        if not w.is_positive():
            raise ValueError("word has negative twists; supply a fiber segmentation")
        return w.twist_count()
    total = MonodromyWord()
    count = 0
    for s in segments:
        f = recognize_fiber(s)
        if f.euler is None:
            raise ValueError(f"segment {s} is not a recognized singular fiber")
        count += f.euler
        total = total * s
    if total != w:
        raise ValueError("segments do not multiply to the word")
    return count


def braid_rewrite_chain(src: MonodromyWord, dst: MonodromyWord, max_words: int = 100_000) -> list[MonodromyWord] | None:
    """Shortest chain of single braid moves ``a b a <-> b a b`` between two
    positive words, found by breadth-first search over expanded letter strings."""

    def expand(w: MonodromyWord) -> str:
        if not w.is_positive():
            raise ValueError("braid chains are defined for positive words")
        return "".join(t * e for t, e in w.letters)

    start, goal = expand(src), expand(dst)
    if len(start) != len(goal):
        return None
    prev = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s == goal:
            chain = []
            while s is not None:
                chain.append(parse_monodromy(" ".join(s)))
                s = prev[s]
            return chain[::-1]
        for i in range(len(s) - 2):
            tri = s[i : i + 3]
            if tri in ("aba", "bab"):
                n = s[:i] + ("bab" if tri == "aba" else "aba") + s[i + 3 :]
                if n not in prev:
                    if len(prev) >= max_words:
                        return None
                    prev[n] = s
                    queue.append(n)
    return None


class MonodromySyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}")
        self.column = pos + 1


_TOKEN = re.compile(r"\s*(?:(t_[ab]|[ab])|(\^)|(\()|(\))|(-?\d+))")


def parse_monodromy(text: str) -> MonodromyWord:
    """Parse ``a b a^-1 (a^5)^(a b) (a b)^6``.

    ``(w)^n`` is a power and ``(w)^u`` with ``u`` a twist or a parenthesized
    word means ``u w u^-1``.  ``t_a`` and ``t_b`` are accepted for ``a``, ``b``.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise MonodromySyntaxError(f"unexpected {text[pos]!r}", pos)
        kind = m.lastindex
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append((0, "", len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take(kind):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind:
            raise MonodromySyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    def word(closing: bool) -> MonodromyWord:
        out = MonodromyWord()
        while peek()[0] in (1, 3):
            out = out * atom()
        if not closing and peek()[0] != 0:
            raise MonodromySyntaxError(f"unexpected {peek()[1]!r}", peek()[2])
        return out

    def exponent_or_conjugator(base: MonodromyWord, allow_word: bool) -> MonodromyWord:
        if peek()[0] != 2:
            return base
        take(2)
        kind, val, _ = peek()
        if kind == 5:
            take(5)
            return base ** int(val)
        if allow_word and kind == 1:
            take(1)
            return conjugate(base, MonodromyWord.twist(val[-1]))
        if allow_word and kind == 3:
            take(3)
            u = word(True)
            take(4)
            return conjugate(base, u)
        raise MonodromySyntaxError("expected an exponent", peek()[2])

    def atom() -> MonodromyWord:
        kind, val, _ = peek()
        if kind == 1:
            take(1)
            return exponent_or_conjugator(MonodromyWord.twist(val[-1]), False)
        take(3)
        inner = word(True)
        take(4)
        return exponent_or_conjugator(inner, True)

    return word(False)
