"""Freely reduced words in a free group on indexed generators.

A letter is a pair ``(generator_index, sign)`` with ``sign`` in ``{+1, -1}``.
Words are immutable and always stored freely reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Cancel adjacent inverse pairs until none remain (stack reduction)."""
    out: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1) or gen < 0:
            raise ValueError(f"bad letter {(gen, sign)!r}")
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def gen(cls, index: int, power: int = 1) -> "Word":
        sign = 1 if power >= 0 else -1
        return cls(((index, sign),) * abs(power))

    @classmethod
    def from_ints(cls, ints: Iterable[int]) -> "Word":
        """Build from signed 1-based integers: ``2`` is g1, ``-1`` is g0^-1."""
        return cls(tuple((abs(i) - 1, 1 if i > 0 else -1) for i in ints))

    def to_ints(self) -> tuple[int, ...]:
        return tuple((g + 1) * s for g, s in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, gen: int) -> int:
        return sum(s for g, s in self.letters if g == gen)

    def occurrences(self, gen: int) -> int:
        return sum(1 for g, _ in self.letters if g == gen)

    def substitute(self, images: dict[int, "Word"]) -> "Word":
        """Replace each generator in ``images`` by its image word."""
        out: list[Letter] = []
        for g, s in self.letters:
            if g in images:
                img = images[g] if s == 1 else images[g].inverse()
                out.extend(img.letters)
            else:
                out.append((g, s))
        return Word(tuple(out))

    def reindex(self, mapping: Sequence[int] | dict[int, int]) -> "Word":
        return Word(tuple((mapping[g], s) for g, s in self.letters))

    def cyclically_reduced(self) -> "Word":
        letters = self.letters
        i, j = 0, len(letters) - 1
        while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
            i += 1
            j -= 1
        return Word(letters[i : j + 1])

    def rotations(self):
        n = len(self.letters)
        for k in range(max(n, 1)):
            yield Word(self.letters[k:] + self.letters[:k])


EMPTY = Word()


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return u.inverse() * v.inverse() * u * v


def word_product(words: Iterable[Word]) -> Word:
    out: list[Letter] = []
    for w in words:
        out.extend(w.letters)
    return Word(tuple(out))


def canonical_relator(w: Word) -> Word:
    """Representative of the class of ``w`` under cyclic rotation and inversion."""
    w = w.cyclically_reduced()
    if not w:
        return w
    # rotations of a cyclically reduced word are reduced, so compare raw keys
    # lexicographic on (generator, inverse?) so positive letters come first
    best = None
    for letters in (w.letters, w.inverse().letters):
        keys = tuple((g, s < 0) for g, s in letters)
        for k in range(len(keys)):
            rot = keys[k:] + keys[:k]
            if best is None or rot < best:
                best = rot
    return Word(tuple((g, -1 if neg else 1) for g, neg in best))
