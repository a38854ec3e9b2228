"""Finite group presentations and the operations that build new ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import Word, canonical_relator


@dataclass(frozen=True)
class GroupPresentation:
    """``<generators | relators>``.

    Relators are stored freely and cyclically reduced; identity relators are
    dropped.  Relator order and multiplicity are otherwise preserved, since the
    relator count matters for the dual-finite-torsion test.
    """

    generators: tuple[str, ...] = ()
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {gens!r}")
        rels = []
        for r in self.relators:
            if not isinstance(r, Word):
                r = Word(tuple(r))
            for g, _ in r.letters:
                if g >= len(gens):
                    raise ValueError(f"relator uses generator index {g} >= {len(gens)}")
            r = r.cyclically_reduced()
            if r:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def gen(self, name: str, power: int = 1) -> Word:
        return Word.gen(self.index(name), power)

    def word(self, text: str) -> Word:
        from .dsl import parse_word

        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        from .dsl import format_word

        return format_word(w, self.generators)

    def relator_set(self) -> frozenset[Word]:
        """Relators up to rotation and inversion, for set-level comparisons."""
        return frozenset(canonical_relator(r) for r in self.relators)

    def same_group_data(self, other: "GroupPresentation") -> bool:
        return self.generators == other.generators and self.relator_set() == other.relator_set()

    def __str__(self) -> str:
        from .dsl import format_presentation

        return format_presentation(self)


def presentation(generators: Sequence[str], relators: Iterable[str | Word] = ()) -> GroupPresentation:
    """Convenience constructor taking relators as DSL words or :class:`Word`."""
    from .dsl import parse_word

    gens = tuple(generators)
    rels = [r if isinstance(r, Word) else parse_word(r, gens) for r in relators]
    return GroupPresentation(gens, tuple(rels))


def quotient_by(p: GroupPresentation, extra: Iterable[Word]) -> GroupPresentation:
    """Append ``extra`` as relators (quotient by their normal closure)."""
    return GroupPresentation(p.generators, p.relators + tuple(extra))


def _fresh_name(name: str, taken: set[str]) -> str:
    n = 2
    while f"{name}_{n}" in taken:
        n += 1
    return f"{name}_{n}"


def free_product(p1: GroupPresentation, p2: GroupPresentation) -> GroupPresentation:
    """Disjoint union of generators; colliding names in ``p2`` get a numeric suffix."""
    taken = set(p1.generators)
    names2 = []
    for name in p2.generators:
        new = name if name not in taken else _fresh_name(name, taken | set(p2.generators))
        taken.add(new)
        names2.append(new)
    shift = p1.rank
    rels2 = tuple(r.reindex({g: g + shift for g in range(p2.rank)}) for r in p2.relators)
    return GroupPresentation(p1.generators + tuple(names2), p1.relators + rels2)


def free_product_map(p1: GroupPresentation, p2: GroupPresentation) -> tuple[GroupPresentation, dict[int, int]]:
    """Free product plus the index map sending ``p2``'s generators into it."""
    prod = free_product(p1, p2)
    return prod, {g: g + p1.rank for g in range(p2.rank)}


def exponent_matrix(p: GroupPresentation) -> list[list[int]]:
    """Rows are generators, columns are relators; entries are exponent sums."""
    return [[r.exponent_sum(g) for r in p.relators] for g in range(p.rank)]


def free_group(names: Sequence[str]) -> GroupPresentation:
    return GroupPresentation(tuple(names), ())


def cyclic_group(n: int, name: str = "x") -> GroupPresentation:
    return GroupPresentation((name,), (Word.gen(0, n),))


def von_dyck(orders: Sequence[int]) -> GroupPresentation:
    """``E_{p1..pk} = <x1..xk | x1^p1, .., xk^pk, x1 x2 .. xk>``."""
    k = len(orders)
    names = tuple(f"x{i + 1}" for i in range(k))
    rels = [Word.gen(i, p) for i, p in enumerate(orders)]
    rels.append(Word(tuple((i, 1) for i in range(k))))
    return GroupPresentation(names, tuple(rels))
