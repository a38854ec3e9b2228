"""Deterministic Tietze simplification.

Strategy: canonicalize relators (cyclic reduction, rotation/inversion dedupe,
ordered shortest first), then eliminate a generator that occurs exactly once
in the shortest relator that has one.  Each elimination costs one step.

With ``commuting=True``, relators of the form ``[x, y]`` for generators x, y
are read as commutation rules and every other relator is reduced in the
partially commutative group they define: a pair ``x^e u x^-e`` with every
letter of ``u`` commuting with ``x`` cancels.  The reduced relator equals the
old one modulo the commutators, so the normal closure is unchanged.  In this
mode a reduction pass runs before every elimination, so commutation rules are
used before their generators get substituted away.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import GroupPresentation
from .words import Word, canonical_relator


@dataclass(frozen=True)
class TietzeResult:
    presentation: GroupPresentation
    exhausted: bool
    steps: int
    # word in the simplified generators for each original generator
    images: tuple[Word, ...] = field(default=())


def _canonical_relators(relators) -> list[Word]:
    seen = set()
    out = []
    for r in relators:
        c = canonical_relator(r)
        if c and c not in seen:
            seen.add(c)
            out.append(c)
    out.sort(key=lambda w: (len(w), w.to_ints()))
    return out


def _solve_for(r: Word, g: int) -> Word:
    """Given a relator with a single occurrence of ``g``, return ``w`` with ``g = w``."""
    letters = r.letters
    k = next(i for i, (h, _) in enumerate(letters) if h == g)
    rot = Word(letters[k:] + letters[:k])
    sign = rot.letters[0][1]
    rest = Word(rot.letters[1:])
    # g^s rest = 1  =>  g = rest^(-s)
    return rest.inverse() if sign == 1 else rest


def _find_elimination(relators: list[Word], alive: list[int]) -> tuple[int, int] | None:
    for ri, r in enumerate(relators):
        for g in sorted(r.generators()):
            if g in alive and r.occurrences(g) == 1:
                return ri, g
    return None


def _commuting_pairs(relators: list[Word]) -> set[frozenset[int]]:
    pairs = set()
    for r in relators:
        if len(r) == 4:
            (g1, s1), (g2, s2), (g3, s3), (g4, s4) = r.letters
            if g1 == g3 and g2 == g4 and g1 != g2 and s1 == -s3 and s2 == -s4:
                pairs.add(frozenset((g1, g2)))
    return pairs


def _cancel_commuting(letters: list, pairs: set[frozenset[int]], cyclic: bool) -> list:
    """One pass of partially commutative cancellation; returns the new letter list."""
    n = len(letters)
    span = range(1, n) if not cyclic else range(1, n)
    for i in range(n):
        g, s = letters[i]
        for off in span:
            j = i + off
            if not cyclic and j >= n:
                break
            h, t = letters[j % n]
            if h == g:
                if t == -s and j % n != i:
                    if j < n:
                        return letters[:i] + letters[i + 1 : j] + letters[j + 1 :]
                    j %= n
                    return letters[j + 1 : i] + letters[i + 1 :] + letters[:j]
                break
            if frozenset((g, h)) not in pairs:
                break
    return letters


def reduce_commuting(w: Word, pairs: set[frozenset[int]], cyclic: bool = True) -> Word:
    """Shortest form of ``w`` (up to rotation when ``cyclic``) in the group where
    the given generator pairs commute."""
    cur = list(w.cyclically_reduced().letters if cyclic else w.letters)
    while True:
        nxt = _cancel_commuting(cur, pairs, cyclic)
        if len(nxt) == len(cur):
            return Word(tuple(cur))
        cur = list(Word(tuple(nxt)).cyclically_reduced().letters if cyclic else Word(tuple(nxt)).letters)


def _reduce_all(relators: list[Word]) -> list[Word] | None:
    pairs = _commuting_pairs(relators)
    if not pairs:
        return None
    changed = False
    out = []
    for r in relators:
        if len(r) == 4 and frozenset(r.generators()) in pairs:
            out.append(r)
            continue
        nr = reduce_commuting(r, pairs)
        changed |= len(nr) < len(r)
        out.append(nr)
    return _canonical_relators(out) if changed else None


def tietze_simplify(p: GroupPresentation, budget: int = 10_000, commuting: bool = False) -> TietzeResult:
    if budget <= 0:
        raise ValueError("budget must be positive")
    n = p.rank
    images = {g: Word.gen(g) for g in range(n)}
    alive = list(range(n))
    relators = _canonical_relators(p.relators)
    steps = 0
    exhausted = False
    while True:
        if commuting:
            reduced = _reduce_all(relators)
            if reduced is not None:
                if steps >= budget:
                    exhausted = True
                    break
                relators = reduced
                steps += 1
                continue
        found = _find_elimination(relators, alive)
        if found is None:
            break
        if steps >= budget:
            exhausted = True
            break
        ri, g = found
        value = _solve_for(relators[ri], g)
        sub = {g: value}
        relators = _canonical_relators(r.substitute(sub) for k, r in enumerate(relators) if k != ri)
        images = {h: w.substitute(sub) for h, w in images.items()}
        alive.remove(g)
        steps += 1

    reindex = {g: i for i, g in enumerate(alive)}
    gens = tuple(p.generators[g] for g in alive)
    out = GroupPresentation(gens, tuple(r.reindex(reindex) for r in relators))
    imgs = tuple(images[g].reindex(reindex) for g in range(n))
    return TietzeResult(out, exhausted, steps, imgs)


def eliminate(p: GroupPresentation, gen: int, relator_index: int) -> GroupPresentation:
    """Single Tietze move: remove ``gen`` using the given relator, in which it
    must occur exactly once."""
    r = p.relators[relator_index]
    if r.occurrences(gen) != 1:
        raise ValueError(f"generator {p.generators[gen]!r} does not occur exactly once in the relator")
    sub = {gen: _solve_for(r, gen)}
    keep = [g for g in range(p.rank) if g != gen]
    reindex = {g: i for i, g in enumerate(keep)}
    rels = tuple(w.substitute(sub).reindex(reindex) for k, w in enumerate(p.relators) if k != relator_index)
    return GroupPresentation(tuple(p.generators[g] for g in keep), rels)
