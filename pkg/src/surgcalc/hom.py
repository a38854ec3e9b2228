"""Homomorphisms between presentations and certificates that they are well defined."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .cosets import EnumBudget, enumerate_cosets, word_is_trivial
from .linalg import lattice_contains
from .presentation import GroupPresentation, exponent_matrix
from .words import Word, canonical_relator, free_reduce


@dataclass(frozen=True)
class GroupHom:
    source: GroupPresentation
    target: GroupPresentation
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise ValueError(f"need {self.source.rank} images, got {len(self.images)}")
        for w in self.images:
            if any(g >= self.target.rank for g in w.generators()):
                raise ValueError("image uses a generator outside the target")

    def apply(self, w: Word) -> Word:
        out = []
        for g, s in w.letters:
            img = self.images[g] if s > 0 else self.images[g].inverse()
            out.extend(img.letters)
        return Word(tuple(out))


class HomStatus(Enum):
    CERTIFIED = "certified"
    ABELIAN_ONLY = "abelian_only"
    FAILED = "failed"


@dataclass(frozen=True)
class HomCheck:
    status: HomStatus
    evidence: str


def _peel_relators(w: Word, target: GroupPresentation, max_rounds: int = 10_000) -> bool:
    """Delete cyclic occurrences of relators (or inverses) until nothing is left.

    Each deletion removes a conjugate of a relator from a cyclic word, so
    reaching the empty word proves ``w`` trivial.
    """
    pieces = set()
    for r in target.relators:
        for v in (r, r.inverse()):
            for rot in v.rotations():
                pieces.add(rot.letters)
    lengths = sorted({len(p) for p in pieces}, reverse=True)
    cur = w.cyclically_reduced().letters
    for _ in range(max_rounds):
        if not cur:
            return True
        n = len(cur)
        hit = None
        for ln in lengths:
            if ln > n:
                continue
            doubled = cur + cur
            for i in range(n):
                if doubled[i : i + ln] in pieces:
                    hit = (i, ln)
                    break
            if hit:
                break
        if hit is None:
            return False
        i, ln = hit
        rotated = cur[i:] + cur[:i]
        cur = Word(free_reduce(rotated[ln:])).cyclically_reduced().letters
    return False


def check_hom(h: GroupHom, budget: EnumBudget | None = None) -> HomCheck:
    """Three-valued check that ``h`` sends every source relator to the identity."""
    images = [h.apply(r) for r in h.source.relators]
    target = h.target
    m = exponent_matrix(target)
    for k, w in enumerate(images):
        v = [w.exponent_sum(g) for g in range(target.rank)]
        if not lattice_contains(m, v):
            return HomCheck(HomStatus.FAILED, f"relator {k} has nonzero image in the abelianization")

    relset = target.relator_set()
    pending = []
    for k, w in enumerate(images):
        if not w or canonical_relator(w) in relset or _peel_relators(w, target):
            continue
        pending.append((k, w))
    if not pending:
        return HomCheck(HomStatus.CERTIFIED, "every relator image reduces to the identity by relator deletion")

    out = enumerate_cosets(target, budget)
    if out.finite:
        bad = [k for k, w in pending if not word_is_trivial(out, w)]
        if bad:
            return HomCheck(HomStatus.ABELIAN_ONLY, f"relator images {bad} are nontrivial in the target (order {out.order})")
        return HomCheck(HomStatus.CERTIFIED, f"remaining relator images traced in the regular coset table (order {out.order})")
    return HomCheck(HomStatus.ABELIAN_ONLY, "abelianized images vanish; enumeration exceeded its budget")
