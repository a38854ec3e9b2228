"""Manifold blocks and the surgery operations acting on them.

A block records the Euler number, signature and a presentation of the
fundamental group of a closed 4-manifold, plus declared metadata (minimality,
symplectic Kodaira dimension).  Everything else is derived.  Operations that
need the group of a complement take it as explicit gluing data, because those
presentations are geometric input rather than something computable from the
closed group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

from .cosets import EnumBudget, enumerate_cosets
from .linalg import AbelianInvariants, abelian_invariants
from .presentation import GroupPresentation, free_product_map, quotient_by
from .tietze import tietze_simplify
from .words import Word, commutator

KODAIRA_VALUES = ("-inf", "0", "1", "2", "unknown")


class ConsistencyError(RuntimeError):
    """Gluing data produced invariants that the operation's rules forbid."""


@dataclass(frozen=True)
class Minimality:
    state: str  # "yes", "no" or "unknown"
    provenance: str = ""

    def __post_init__(self):
        if self.state not in ("yes", "no", "unknown"):
            raise ValueError(f"bad minimality state {self.state!r}")

    def __str__(self) -> str:
        return f"yes ({self.provenance})" if self.state == "yes" and self.provenance else self.state


NOT_MINIMAL = Minimality("no")
MINIMAL_UNKNOWN = Minimality("unknown")


@dataclass(frozen=True)
class ManifoldBlock:
    label: str
    e: int
    sigma: int
    pi1: GroupPresentation
    minimal: Minimality = MINIMAL_UNKNOWN
    kodaira: str = "unknown"
    # self-intersections of embedded spheres recorded for later blowdowns
    spheres: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kodaira not in KODAIRA_VALUES:
            raise ValueError(f"bad Kodaira dimension {self.kodaira!r}")

    @cached_property
    def h1(self) -> AbelianInvariants:
        return abelian_invariants(self.pi1)

    @property
    def b1(self) -> int:
        return self.h1.free_rank

    @property
    def b2(self) -> int:
        return self.e - 2 + 2 * self.b1

    @property
    def b_plus(self) -> int:
        return (self.b2 + self.sigma) // 2

    @property
    def b_minus(self) -> int:
        return (self.b2 - self.sigma) // 2

    @property
    def c1sq(self) -> int:
        return 2 * self.e + 3 * self.sigma

    @property
    def chi_h(self) -> int:
        if (self.e + self.sigma) % 4:
            raise ConsistencyError(f"{self.label}: e + sigma = {self.e + self.sigma} is not divisible by 4")
        return (self.e + self.sigma) // 4

    def well_formed(self) -> bool:
        """Betti numbers are nonnegative integers and both formulas for chi_h agree."""
        b2 = self.b2
        if b2 < 0 or (b2 + self.sigma) % 2 or self.b_plus < 0 or self.b_minus < 0:
            return False
        if (self.e + self.sigma) % 4:
            return False
        return 2 * self.chi_h == self.b_plus - self.b1 + 1

    def summary(self) -> dict:
        return {
            "label": self.label,
            "e": self.e,
            "sigma": self.sigma,
            "c1sq": self.c1sq,
            "chi_h": self.chi_h if (self.e + self.sigma) % 4 == 0 else None,
            "b1": self.b1,
            "b2": self.b2,
            "b_plus": self.b_plus,
            "b_minus": self.b_minus,
            "h1": str(self.h1),
            "minimal": str(self.minimal),
            "kodaira": self.kodaira,
        }


@dataclass(frozen=True)
class EmbeddedSurfaceData:
    genus: int
    self_int: int
    complement: GroupPresentation
    images: tuple[Word, ...]
    meridian: Word = field(default_factory=Word)

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("negative genus")
        if len(self.images) != 2 * self.genus:
            raise ValueError(f"genus {self.genus} surface needs {2 * self.genus} images, got {len(self.images)}")
        for w in (*self.images, self.meridian):
            if any(g >= self.complement.rank for g in w.generators()):
                raise ValueError("surface word uses a generator outside the complement presentation")


@dataclass(frozen=True)
class LagrangianTorusData:
    complement: GroupPresentation
    parallel: Word
    meridian: Word
    label: str = ""

    def __post_init__(self):
        for w in (self.parallel, self.meridian):
            if any(g >= self.complement.rank for g in w.generators()):
                raise ValueError("torus word uses a generator outside the complement presentation")


@dataclass(frozen=True)
class SphereChain:
    """The plumbing ``C_p``: a chain of spheres with squares ``-(p+2), -2, ..., -2``."""

    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("C_p needs p >= 2")

    @property
    def squares(self) -> tuple[int, ...]:
        return (-(self.p + 2),) + (-2,) * (self.p - 2)

    @classmethod
    def from_squares(cls, squares: Sequence[int]) -> "SphereChain":
        p = -squares[0] - 2 if squares else 0
        chain = cls(p)
        if tuple(squares) != chain.squares:
            raise ValueError(f"{list(squares)} is not a C_p chain")
        return chain


@dataclass(frozen=True)
class TrivialInComplement:
    """Evidence that the meridian of the plumbing is nullhomotopic in its complement."""

    evidence: str

    def __post_init__(self):
        if not self.evidence:
            raise ValueError("certificate needs an evidence note")


def luttinger_surgery(block: ManifoldBlock, torus: LagrangianTorusData, m: int, label: str | None = None) -> ManifoldBlock:
    """``pi1 = pi1(complement) / <<mu lambda'^m>>``; e, sigma and metadata unchanged."""
    pi1 = quotient_by(torus.complement, [torus.meridian * torus.parallel**m])
    out = replace(block, label=label or block.label, pi1=pi1)
    if abs(out.b1 - block.b1) > 1:
        raise ConsistencyError(f"Luttinger surgery changed b1 by {out.b1 - block.b1}; gluing data is inconsistent")
    return out


def fiber_sum(
    s1: tuple[ManifoldBlock, EmbeddedSurfaceData],
    s2: tuple[ManifoldBlock, EmbeddedSurfaceData],
    gluing: Sequence[Word] | None = None,
    label: str = "",
    minimal: Minimality = MINIMAL_UNKNOWN,
    kodaira: str = "unknown",
) -> ManifoldBlock:
    """Symplectic sum along surfaces of equal genus and opposite square.

    ``gluing[i]`` is the image, in the second complement, of the i-th surface
    generator of the first surface; it defaults to the second surface's own
    inclusion images (identity gluing on standard generators).
    """
    (x1, f1), (x2, f2) = s1, s2
    if f1.genus != f2.genus:
        raise ValueError(f"genus mismatch: {f1.genus} vs {f2.genus}")
    if f1.self_int + f2.self_int != 0:
        raise ValueError(f"self-intersections {f1.self_int} and {f2.self_int} do not cancel")
    gluing = tuple(f2.images if gluing is None else gluing)
    if len(gluing) != 2 * f1.genus:
        raise ValueError(f"gluing needs {2 * f1.genus} words")
    prod, shift = free_product_map(f1.complement, f2.complement)
    rels = [img * g.reindex(shift).inverse() for img, g in zip(f1.images, gluing)]
    rels.append(f1.meridian * f2.meridian.reindex(shift))
    return ManifoldBlock(
        label=label or f"{x1.label} # {x2.label}",
        e=x1.e + x2.e + 4 * f1.genus - 4,
        sigma=x1.sigma + x2.sigma,
        pi1=quotient_by(prod, rels),
        minimal=minimal,
        kodaira=kodaira,
    )


def blow_up(block: ManifoldBlock, on_sphere: int | None = None, label: str | None = None) -> ManifoldBlock:
    """Connected sum with a reversed projective plane.

    ``on_sphere`` blows up a point of a recorded sphere, lowering its square by one.
    """
    spheres = list(block.spheres)
    if on_sphere is not None:
        spheres[on_sphere] -= 1
    return replace(
        block,
        label=label or f"{block.label} # CP2bar",
        e=block.e + 1,
        sigma=block.sigma - 1,
        minimal=NOT_MINIMAL,
        kodaira=block.kodaira,
        spheres=tuple(spheres),
    )


def rational_blowdown(
    block: ManifoldBlock,
    p: int,
    certificate: TrivialInComplement | None,
    label: str | None = None,
    minimal: Minimality = MINIMAL_UNKNOWN,
) -> ManifoldBlock:
    """Replace a ``C_p`` plumbing by a rational ball; only the trivial-meridian case is supported."""
    if p < 2:
        raise ValueError("rational blowdown needs p >= 2")
    if certificate is None:
        raise ValueError("refusing rational blowdown without a meridian-triviality certificate")
    out = replace(
        block,
        label=label or f"{block.label} (C{p} blown down)",
        e=block.e - (p - 1),
        sigma=block.sigma + (p - 1),
        minimal=minimal,
        kodaira="unknown",
    )
    if out.c1sq - block.c1sq != p - 1:
        raise ConsistencyError("c1^2 did not increase by p - 1")
    if (block.e + block.sigma) % 4 == 0 and out.chi_h != block.chi_h:
        raise ConsistencyError("chi_h changed under rational blowdown")
    if out.b_plus != block.b_plus:
        raise ConsistencyError("b+ changed under rational blowdown")
    return out


def group_is_trivial(p: GroupPresentation, budget: EnumBudget | None = None) -> bool:
    if p.rank == 0:
        return True
    simplified = tietze_simplify(p).presentation
    if simplified.rank == 0:
        return True
    out = enumerate_cosets(simplified, budget or EnumBudget(max_cosets=10_000))
    return out.finite and out.order == 1


def _braided_torus(p: int) -> EmbeddedSurfaceData:
    # complement of a p-fold braided torus in T^2 x S^2; its meridian is a
    # fresh symbol, killed by the sum with a simply connected complement
    gens = ("b", "c", "m")
    comp = GroupPresentation(gens, (commutator(Word.gen(0), Word.gen(1)),))
    return EmbeddedSurfaceData(1, 0, comp, (Word.gen(0, p), Word.gen(1)), Word.gen(2))


def sum_spheres(block: ManifoldBlock, p: int, squares: Sequence[int], label: str | None = None) -> ManifoldBlock:
    """Sum with T^2 x S^2 along a braided torus, merging sections into spheres.

    ``squares`` lists the sections' self-intersections in groups of ``p``;
    each group becomes one sphere with the summed square.  The fiber's
    complement in ``block`` must be simply connected, which holds when the
    block is.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if not squares or len(squares) % p:
        raise ValueError(f"need a positive multiple of {p} section squares, got {len(squares)}")
    if not group_is_trivial(block.pi1):
        raise ValueError("sphere sewing needs a simply connected block")
    fiber = EmbeddedSurfaceData(1, 0, GroupPresentation(), (Word(), Word()), Word())
    t2s2 = ManifoldBlock("T2xS2", 0, 0, GroupPresentation(("x", "y"), (commutator(Word.gen(0), Word.gen(1)),)))
    summed = fiber_sum((block, fiber), (t2s2, _braided_torus(p)))
    pi1 = tietze_simplify(summed.pi1).presentation
    new = tuple(sum(squares[i : i + p]) for i in range(0, len(squares), p))
    return replace(
        block,
        label=label or f"{block.label} sewn (p={p})",
        e=summed.e,
        sigma=summed.sigma,
        pi1=pi1,
        kodaira="unknown",
        minimal=MINIMAL_UNKNOWN,
        spheres=block.spheres + new,
    )


def kodaira_dimension(k_omega: str, k_square: str) -> str:
    """Symplectic Kodaira dimension from the signs of ``K.[w]`` and ``K.K`` on a minimal model."""
    signs = {"-": -1, "0": 0, "+": 1, -1: -1, 0: 0, 1: 1}
    try:
        a, b = signs[k_omega], signs[k_square]
    except KeyError as exc:
        raise ValueError(f"signs must be '-', '0' or '+': {exc}") from None
    if a < 0 or b < 0:
        return "-inf"
    if a == 0 and b == 0:
        return "0"
    if a > 0 and b == 0:
        return "1"
    if a > 0 and b > 0:
        return "2"
    raise ValueError("inconsistent sign data")


@dataclass(frozen=True)
class GeographyReport:
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def geography_check(block: ManifoldBlock) -> GeographyReport:
    """Constraints on minimal symplectic manifolds of nonnegative Kodaira dimension."""
    checks = {
        "c1sq_nonnegative": block.c1sq >= 0,
        "chi_h_integral": (block.e + block.sigma) % 4 == 0,
    }
    if block.b_plus == 1:
        checks["b_plus_1_bound"] = 4 * block.b1 + block.b_minus <= 9
        checks["b_plus_1_b1"] = block.b1 in (0, 2)
    return GeographyReport(checks)


# Gompf's values for the free group F_n
def free_group_table(n: int) -> dict:
    if n == 4:
        return {"b_plus": 11, "b2": 54}
    if n % 2:
        return {"b_plus": 2 * n + 2, "b2": 8 * n + 16}
    return {"b_plus": 2 * n + 1, "b2": 8 * n + 10}


def group_size_bounds(p: GroupPresentation) -> dict:
    k, m = p.rank, len(p.relators)
    b1 = abelian_invariants(p).free_rank
    # b+ >= 1 for symplectic manifolds, and b+ - b1 must be odd
    lower = max(1, math.ceil((4 * b1 - 4) / 5))
    if (lower - b1) % 2 == 0:
        lower += 1
    report = {
        "generators": k,
        "relators": m,
        "b1": b1,
        "lower_bound": lower,
        "gompf_upper_bound": 2 * (k + m) + b1 + 1,
        "construction_b_plus": b1 + 1,
    }
    if m == 0:
        report["free_group_table"] = free_group_table(k)
    return report


def luttinger_sequence(
    block: ManifoldBlock,
    complement: GroupPresentation,
    tori: Sequence[tuple[Word, Word]],
    coefficients: Sequence[int],
    label: str | None = None,
) -> ManifoldBlock:
    """Perform Luttinger surgeries one at a time on disjoint tori.

    ``complement`` presents the complement of all the tori; ``tori`` lists
    ``(parallel, meridian)`` pairs.  Before its surgery a torus is still
    there, which restores its meridian as a relator; afterwards the meridian
    is replaced by ``mu lambda'^m``.  Each step is checked by
    :func:`luttinger_surgery`.
    """
    if len(tori) != len(coefficients):
        raise ValueError("one coefficient per torus")
    done: list[Word] = []
    for i, ((lam, mu), m) in enumerate(zip(tori, coefficients)):
        pending = [t[1] for t in tori[i + 1 :]]
        comp = quotient_by(complement, done + pending)
        block = luttinger_surgery(block, LagrangianTorusData(comp, lam, mu), m)
        done.append(mu * lam**m)
    return replace(block, label=label or block.label)
