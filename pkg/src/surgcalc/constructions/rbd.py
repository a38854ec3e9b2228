"""Cyclic fundamental groups from sewn sections and rational blowdowns.

Each recipe starts from an elliptic fibration on E(1), or on E(2) viewed as
two copies of one E(1) fibration summed along a fiber.  Groups of p
sections are sewn into spheres by the sum with T^2 x S^2 along a p-fold
braided torus.  Each sphere then anchors a ``C_p`` chain: the sphere itself,
then necklace components.  The chain is blown down once its meridian is
certified trivial, either by a dual necklace sphere or by matching spheres
built from fishtail vanishing cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..catalog import Catalog, Fibration, intersection, load_catalog
from ..cosets import EnumBudget, enumerate_cosets
from ..linalg import invariant_factor_form
from ..manifold import TrivialInComplement, blow_up, rational_blowdown, sum_spheres
from .dossier import ConstructionDossier, claim, standard_claims


class Comp(NamedTuple):
    """Necklace component ``index`` of the fibration in copy ``copy``."""

    copy: int
    index: int


@dataclass(frozen=True)
class Blowdown:
    group: int
    chain: tuple[Comp, ...] = ()
    dual: Comp | None = None  # None means matching spheres

    @property
    def p(self) -> int:
        return len(self.chain) + 2


@dataclass(frozen=True)
class Recipe:
    name: str
    copies: int
    fibration: str
    groups: tuple[tuple[int, ...], ...]
    blowdowns: tuple[Blowdown, ...]
    blowups: tuple[int, ...] = ()
    # (e, sigma, c1^2, b+, |pi1|)
    expected: tuple[int, int, int, int, int] = (0, 0, 0, 0, 0)


def _c(*idx: int, copy: int = 0) -> tuple[Comp, ...]:
    return tuple(Comp(copy, i) for i in idx)


RECIPES = {
    r.name: r
    for r in (
        Recipe("z5_c2", 1, "construction_2", ((0, 1, 2, 3, 4),), (Blowdown(0, _c(3), Comp(0, 2)),), expected=(10, -6, 2, 1, 5)),
        Recipe("z4_c1_a", 1, "construction_2", ((0, 1, 2, 3),), (Blowdown(0, (), Comp(0, 3)),), expected=(11, -7, 1, 1, 4)),
        Recipe("z4_c1_b", 1, "construction_2", ((0, 1, 2, 3),), (Blowdown(0, _c(3), Comp(0, 2)),), (1,), (11, -7, 1, 1, 4)),
        Recipe("z4_c1_c", 1, "construction_2", ((0, 1, 2, 3),), (Blowdown(0, _c(3, 2), Comp(0, 1)),), (2,), (11, -7, 1, 1, 4)),
        Recipe("z4_c2", 1, "generic", ((0, 1, 2, 3), (4, 5, 6, 7)), (Blowdown(0), Blowdown(1)), expected=(10, -6, 2, 1, 4)),
        Recipe("z4_c1_single", 1, "generic", ((0, 1, 2, 3), (4, 5, 6, 7)), (Blowdown(0),), expected=(11, -7, 1, 1, 4)),
        Recipe("z6_c3", 1, "i4_six_sections", ((0, 1, 2, 3, 4, 5),), (Blowdown(0, _c(0, 1), Comp(0, 2)),), expected=(9, -5, 3, 1, 6)),
        Recipe(
            "z2_c3_b3",
            2,
            "i6_two_i2",
            ((0, 1), (2, 3), (4, 5)),
            (Blowdown(0, (), Comp(0, 0)), Blowdown(1, (), Comp(0, 2)), Blowdown(2, (), Comp(0, 4))),
            expected=(21, -13, 3, 3, 2),
        ),
        Recipe("z3_c3_b3", 2, "i6_two_i2", ((0, 1, 2),), (Blowdown(0, _c(2, 3), Comp(0, 4)),), expected=(21, -13, 3, 3, 3)),
        Recipe(
            "z2_c4_b3",
            2,
            "generic",
            ((0, 1), (2, 3), (4, 5), (6, 7)),
            tuple(Blowdown(i) for i in range(4)),
            expected=(20, -12, 4, 3, 2),
        ),
    )
}

Z4_C1_VARIANTS = ("z4_c1_a", "z4_c1_b", "z4_c1_c")


class _Lattice:
    """Classes of ``copies`` summed copies of one rational elliptic surface."""

    def __init__(self, classes, fib: Fibration, copies: int):
        self.classes, self.fib, self.copies = classes, fib, copies

    def _embed(self, v, copy):
        out = [0] * (10 * self.copies)
        out[10 * copy : 10 * copy + 10] = v
        return tuple(out)

    def comp(self, c: Comp):
        if not 0 <= c.copy < self.copies or not 0 <= c.index < len(self.fib.necklace):
            raise ValueError(f"no necklace component {c}")
        return self._embed(self.classes[self.fib.necklace[c.index]], c.copy)

    def section(self, i: int):
        s = self.classes[self.fib.sections[i]]
        out = [0] * (10 * self.copies)
        for k in range(self.copies):
            out[10 * k : 10 * k + 10] = s
        return tuple(out)

    def dot(self, u, v) -> int:
        return sum(intersection(u[10 * k : 10 * k + 10], v[10 * k : 10 * k + 10]) for k in range(self.copies))


def _vsum(vs):
    return tuple(map(sum, zip(*vs)))


def _check_chain(lat: _Lattice, sphere, square: int, bd: Blowdown, others) -> list[str]:
    """Integer checks for one ``C_p`` chain and its dual sphere; returns failures."""
    errs = []
    if square != -(bd.p + 2):
        errs.append(f"sewn sphere has square {square}, C{bd.p} needs {-(bd.p + 2)}")
    chain = [sphere] + [lat.comp(c) for c in bd.chain]
    for i, u in enumerate(chain):
        for j in range(i + 1, len(chain)):
            want = 1 if j == i + 1 else 0
            if lat.dot(u, chain[j]) != want:
                errs.append(f"chain spheres {i} and {j} meet {lat.dot(u, chain[j])} times, expected {want}")
    if bd.dual is not None:
        d = lat.comp(bd.dual)
        if lat.dot(d, chain[-1]) != 1:
            errs.append(f"dual sphere meets the chain end {lat.dot(d, chain[-1])} times")
        for u in chain[:-1] + list(others):
            if lat.dot(d, u):
                errs.append("dual sphere meets another sphere of the configuration")
                break
    return errs


def _replay(recipe: Recipe, catalog: Catalog | None = None):
    cat = catalog or load_catalog()
    fibs = {f.name: f for f in cat["E(1)"].fibrations}
    if recipe.fibration not in fibs:
        raise ValueError(f"unknown fibration {recipe.fibration!r}")
    fib = fibs[recipe.fibration]
    lat = _Lattice(cat["E(1)"].classes, fib, recipe.copies)
    used = [i for g in recipe.groups for i in g]
    if len(set(used)) != len(used) or any(not 0 <= i < len(fib.sections) for i in used):
        raise ValueError(f"recipe needs {len(used)} distinct sections; the fibration has {len(fib.sections)}")
    sizes = {len(g) for g in recipe.groups}
    if len(sizes) != 1:
        raise ValueError("all section groups must have the same size")
    p = sizes.pop()
    fishtails = fib.fishtails * recipe.copies
    matching = sum(1 for b in recipe.blowdowns if b.dual is None)
    if matching and len(recipe.groups) > fishtails // 2:
        raise ValueError(f"{len(recipe.groups)} matching spheres requested but only {fishtails // 2} fishtails share a vanishing class")

    block = cat[f"E({recipe.copies})"].block
    squares = [lat.dot(lat.section(i), lat.section(i)) for i in used]
    block = sum_spheres(block, p, squares, label=f"{block.label} sewn (p={p})")
    start = block
    for g, n in enumerate(recipe.blowups):
        for _ in range(n):
            block = blow_up(block, on_sphere=g)
    spheres = [_vsum(lat.section(i) for i in g) for g in recipe.groups]
    chain_spheres = [lat.comp(c) for b in recipe.blowdowns for c in b.chain]

    errs: list[str] = []
    for bd in recipe.blowdowns:
        if not 0 <= bd.group < len(recipe.groups):
            raise ValueError(f"no section group {bd.group}")
        others = [s for k, s in enumerate(spheres) if k != bd.group] + [c for c in chain_spheres if c not in {lat.comp(x) for x in bd.chain}]
        errs += _check_chain(lat, spheres[bd.group], block.spheres[bd.group], bd, others)
    if errs:
        raise ValueError("; ".join(errs))

    evidence = []
    before = block
    for bd in recipe.blowdowns:
        if bd.dual is not None:
            cert = TrivialInComplement(f"necklace component {bd.dual.index} (copy {bd.dual.copy}) is a dual sphere")
        else:
            cert = TrivialInComplement(f"matching spheres from {len(recipe.groups)} of {fishtails // 2} fishtails with a common vanishing class")
        evidence.append(cert.evidence)
        block = rational_blowdown(block, bd.p, cert, label=f"{recipe.name}")
    return start, before, block, evidence


def _invariants(block) -> tuple[int, int, int, int, int | None]:
    out = enumerate_cosets(block.pi1, EnumBudget(max_cosets=1000))
    return (block.e, block.sigma, block.c1sq, block.b_plus, out.order)


def build_rbd_example(name: str, catalog: Catalog | None = None) -> ConstructionDossier:
    if name not in RECIPES:
        raise ValueError(f"unknown recipe {name!r}; known: {', '.join(RECIPES)}")
    recipe = RECIPES[name]
    start, before, block, evidence = _replay(recipe, catalog)
    inv = _invariants(block)
    e, sigma, c1sq, b_plus, order = recipe.expected
    delta = sum(b.p - 1 for b in recipe.blowdowns)
    claims = [
        claim("euler_signature", inv[:2] == (e, sigma), f"(e, sigma) = {inv[:2]}"),
        claim("c1sq", block.c1sq == c1sq, f"c1^2 = {block.c1sq}"),
        claim("b_plus", block.b_plus == b_plus, f"b+ = {block.b_plus}"),
        claim("pi1_cyclic", inv[4] == order and block.h1 == invariant_factor_form([order]), f"|pi1| = {inv[4]}, H1 = {block.h1}"),
        claim("c1sq_delta", block.c1sq - before.c1sq == delta, f"c1^2 rose by {block.c1sq - before.c1sq}, sum of (p - 1) = {delta}"),
        claim("chi_h_constant", start.chi_h == before.chi_h == block.chi_h, f"chi_h = {block.chi_h}"),
        claim("meridians_certified", len(evidence) == len(recipe.blowdowns), "; ".join(evidence)),
    ]
    if name in Z4_C1_VARIANTS:
        tuples = {v: _invariants(_replay(RECIPES[v], catalog)[2]) for v in Z4_C1_VARIANTS}
        claims.append(claim("z4_c1_variants_agree", len(set(tuples.values())) == 1, str(tuples)))
    claims += standard_claims(block)
    data = {
        "recipe": name,
        "sections_per_sphere": len(recipe.groups[0]),
        "blowdowns": [f"C{b.p}" for b in recipe.blowdowns],
        "pi1_order": inv[4],
        "simplified_pi1": str(block.pi1),
    }
    return ConstructionDossier("rbd", block, tuple(claims), data)
