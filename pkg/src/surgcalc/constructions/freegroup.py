"""Luttinger surgeries on Sigma_g x T^2 and their sums with E(1)."""

from __future__ import annotations

from dataclasses import replace
from typing import NamedTuple, Sequence

from ..catalog import Catalog, load_catalog, sigma_g_times_t2
from ..cosets import EnumBudget, enumerate_cosets
from ..linalg import invariant_factor_form
from ..manifold import EmbeddedSurfaceData, ManifoldBlock, Minimality, fiber_sum, luttinger_sequence
from ..presentation import GroupPresentation
from ..tietze import tietze_simplify
from ..words import Word, commutator, word_product
from .dossier import Claim, ConstructionDossier, claim, standard_claims, UNCHECKED


class BlockWithSurface(NamedTuple):
    block: ManifoldBlock
    surface: EmbeddedSurfaceData


def _check_params(g: int, p: Sequence[int], q: Sequence[int]) -> None:
    if g < 1:
        raise ValueError("g must be at least 1")
    if len(p) != g or len(q) != g:
        raise ValueError(f"need {g} values of p and of q")
    if any(x < 0 for x in (*p, *q)):
        raise ValueError("surgery parameters must be nonnegative")


def build_Yg(g: int, p: Sequence[int], q: Sequence[int]) -> BlockWithSurface:
    """2g Luttinger surgeries on ``Sigma_g x T^2``.

    Generators ``a1..ag, b1..bg, c, d``.  The torus ``a_i' x c'`` gets
    ``[b_i^-1, d^-1] = a_i^p_i`` and ``b_i' x c''`` gets ``[a_i^-1, d] = b_i^q_i``.
    Also returns the torus ``pt x T^2`` with its complement, whose meridian is
    the surface relator.
    """
    _check_params(g, p, q)
    closed = sigma_g_times_t2(g)
    a = [Word.gen(i) for i in range(g)]
    b = [Word.gen(g + i) for i in range(g)]
    c, d = Word.gen(2 * g), Word.gen(2 * g + 1)
    surface_rel = word_product(commutator(a[i], b[i]) for i in range(g))
    keep = [surface_rel]
    for i in range(g):
        keep += [commutator(a[i], c), commutator(b[i], c)]
    keep.append(commutator(c, d))
    complement = GroupPresentation(closed.generators, tuple(keep))
    tori, coeffs = [], []
    for i in range(g):
        tori.append((a[i], commutator(b[i].inverse(), d.inverse())))
        coeffs.append(-p[i])
        tori.append((b[i], commutator(a[i].inverse(), d)))
        coeffs.append(-q[i])
    start = ManifoldBlock(f"Sigma{g}xT2", 0, 0, closed, Minimality("yes", "product"), "0" if g == 1 else "1")
    label = f"Y_{g}(p={tuple(p)}, q={tuple(q)})"
    block = luttinger_sequence(start, complement, tori, coeffs, label)
    block = replace(block, minimal=Minimality("yes", "Luttinger surgery preserves minimality"))

    relations = [mu * lam**m for (lam, mu), m in zip(tori, coeffs)]
    torus_comp = GroupPresentation(closed.generators, tuple(keep[1:]) + tuple(relations))
    torus = EmbeddedSurfaceData(1, 0, torus_comp, (c, d), surface_rel)
    return BlockWithSurface(block, torus)


def _e1(catalog: Catalog | None) -> tuple[ManifoldBlock, EmbeddedSurfaceData]:
    entry = (catalog or load_catalog())["E(1)"]
    return entry.block, entry.surfaces["fiber"]


def build_Xg(g: int, p: Sequence[int], q: Sequence[int], catalog: Catalog | None = None) -> ConstructionDossier:
    yg, torus = build_Yg(g, p, q)
    e1 = _e1(catalog)
    block = fiber_sum(
        (yg, torus),
        e1,
        label=f"X_{g}(p={tuple(p)}, q={tuple(q)})",
        minimal=Minimality("yes", "Usher"),
        kodaira="1",
    )
    simplified = tietze_simplify(block.pi1)
    pres = simplified.presentation
    claims = [
        claim("euler_signature", (block.e, block.sigma) == (12, -8), f"(e, sigma) = ({block.e}, {block.sigma})"),
        claim("c1sq_zero", block.c1sq == 0, f"c1^2 = {block.c1sq}"),
    ]
    data = {"simplified_pi1": str(pres)}
    ones = all(x == 1 for x in (*p, *q))
    if ones:
        out = enumerate_cosets(pres, EnumBudget(max_cosets=1000))
        claims.append(claim("trivial_pi1", out.finite and out.order == 1, f"enumeration: {out.to_json()}"))
        data["pi1_order"] = out.order
    free_case = all(x == 1 for x in p) and all(x == 0 for x in q)
    if free_case:
        ok = pres.rank == g and not pres.relators
        claims.append(claim("free_pi1", ok, f"simplified presentation {pres}"))
        claims.append(
            claim(
                "betti_free_case",
                block.b_plus == g + 1 and block.b_minus == g + 9,
                f"b+ = {block.b_plus}, b- = {block.b_minus}",
            )
        )
    claims.append(claim("b_plus_b1", block.b_plus == block.b1 + 1 and block.b_minus == block.b1 + 9, f"b1 = {block.b1}"))
    # Z for each handle with p_i = 1, q_i = 0; Z_p for p_i = 1, q_i = p > 0 (and symmetric)
    expected = []
    predicted = True
    for pi, qi in zip(p, q):
        if pi == 1:
            expected.append(qi)
        elif qi == 1:
            expected.append(pi)
        else:
            predicted = False
    if predicted and not ones:
        inv = invariant_factor_form(expected)
        claims.append(claim("abelian_invariants", block.h1 == inv, f"H1 = {block.h1}, expected {inv}"))
        if not free_case:
            claims.append(Claim("free_product_structure", UNCHECKED, "full isomorphism type is not certified beyond H1"))
    if not free_case and pres.rank and not ones:
        out = enumerate_cosets(pres, EnumBudget(max_cosets=5000))
        data["pi1_order"] = out.order
    claims += standard_claims(block)
    return ConstructionDossier("xg", block, tuple(claims), data)
