"""Minimal manifolds with b+ = 1, small c1^2 and group Z_p x Z_q."""

from __future__ import annotations

from math import gcd

from ..catalog import Catalog, load_catalog
from ..cosets import EnumBudget, certify_product_of_cyclics
from ..linalg import abelian_invariants, invariant_factor_form
from ..manifold import EmbeddedSurfaceData, Minimality, fiber_sum, luttinger_sequence
from ..presentation import GroupPresentation, quotient_by
from ..tietze import tietze_simplify
from ..words import Word, commutator
from .dossier import Claim, ConstructionDossier, claim, standard_claims

_X, _Y = Word.gen(0), Word.gen(1)


def solve_gluing(p: int, q: int) -> tuple[int, int]:
    """``(a, d)`` with ``d p - 2 a q = p q - 1``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, 2 * q) != 1:
        raise ValueError(f"gcd({p}, {2 * q}) != 1")
    d = (p * q - 1) * pow(p, -1, 2 * q) % (2 * q)
    a, r = divmod(d * p - (p * q - 1), 2 * q)
    if r:
        raise AssertionError("no solution despite coprimality")
    return a, d


def _det(a: int, b: int, c: int, d: int) -> int:
    return a * d - b * c


def gluing_words(p: int, q: int, a: int, d: int) -> tuple[Word, ...]:
    """Images of ``a1, b1, c1, d1`` in the complement ``<x, y | [x, y]>``."""
    return (
        _X ** (-2 * a) * _Y**-1,
        _X ** (-2 * (a * d - 1)) * _Y**-d,
        _X ** (2 * a + p) * _Y,
        _X ** (2 * a * d - 2) * _Y ** (d - q),
    )


def stated_presentation(p: int, q: int, a: int, d: int) -> GroupPresentation:
    """The four-generator presentation: everything commutes, ``x x' = y y' = 1``
    and the two gluing relators."""
    x, y, xp, yp = (Word.gen(i) for i in range(4))
    gens = (x, y, xp, yp)
    rels = [commutator(u, v) for i, u in enumerate(gens) for v in gens[i + 1 :]]
    rels += [x * xp, y * yp]
    rels.append(x ** (-2 * a) * y**-1 * x ** (2 * a + p) * y)
    rels.append(x ** (2 - 2 * a * d) * y**-d * x ** (2 * a * d - 2) * y ** (d - q))
    return GroupPresentation(("x", "y", "x'", "y'"), tuple(rels))


def _block_checks(block, e, sigma, c1sq, b_plus, note=""):
    return [
        claim("euler_signature", (block.e, block.sigma) == (e, sigma), f"(e, sigma) = ({block.e}, {block.sigma}){note}"),
        claim("c1sq", block.c1sq == c1sq, f"c1^2 = {block.c1sq}"),
        claim("b_plus", block.b_plus == b_plus, f"b+ = {block.b_plus}"),
    ]


def build_Xpq_c1(p: int, q: int, catalog: Catalog | None = None) -> ConstructionDossier:
    a, d = solve_gluing(p, q)
    cat = catalog or load_catalog()
    x1, x2 = cat["T2xS2#4CP2bar"], cat["T2xS2#3CP2bar"]
    block = fiber_sum(
        (x1.block, x1.surfaces["sigma2"]),
        (x2.block, x2.surfaces["sigma2"]),
        gluing=gluing_words(p, q, a, d),
        label=f"X_{{{p},{q}}} (c1^2 = 1)",
        minimal=Minimality("yes", "Usher"),
        kodaira="1",
    )
    stated = stated_presentation(p, q, a, d)
    r1, r2 = stated.relators[-2:]
    sums = [(r.exponent_sum(0), r.exponent_sum(1)) for r in (r1, r2)]
    budget = EnumBudget(max_cosets=max(1000, 4 * p * q))
    simplified = tietze_simplify(block.pi1).presentation
    claims = [
        claim("gluing_symplectic", _det(a, 1, a * d - 1, d) == _det(2 * a + p, 1, 2 * a * d - 2, d - q) == 1, f"(a, d) = ({a}, {d})"),
        claim("abelianized_relators", sums == [(p, 0), (0, -q)], f"exponent sums {sums}"),
        claim("pi1_product_of_cyclics", certify_product_of_cyclics(simplified, p, q, budget), f"Z_{p} x Z_{q}"),
        claim("stated_presentation_agrees", abelian_invariants(stated) == invariant_factor_form([p, q]), str(abelian_invariants(stated))),
        *_block_checks(block, 11, -7, 1, 1),
        claim("minimal", block.minimal.state == "yes", block.minimal.provenance),
    ]
    claims += standard_claims(block)
    data = {"a": a, "d": d, "pi1_order": p * q, "simplified_pi1": str(simplified), "stated_pi1": str(stated)}
    return ConstructionDossier("xpq1", block, tuple(claims), data)


TORUS_TORUS, TORUS_Z = "TorusTorus", "TorusZ"


def build_Xpq_c23(h: int, p: int, q: int = 0, mode: str = TORUS_TORUS, catalog: Catalog | None = None) -> ConstructionDossier:
    if h not in (2, 3):
        raise ValueError("h must be 2 or 3")
    if mode == TORUS_TORUS and (p < 1 or q < 1):
        raise ValueError("both surgeries need p, q >= 1")
    if mode == TORUS_Z and p < 0:
        raise ValueError("p must be non-negative")
    if mode not in (TORUS_TORUS, TORUS_Z):
        raise ValueError(f"unknown mode {mode!r}")
    cat = catalog or load_catalog()
    t4 = cat["T4#2CP2bar"]
    t1, t2 = t4.tori["a'xc'"], t4.tori["b'xc''"]
    if mode == TORUS_TORUS:
        y = luttinger_sequence(t4.block, t1.complement, [(t1.parallel, t1.meridian), (t2.parallel, t2.meridian)], [-p, -q])
    else:
        comp = quotient_by(t1.complement, [t2.meridian])
        y = luttinger_sequence(t4.block, comp, [(t1.parallel, t1.meridian)], [-p])
    base = t4.surfaces["sigma2_hat"]
    surface = EmbeddedSurfaceData(2, 0, y.pi1, base.images, base.meridian)
    if h == 2:
        other = cat["T2xS2#4CP2bar"]
        gluing = None
    else:
        other = cat["T2xS2#3CP2bar"]
        # handle swap so that a, b, c, d go to x, y, x^-2, y^-1
        img = other.surfaces["sigma2"].images
        gluing = (img[2], img[3], img[0], img[1])
    block = fiber_sum(
        (y, surface),
        (other.block, other.surfaces["sigma2"]),
        gluing=gluing,
        label=f"X_{{{p},{q}}} (c1^2 = {h}, {mode})",
        minimal=Minimality("yes", "Usher"),
        kodaira="1",
    )
    simplified = tietze_simplify(block.pi1).presentation
    e, sigma = (10, -6) if h == 2 else (9, -5)
    note = "" if h == 2 else ", derived from c1^2 = 3 and chi_h = 1"
    data = {"simplified_pi1": str(simplified), "mode": mode}
    if mode == TORUS_TORUS:
        budget = EnumBudget(max_cosets=max(1000, 4 * p * q))
        claims = [claim("pi1_product_of_cyclics", certify_product_of_cyclics(simplified, p, q, budget), f"Z_{p} x Z_{q}")]
        claims += _block_checks(block, e, sigma, h, 1, note)
        data["pi1_order"] = p * q
    else:
        want = invariant_factor_form([0, p])
        claims = [claim("abelian_invariants", block.h1 == want, f"H1 = {block.h1}")]
        # a 0-surgery leaves both circles free
        claims += _block_checks(block, e, sigma, h, 2 if p else 3, note)
    claims.append(claim("chi_h", block.chi_h == 1, f"chi_h = {block.chi_h}"))
    claims += standard_claims(block)
    return ConstructionDossier("xpq23", block, tuple(claims), data)
