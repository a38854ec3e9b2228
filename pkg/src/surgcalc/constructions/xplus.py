"""Manifolds with rational first homology of a given group and c1^2 = 8k' - 1.

``Y_n`` is ``Sigma_2 x Sigma_n`` after 2n + 4 Luttinger surgeries; it is
summed with Z''(1,1) along ``Sigma_2 x pt``.  Relators of G live on the
handles ``d_3 .. d_{k+2}``; bridges are added as extra handles after those.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from ..catalog import Catalog, load_catalog
from ..linalg import abelian_invariants, is_dual_finite_torsion
from ..manifold import EmbeddedSurfaceData, ManifoldBlock, Minimality, fiber_sum
from ..presentation import GroupPresentation, exponent_matrix, quotient_by
from ..tietze import _commuting_pairs, reduce_commuting, tietze_simplify
from ..words import Word, commutator, word_product
from .bridges import bridge_moves
from .dossier import Claim, ConstructionDossier, UNCHECKED, claim, standard_claims


class _Yn:
    """Generator layout ``a1, b1, a2, b2, c1..cn, d1..dn``."""

    def __init__(self, n: int):
        self.n = n
        self.names = ("a1", "b1", "a2", "b2") + tuple(f"c{j}" for j in range(1, n + 1)) + tuple(f"d{j}" for j in range(1, n + 1))

    def a(self, i: int) -> Word:
        return Word.gen(2 * (i - 1))

    def b(self, i: int) -> Word:
        return Word.gen(2 * (i - 1) + 1)

    def c(self, j: int) -> Word:
        return Word.gen(3 + j)

    def d(self, j: int) -> Word:
        return Word.gen(3 + self.n + j)


def yn_relators(n: int, p: Sequence[int], q: Sequence[int], duals: dict[int, Word] | None = None):
    """Relators of the complement of ``Sigma_2 x pt`` in ``Y_n`` and its meridian.

    ``duals[j]`` replaces ``d_j^{q_j}`` on the right of ``[a2^-1, c_j^-1]``
    for ``j >= 3``; that is where bridge and relator surgeries show up.
    """
    if n < 2 or len(p) != n or len(q) != n:
        raise ValueError("need n >= 2 and n coefficients in each of p, q")
    y = _Yn(n)
    a, b, c, d = y.a, y.b, y.c, y.d
    duals = duals or {}
    rels = [
        commutator(b(1).inverse(), d(1).inverse()) * a(1).inverse(),
        commutator(a(1).inverse(), d(1)) * b(1).inverse(),
        commutator(b(2).inverse(), d(2).inverse()) * a(2).inverse(),
        commutator(a(2).inverse(), d(2)) * b(2).inverse(),
        commutator(d(1).inverse(), b(2).inverse()) * c(1) ** -p[0],
        commutator(c(1).inverse(), b(2)) * d(1) ** -q[0],
        commutator(d(2).inverse(), b(1).inverse()) * c(2) ** -p[1],
        commutator(c(2).inverse(), b(1)) * d(2) ** -q[1],
        commutator(a(1), c(1)),
        commutator(a(1), c(2)),
        commutator(a(1), d(2)),
        commutator(b(1), c(1)),
        commutator(a(2), c(1)),
        commutator(a(2), c(2)),
        commutator(a(2), d(1)),
        commutator(b(2), c(2)),
        commutator(a(1), b(1)) * commutator(a(2), b(2)),
    ]
    for j in range(3, n + 1):
        rels.append(commutator(a(1).inverse(), d(j).inverse()) * c(j) ** -p[j - 1])
        rhs = duals.get(j, d(j) ** q[j - 1])
        rels.append(commutator(a(2).inverse(), c(j).inverse()) * rhs.inverse())
        rels += [commutator(b(1), c(j)), commutator(b(2), d(j))]
    meridian = word_product(commutator(c(j), d(j)) for j in range(1, n + 1))
    return y, GroupPresentation(y.names, tuple(rels)), meridian


def _zpp(catalog: Catalog | None):
    entry = (catalog or load_catalog())["Z''(1,1)"]
    return entry.block, entry.surfaces["sigma2_bar"]


def _kill_symbolic(block: ManifoldBlock) -> tuple[ManifoldBlock, Claim]:
    """Kill ``g1`` once ``[alpha3, alpha4]`` is certified trivial."""
    names = block.pi1.generators
    res = tietze_simplify(block.pi1, commuting=True)
    i3, i4, ig = names.index("alpha3"), names.index("alpha4"), names.index("g1")
    w = commutator(res.images[i3], res.images[i4])
    w = reduce_commuting(w, _commuting_pairs(list(res.presentation.relators)), cyclic=True)
    if w:
        return block, Claim("symbolic_generators_killed", UNCHECKED, "[alpha3, alpha4] not certified trivial; g1 kept")
    pi1 = quotient_by(block.pi1, [Word.gen(ig)])
    return replace(block, pi1=pi1), claim("symbolic_generators_killed", True, "[alpha3, alpha4] reduces to the identity, so g1 dies")


def build_XplusG(G: GroupPresentation, catalog: Catalog | None = None) -> ConstructionDossier:
    k = G.rank
    m = len(G.relators)
    plan = bridge_moves(list(G.relators), k) if m else None
    n = (plan.total_genus if plan else k) + 2
    y = _Yn(n)
    # x_i lives on handle i + 2, bridge g of the plan on handle g + 2
    gammas = [word_product(y.d(g + 3) ** s for g, s in l.letters) for l in G.relators]
    gprimes = [gm * word_product(y.d(g + 2) for g in r.indices) for gm, r in zip(gammas, plan.relators)] if plan else []
    duals: dict[int, Word] = {}
    M = exponent_matrix(G)
    if m:
        for i in range(1, k + 1):
            duals[i + 2] = word_product(gprimes[j] ** M[i - 1][j] for j in range(m))
        for g in range(k + 1, plan.total_genus + 1):
            duals[g + 2] = gprimes[plan.owner(g)] * y.d(g + 2) ** ((-1) ** plan.c(g))
    p = (1,) * n
    q = (1, 1) + (0,) * (n - 2)
    y, comp, meridian = yn_relators(n, p, q, duals)
    closed = GroupPresentation(comp.generators, comp.relators + (meridian,))
    yb = ManifoldBlock(f"Y+({G})", 4 * n - 4, 0, closed, Minimality("yes", "Luttinger surgery preserves minimality"), "1")
    sigma2 = EmbeddedSurfaceData(2, 0, comp, (y.a(1), y.b(1), y.a(2), y.b(2)), meridian)
    block = fiber_sum((yb, sigma2), _zpp(catalog), label=f"X+({G})", minimal=Minimality("yes", "Usher"), kodaira="1")
    block, kill = _kill_symbolic(block)

    claims = [claim("hypothesis_dual_finite_torsion", is_dual_finite_torsion(G), "exponent matrix rank equals the relator count")]
    claims.append(claim("euler_signature", (block.e, block.sigma) == (4 * n + 1, -1), f"(e, sigma) = ({block.e}, {block.sigma}), k' = {n}"))
    claims.append(claim("c1sq_chi_h", (block.c1sq, block.chi_h) == (8 * n - 1, n), f"c1^2 = {block.c1sq}, chi_h = {block.chi_h}"))
    claims.append(kill)
    res = tietze_simplify(block.pi1, commuting=True)
    simplified = res.presentation
    b1G = abelian_invariants(G).free_rank
    claims.append(claim("rational_h1", block.b1 == b1G, f"b1 = {block.b1}, b1(G) = {b1G}"))
    if m == 0:
        ok = not simplified.relators and simplified.rank == k
        claims.append(claim("free_pi1", ok, f"simplified: {simplified}"))
    claims += standard_claims(block)
    data = {
        "k_prime": n,
        "bridge_plan": plan.to_json() if plan else None,
        "simplified_pi1": str(simplified),
    }
    return ConstructionDossier("xG-plus", block, tuple(claims), data)
