"""Manifolds with b+ = b1(G) + 1 and c1^2 = 0 for dual-finite-torsion groups G.

``Y(G)`` is ``Sigma_k' x T^2`` after Luttinger surgeries: the standard pair
on each of the first k handles (p = 1, q = 0), a pair on each bridge handle,
and one along each relator curve ``gamma_i'``.  Summing with E(1) along
``pt x T^2`` kills ``c`` and ``d``.
"""

from __future__ import annotations

from ..cosets import EnumBudget, enumerate_cosets
from ..hom import GroupHom, HomStatus, check_hom
from ..linalg import abelian_invariants, element_order, is_dual_finite_torsion, lattice_contains
from ..manifold import EmbeddedSurfaceData, ManifoldBlock, Minimality, fiber_sum
from ..presentation import GroupPresentation, exponent_matrix
from ..tietze import tietze_simplify
from ..words import Word, commutator, word_product
from .bridges import BridgePlan, bridge_moves
from .dossier import UNCHECKED, Claim, ConstructionDossier, claim, standard_claims
from .freegroup import _e1


class _Handles:
    """Generator layout ``a1..ak', b1..bk', c, d``."""

    def __init__(self, kp: int):
        self.kp = kp
        self.names = tuple([f"a{i}" for i in range(1, kp + 1)] + [f"b{i}" for i in range(1, kp + 1)] + ["c", "d"])

    def a(self, i: int) -> Word:
        return Word.gen(i - 1)

    def b(self, i: int) -> Word:
        return Word.gen(self.kp + i - 1)

    @property
    def c(self) -> Word:
        return Word.gen(2 * self.kp)

    @property
    def d(self) -> Word:
        return Word.gen(2 * self.kp + 1)


def _gamma(l: Word, h: _Handles) -> Word:
    return Word(tuple((h.kp + g, s) for g, s in l.letters))


def _assemble(G: GroupPresentation, k: int, plan: BridgePlan, extra_free: bool):
    """Relators of ``Y(G)`` (without the surface relator) and bookkeeping words."""
    h = _Handles(plan.total_genus)
    m = len(G.relators)
    M = exponent_matrix(G)
    gammas = [_gamma(l, h) for l in G.relators]
    gprimes = []
    for i, r in enumerate(plan.relators):
        idx = list(r.indices)
        if extra_free:
            # the first bridge carries the new free generator and stays off the curve
            idx = idx[1:]
        gprimes.append(gammas[i] * word_product(h.b(g) for g in idx))
    rels = []
    for j in range(1, h.kp + 1):
        rels += [commutator(h.a(j), h.c), commutator(h.b(j), h.c)]
    rels.append(commutator(h.c, h.d))
    for i in range(1, k + 1):
        rels.append(commutator(h.b(i).inverse(), h.d.inverse()) * h.a(i).inverse())
        P = word_product(gprimes[j] ** M[i - 1][j] for j in range(m))
        rels.append(commutator(h.a(i).inverse(), h.d) * P.inverse())
    for g in range(k + 1, h.kp + 1):
        rels.append(commutator(h.b(g).inverse(), h.d.inverse()) * h.a(g).inverse())
        owner = plan.owner(g)
        if extra_free and g == plan.relators[owner].first:
            rhs = gprimes[owner]
        else:
            rhs = gprimes[owner] * h.b(g) ** ((-1) ** plan.c(g))
        rels.append(commutator(h.a(g).inverse(), h.d) * rhs.inverse())
    surface = word_product(commutator(h.a(j), h.b(j)) for j in range(1, h.kp + 1))
    return h, rels, surface, gammas, gprimes


def _build(G: GroupPresentation, k: int, name: str, extra_free: bool, catalog=None):
    relators = list(G.relators)
    plan = bridge_moves(relators, k)
    h, rels, surface, gammas, gprimes = _assemble(G, k, plan, extra_free)
    yg_pi1 = GroupPresentation(h.names, tuple(rels) + (surface,))
    yg = ManifoldBlock(f"Y({G})", 0, 0, yg_pi1, Minimality("yes", "Luttinger surgery preserves minimality"), "1")
    torus = EmbeddedSurfaceData(1, 0, GroupPresentation(h.names, tuple(rels)), (h.c, h.d), surface)
    block = fiber_sum((yg, torus), _e1(catalog), label=f"X({G})", minimal=Minimality("yes", "Usher"), kodaira="1")
    return block, plan, h, gammas, gprimes


def _hom_to_G(block: ManifoldBlock, G: GroupPresentation, k: int, h: _Handles, plan: BridgePlan, extra_free: bool) -> GroupHom:
    images = [Word()] * block.pi1.rank
    for i in range(1, k + 1):
        images[h.kp + i - 1] = Word.gen(i - 1)
    if extra_free:
        for i, r in enumerate(plan.relators):
            images[h.kp + r.first - 1] = Word.gen(k + i)
    return GroupHom(block.pi1, G, tuple(images))


def _common_claims(block, G, h, gammas, gprimes, hom_target_rank_ok=True):
    claims = [
        claim("euler_signature", (block.e, block.sigma) == (12, -8), f"(e, sigma) = ({block.e}, {block.sigma})"),
        claim("c1sq_zero", block.c1sq == 0, f"c1^2 = {block.c1sq}"),
    ]
    b1G = abelian_invariants(G).free_rank
    claims.append(claim("b1_preserved", block.b1 == b1G, f"b1(G') = {block.b1}, b1(G) = {b1G}"))
    claims.append(claim("b_plus", block.b_plus == b1G + 1, f"b+ = {block.b_plus}"))
    M = exponent_matrix(block.pi1)
    orders = []
    for gp in gprimes:
        v = [gp.exponent_sum(g) for g in range(block.pi1.rank)]
        orders.append(element_order(M, v))
    claims.append(claim("gamma_prime_torsion", all(o is not None for o in orders), f"orders in H1: {orders}"))
    triv = [lattice_contains(M, [gm.exponent_sum(g) for g in range(block.pi1.rank)]) for gm in gammas]
    claims.append(claim("gamma_trivial_in_h1", all(triv), f"per relator: {triv}"))
    return claims, orders


def build_XG(G: GroupPresentation, catalog=None) -> ConstructionDossier:
    k = G.rank
    block, plan, h, gammas, gprimes = _build(G, k, "xG", False, catalog)
    claims = [claim("hypothesis_dual_finite_torsion", is_dual_finite_torsion(G), "exponent matrix rank equals the relator count")]
    more, orders = _common_claims(block, G, h, gammas, gprimes)
    claims += more
    hc = check_hom(_hom_to_G(block, G, k, h, plan, False), EnumBudget(max_cosets=20_000))
    claims.append(claim("surjection_to_G", hc.status != HomStatus.FAILED, f"{hc.status.value}: {hc.evidence}"))
    claims += standard_claims(block)
    simplified = tietze_simplify(block.pi1, commuting=True).presentation
    data = {
        "bridge_plan": plan.to_json(),
        "k_prime": plan.total_genus,
        "gamma_prime_orders": orders,
        "hom_status": hc.status.value,
        "simplified_pi1": str(simplified),
        "relation_convention": "[a_i^-1, d] = prod_j gamma'_j^(m_ij) with m_ij the exponent of x_i in l_j",
    }
    if block.b1 == 0:
        out = enumerate_cosets(simplified, EnumBudget(max_cosets=20_000))
        data["pi1_order"] = out.order
    return ConstructionDossier("xG", block, tuple(claims), data)


def build_XG_moregen(G: GroupPresentation, catalog=None) -> ConstructionDossier:
    """Variant for ``<x1..x_{k+m} | l1..lm>`` with relators over ``x1..xk`` only.

    Each relator's first bridge generator is identified with one extra free
    generator; its surgery coefficient is 0, which removes it from the
    dual-torus relation and leaves it free.
    """
    m = len(G.relators)
    k = G.rank - m
    if k < 0 or any(g >= k for r in G.relators for g in r.generators()):
        raise ValueError("relators must only involve the first (generators - relators) generators")
    if m == 0:
        from .freegroup import build_Xg

        return build_Xg(k, (1,) * k, (0,) * k, catalog)
    block, plan, h, gammas, gprimes = _build(G, k, "xG-moregen", True, catalog)
    claims, orders = _common_claims(block, G, h, gammas, gprimes)
    hom = _hom_to_G(block, G, k, h, plan, True)
    hc = check_hom(hom, EnumBudget(max_cosets=20_000))
    claims.append(claim("surjection_to_G", hc.status != HomStatus.FAILED, f"{hc.status.value}: {hc.evidence}"))
    hG, hX = abelian_invariants(G), block.h1
    claims.append(claim("h1_equals_G", hG == hX, f"H1 = {hX}, H1(G) = {hG}"))
    simplified = tietze_simplify(block.pi1, commuting=True).presentation
    data = {"bridge_plan": plan.to_json(), "k_prime": plan.total_genus, "simplified_pi1": str(simplified)}
    if hX.free_rank == 0:
        oX = enumerate_cosets(simplified, EnumBudget(max_cosets=20_000))
        oG = enumerate_cosets(G, EnumBudget(max_cosets=20_000))
        ok = oX.finite and oG.finite and oX.order == oG.order
        claims.append(claim("order_equals_G", ok, f"|pi1| = {oX.order}, |G| = {oG.order}"))
        data["pi1_order"] = oX.order
    else:
        claims.append(Claim("isomorphic_to_G", UNCHECKED, "infinite group; only H1 and the surjection are certified"))
    claims += standard_claims(block)
    return ConstructionDossier("xG-moregen", block, tuple(claims), data)
