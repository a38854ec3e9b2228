from math import gcd

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from surgcalc.constructions import bridge_moves, build_XG, build_Xpq_c1
from surgcalc.dsl import format_presentation, parse_presentation
from surgcalc.linalg import IntMatrix, abelian_invariants, invariant_factor_form, is_dual_finite_torsion, smith_normal_form
from surgcalc.manifold import EmbeddedSurfaceData, ManifoldBlock, TrivialInComplement, fiber_sum, rational_blowdown
from surgcalc.mcg import MonodromyWord, to_matrix
from surgcalc.presentation import GroupPresentation, exponent_matrix, free_product, quotient_by
from surgcalc.tietze import tietze_simplify
from surgcalc.words import EMPTY, Word, free_reduce


def letters(k, max_size=12):
    return st.lists(st.tuples(st.integers(0, k - 1), st.sampled_from((1, -1))), max_size=max_size)


def words(k, max_size=12):
    return letters(k, max_size).map(Word)


@st.composite
def presentations(draw, max_gens=3, max_rels=3, max_len=6):
    k = draw(st.integers(1, max_gens))
    rels = [w for w in draw(st.lists(words(k, max_len), max_size=max_rels)) if w]
    return GroupPresentation(tuple(f"x{i}" for i in range(1, k + 1)), tuple(rels))


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))
)


@given(letters(3, 20))
def test_free_reduce_idempotent(ls):
    once = free_reduce(ls)
    assert free_reduce(once) == once
    assert all(a[0] != b[0] or a[1] == b[1] for a, b in zip(once, once[1:]))


@given(words(3))
def test_inverse_cancels(w):
    assert w * w.inverse() == EMPTY and w.inverse() * w == EMPTY


@given(presentations(max_len=8))
def test_print_parse_round_trip(p):
    assert parse_presentation(format_presentation(p)) == p


@given(presentations(), st.lists(words(3, 6), max_size=2))
def test_quotient_matches_joined_matrix(p, extra):
    extra = [Word(tuple((g % p.rank, s) for g, s in w.letters)) for w in extra]
    m = exponent_matrix(quotient_by(p, extra))
    # the quotient's exponent matrix is the old one with the new columns appended
    cols = [[w.exponent_sum(i) for w in extra if w.cyclically_reduced()] for i in range(p.rank)]
    assert m == [row + col for row, col in zip(exponent_matrix(p), cols)]
    factors = list(smith_normal_form(m).invariant_factors) if m and m[0] else []
    direct = invariant_factor_form([f for f in factors if f != 1] + [0] * (p.rank - len(factors)))
    assert abelian_invariants(quotient_by(p, extra)) == direct


@given(presentations(max_rels=4))
@settings(suppress_health_check=[HealthCheck.too_slow])
def test_tietze_preserves_h1(p):
    assert abelian_invariants(tietze_simplify(p).presentation) == abelian_invariants(p)


@given(presentations(), presentations())
def test_free_product_block_diagonal(a, b):
    m = exponent_matrix(free_product(a, b))
    ma, mb = exponent_matrix(a), exponent_matrix(b)
    ra, ca = a.rank, len(a.relators)
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if i < ra and j < ca:
                assert v == ma[i][j]
            elif i >= ra and j >= ca:
                assert v == mb[i - ra][j - ca]
            else:
                assert v == 0


@given(matrices)
def test_smith_transforms(rows):
    a = IntMatrix.from_rows(rows)
    p = smith_normal_form(a, backend="python")
    c = smith_normal_form(a, backend="compiled")
    assert p.U @ a @ p.V == p.D
    assert abs(p.U.det()) == 1 and abs(p.V.det()) == 1
    assert p.invariant_factors == c.invariant_factors
    assert list(p.invariant_factors) == oracles.factors_from_divisors(oracles.determinantal_divisors(rows))


twist_words = st.lists(st.tuples(st.sampled_from("ab"), st.integers(-3, 3)), max_size=8).map(
    lambda ts: MonodromyWord(tuple((t, n) for t, n in ts if n))
)


@given(twist_words, twist_words)
def test_to_matrix_homomorphism(u, v):
    assert to_matrix(u * v) == to_matrix(u) @ to_matrix(v)
    assert (to_matrix(u) @ to_matrix(u.inverse())).is_identity()


@given(st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), st.lists(words(k, 8).filter(bool), min_size=1, max_size=3))))
def test_bridge_plans(case):
    k, rels = case
    plan = bridge_moves(rels, k)
    firsts = [r.first for r in plan.relators]
    for w, r in zip(rels, plan.relators):
        assert r.bridges % 2 == 1
        assert (r.intersections, r.bridges) == oracles.chord_bridge_count(w.letters)
    for g in range(k + 1, plan.total_genus + 1):
        assert plan.c(g) == oracles.c_value(g, firsts)
    assert plan.total_genus == k + sum(r.bridges for r in plan.relators)


@given(st.integers(1, 25), st.integers(1, 25))
def test_xpq_c1_claims(p, q):
    assume(gcd(p, 2 * q) == 1)
    d = build_Xpq_c1(p, q)
    assert d.passed
    assert d.data["pi1_order"] == p * q
    assert d.claim("abelianized_relators").status == "pass"


@given(presentations(max_gens=3, max_rels=2, max_len=6))
@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
def test_xg_keeps_b1(G):
    assume(G.relators and is_dual_finite_torsion(G))
    d = build_XG(G)
    assert d.block.b1 == abelian_invariants(G).free_rank
    assert d.claim("surjection_to_G").status == "pass"


blocks = st.tuples(st.integers(-40, 40), st.integers(1, 20)).map(lambda t: ManifoldBlock("B", 4 * t[1] - t[0], t[0], GroupPresentation()))


@given(blocks, blocks, st.integers(0, 3))
def test_fiber_sum_symmetric(x, y, genus):
    surf = EmbeddedSurfaceData(genus, 0, GroupPresentation(), (Word(),) * (2 * genus), Word())
    a = fiber_sum((x, surf), (y, surf))
    b = fiber_sum((y, surf), (x, surf))
    assert (a.e, a.sigma) == (b.e, b.sigma) == (x.e + y.e + 4 * genus - 4, x.sigma + y.sigma)


@given(st.integers(-60, 0), st.integers(1, 30), st.integers(2, 9))
def test_blowdown_keeps_chi_h(sigma, chi, p):
    b = ManifoldBlock("B", 4 * chi - sigma, sigma, GroupPresentation())
    out = rational_blowdown(b, p, TrivialInComplement("meridian bounds"))
    assert out.chi_h == b.chi_h
    # p - 1 negative spheres leave, so b- drops by p - 1
    assert out.c1sq - b.c1sq == p - 1
