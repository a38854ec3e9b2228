import dataclasses
import json

import pytest

import oracles
from surgcalc.constructions import (
    FAIL,
    PASS,
    RECIPES,
    UNCHECKED,
    bridge_moves,
    build_rbd_example,
    build_Xg,
    build_XG,
    build_XG_moregen,
    build_XplusG,
    build_Xpq_c1,
    build_Xpq_c23,
    build_Yg,
    intersection_count,
    solve_gluing,
)
from surgcalc.constructions import rbd
from surgcalc.constructions.dossier import Claim
from surgcalc.dsl import parse_presentation, parse_word
from surgcalc.linalg import abelian_invariants, invariant_factor_form
from surgcalc.presentation import cyclic_group
from surgcalc.words import Word

B = [f"b{i}" for i in range(1, 7)]


class TestBridges:
    def test_palindrome(self):
        w = parse_word("b1 b2 b3 b2 b1", B)
        assert intersection_count(w) == 2
        plan = bridge_moves([w], 3)
        r = plan.relators[0]
        assert (r.intersections, r.bridges, r.first, r.parity_fixed) == (2, 3, 4, True)
        assert plan.total_genus == 6

    def test_single_letter(self):
        plan = bridge_moves([parse_word("b1", B)], 1)
        assert (plan.relators[0].intersections, plan.relators[0].bridges) == (0, 1)

    def test_second_relator_starts_after_first(self):
        plan = bridge_moves([parse_word("b1^3", B), parse_word("b1 b2 b1 b2", B)], 2)
        first, second = plan.relators
        assert first.first == 3 and second.first == first.first + first.bridges
        assert plan.owner(second.first) == 1

    def test_c_values_match_oracle(self):
        plan = bridge_moves([parse_word("b1^3", B), parse_word("b1 b2 b1 b2", B)], 2)
        firsts = [r.first for r in plan.relators]
        for g in range(3, plan.total_genus + 1):
            assert plan.c(g) == oracles.c_value(g, firsts)
        with pytest.raises(ValueError):
            plan.c(1)

    def test_empty_relator_rejected(self):
        with pytest.raises(ValueError):
            bridge_moves([Word()], 1)


class TestFreeGroups:
    def test_yg(self):
        y = build_Yg(2, (1, 1), (1, 1))
        assert (y.block.e, y.block.sigma, y.block.b1) == (0, 0, 2)

    def test_trivial(self):
        d = build_Xg(2, (1, 1), (1, 1))
        assert d.passed and d.data["pi1_order"] == 1
        assert (d.block.e, d.block.sigma, d.block.c1sq) == (12, -8, 0)

    def test_free_rank_three(self):
        d = build_Xg(3, (1, 1, 1), (0, 0, 0))
        assert d.passed and d.claim("free_pi1").status == PASS
        assert d.block.b_plus == 4 and str(d.block.h1) == "Z + Z + Z"

    def test_mixed(self):
        d = build_Xg(2, (1, 1), (0, 3))
        assert d.block.h1 == invariant_factor_form([0, 3])

    def test_parameter_errors(self):
        with pytest.raises(ValueError):
            build_Xg(0, (), ())
        with pytest.raises(ValueError):
            build_Xg(2, (1,), (1, 1))
        with pytest.raises(ValueError):
            build_Xg(1, (-1,), (1,))


class TestXG:
    def test_z5(self):
        d = build_XG(cyclic_group(5))
        assert d.passed and d.claim("surjection_to_G").status == PASS
        assert d.data["k_prime"] == 6 and d.data["gamma_prime_orders"] == [5]

    def test_orders_divide_smith_factors(self):
        G = parse_presentation("<x, y | x^2, y^3>")
        d = build_XG(G)
        assert d.passed and d.block.b1 == abelian_invariants(G).free_rank == 0
        assert all(6 % o == 0 for o in d.data["gamma_prime_orders"])

    def test_hypothesis_failure_reported(self):
        d = build_XG(parse_presentation("<a, b | [a, b]>"))
        assert d.claim("hypothesis_dual_finite_torsion").status == FAIL and not d.passed

    def test_moregen(self):
        d = build_XG_moregen(parse_presentation("<x, y | x^3>"))
        assert d.block.h1 == invariant_factor_form([0, 3])
        assert d.claim("h1_equals_G").status == PASS
        assert d.claim("isomorphic_to_G").status == UNCHECKED

    def test_moregen_free(self):
        d = build_XG_moregen(parse_presentation("<x, y | >"))
        assert d.passed and d.block.b1 == 2

    def test_moregen_shape(self):
        with pytest.raises(ValueError):
            build_XG_moregen(parse_presentation("<x, y | y^3>"))

    def test_plus(self):
        for G in (cyclic_group(5), parse_presentation("<x, y | >"), parse_presentation("<x, y | x^2, y^3>")):
            d = build_XplusG(G)
            assert d.claim("c1sq_chi_h").status == PASS
            assert d.block.c1sq % 8 == 7
            assert d.block.b1 == abelian_invariants(G).free_rank

    def test_plus_free_k_prime(self):
        d = build_XplusG(parse_presentation("<x, y | >"))
        assert d.data["k_prime"] == 4 and d.claim("free_pi1").status == PASS


class TestXpq:
    def test_gluing(self):
        a, d = solve_gluing(3, 1)
        assert (a, d) == (-1, 0)
        with pytest.raises(ValueError):
            solve_gluing(2, 3)
        with pytest.raises(ValueError):
            solve_gluing(0, 1)

    def test_c1(self):
        d = build_Xpq_c1(3, 1)
        assert d.passed and d.data["pi1_order"] == 3
        assert (d.block.e, d.block.sigma, d.block.c1sq) == (11, -7, 1)

    def test_c23(self):
        d = build_Xpq_c23(2, 2, 3)
        assert d.passed and d.data["pi1_order"] == 6 and d.block.c1sq == 2
        d = build_Xpq_c23(3, 1, 1)
        assert d.passed and d.data["pi1_order"] == 1 and d.block.c1sq == 3

    def test_torus_z(self):
        d = build_Xpq_c23(2, 4, mode="TorusZ")
        assert d.passed and d.block.h1 == invariant_factor_form([0, 4]) and d.block.b_plus == 2

    def test_c23_errors(self):
        with pytest.raises(ValueError):
            build_Xpq_c23(4, 1, 1)
        with pytest.raises(ValueError):
            build_Xpq_c23(2, 1, 0)
        with pytest.raises(ValueError):
            build_Xpq_c23(2, 1, 1, mode="Sphere")


class TestRationalBlowdown:
    @pytest.mark.parametrize("name", list(RECIPES))
    def test_recipe(self, name):
        d = build_rbd_example(name)
        assert d.passed
        e, sigma, c1sq, b_plus, order = RECIPES[name].expected
        assert (d.block.e, d.block.sigma, d.block.c1sq, d.block.b_plus, d.data["pi1_order"]) == (e, sigma, c1sq, b_plus, order)

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown recipe"):
            build_rbd_example("z7_c9")

    def test_infeasible_count(self):
        base = RECIPES["z2_c4_b3"]
        too_many = dataclasses.replace(base, copies=1, groups=base.groups * 4)
        with pytest.raises(ValueError):
            rbd._replay(too_many)


class TestDossier:
    def test_json(self):
        j = build_rbd_example("z5_c2").to_json()
        assert json.loads(json.dumps(j)) == j
        assert (j["e"], j["sigma"], j["c1sq"], j["pi1_order"], j["status"]) == (10, -6, 2, 5, "pass")

    def test_missing_claim(self):
        with pytest.raises(KeyError):
            build_Xpq_c1(1, 1).claim("nonsense")

    def test_bad_status(self):
        with pytest.raises(ValueError):
            Claim("x", "maybe")


ALL = [
    lambda: build_Xg(2, (1, 1), (1, 1)),
    lambda: build_Xg(2, (1, 1), (0, 3)),
    lambda: build_XG(cyclic_group(5)),
    lambda: build_XG_moregen(parse_presentation("<x, y | x^3>")),
    lambda: build_XplusG(cyclic_group(3)),
    lambda: build_Xpq_c1(5, 2),
    lambda: build_Xpq_c23(2, 3, 5),
    lambda: build_Xpq_c23(3, 4, 7),
    lambda: build_Xpq_c23(2, 0, mode="TorusZ"),
] + [lambda n=n: build_rbd_example(n) for n in RECIPES]


@pytest.mark.parametrize("make", ALL)
def test_b_plus_one_obeys_geography(make):
    d = make()
    # the constraints only apply to manifolds known to be minimal
    if d.block.b_plus == 1 and d.block.minimal.state == "yes":
        assert d.claim("geography_b_plus_1").status == PASS
    else:
        with pytest.raises(KeyError):
            d.claim("geography_b_plus_1")
    assert d.claim("betti_consistent").status == PASS
