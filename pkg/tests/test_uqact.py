from itertools import combinations_with_replacement

import pytest

from qball.algebras import pol_algebra, star_poly
from qball.ncpoly import NCPoly
from qball.scalars import ONE, qpow, vpow
from qball.uqact import (UqGen, act, act_expr, antipode, boundary_tables,
                         chevalley_gens, h0_grade, module_algebra_residuals,
                         operator_relation_residuals, pol_tables, rect_tables,
                         square_tables, star_compat_residuals,
                         star_of_antipode, ustar, weight, word_weight)


def _domain_words(t, maxdeg=2):
    zc = [t.alg.gen_code("z", a, b)
          for a in range(1, t.n + 1) for b in range(1, t.n + 1)]
    sc = [t.alg.gen_code("zs", a, b)
          for a in range(1, t.n + 1) for b in range(1, t.n + 1)]
    words = []
    for j in range(maxdeg + 1):
        for k in range(maxdeg + 1):
            for wz in combinations_with_replacement(zc, j):
                for ws in combinations_with_replacement(sc, k):
                    words.append(tuple(wz) + tuple(ws))
    return words


@pytest.mark.parametrize("n", [1, 2])
def test_prop_action_values(n):
    t = pol_tables(n)
    alg = t.alg
    znn = alg.gen("z", n, n)
    assert act(t, UqGen("F", n), znn) == alg.scalar(vpow(1))
    assert act(t, UqGen("E", n), znn) == (znn * znn).scale(-vpow(1))
    assert act(t, UqGen("K", n), znn) == znn.scale(qpow(2))
    # Leibniz: E_n (z_n^n)^2 = -q^{1/2}(1+q^2)(z_n^n)^3
    expect = (znn * znn * znn).scale(-vpow(1) * (ONE + qpow(2)))
    assert act(t, UqGen("E", n), znn * znn) == expect


def test_rectangular_action_value():
    t = rect_tables(1)
    assert act(t, UqGen("F", 1), t.alg.gen("t", 1, 1)) == \
        t.alg.gen("t", 1, 2).scale(vpow(1))


def test_action_annihilates_constants():
    t = pol_tables(2)
    one = t.alg.one()
    assert act(t, UqGen("E", 1), one).is_zero()
    assert act(t, UqGen("F", 3), one).is_zero()
    assert act(t, UqGen("K", 2), one) == one


@pytest.mark.parametrize("mk", [pol_tables, boundary_tables, rect_tables,
                                square_tables])
@pytest.mark.parametrize("n", [1, 2])
def test_tables_respect_defining_relations(mk, n):
    assert module_algebra_residuals(mk(n)) == []


def test_operator_relations_on_bidegree_two_box():
    t = pol_tables(2)
    res = operator_relation_residuals(t, _domain_words(t))
    assert res == []


def test_star_compatibility_both_paths():
    t = pol_tables(2)
    words = _domain_words(t, 1)
    assert star_compat_residuals(t, words) == []


def test_star_compat_explicit_example():
    # (E_n z_n^n)* computed directly vs (S(E_n))* acting on (z_n^n)*
    n = 2
    t = pol_tables(n)
    znn = t.alg.gen("z", n, n)
    lhs = star_poly(act(t, UqGen("E", n), znn))
    rhs = act_expr(t, star_of_antipode(UqGen("E", n), n), star_poly(znn))
    assert lhs == rhs


def test_weights_and_h0():
    t1 = pol_tables(1)
    z = t1.alg.gen("z", 1, 1)
    assert weight(t1, z) == (2,)
    assert h0_grade(t1, z) == 1
    t2 = pol_tables(2)
    z11 = t2.alg.gen("z", 1, 1)
    assert weight(t2, z11) == (1, 0, 1)
    assert h0_grade(t2, z11) == 1
    assert weight(t2, t2.alg.one()) == (0, 0, 0)
    assert h0_grade(t2, t2.alg.one()) == 0


def test_weights_additive_under_multiplication():
    t = pol_tables(2)
    alg = t.alg
    for w1 in [(0,), (3,), (0, 5)]:
        for w2 in [(1,), (2, 6)]:
            lam1 = word_weight(t, w1)
            lam2 = word_weight(t, w2)
            prod = NCPoly(alg, {w1: ONE}) * NCPoly(alg, {w2: ONE})
            lam = weight(t, prod)
            assert lam == tuple(x + y for x, y in zip(lam1, lam2))


def test_weight_requires_homogeneity():
    t = pol_tables(1)
    p = t.alg.one() + t.alg.gen("z", 1, 1)
    with pytest.raises(ValueError):
        weight(t, p)


def test_ustar_values():
    assert ustar(UqGen("K", 1), 2) == [(ONE, (UqGen("K", 1),))]
    assert ustar(UqGen("E", 2), 2) == [(-ONE, (UqGen("K", 2), UqGen("F", 2)))]
    assert ustar(UqGen("E", 1), 2) == [(ONE, (UqGen("K", 1), UqGen("F", 1)))]
    assert antipode(UqGen("E", 1)) == [(-ONE, (UqGen("Kinv", 1), UqGen("E", 1)))]


def test_counit_on_chevalley_generators():
    from qball.uqact import counit
    for g in chevalley_gens(2):
        assert counit(g) == (ONE if g.kind in ("K", "Kinv") else ONE - ONE)
