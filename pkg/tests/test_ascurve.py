import random

import pytest
from hypothesis import given, settings, strategies as st

from defring.addpoly import AdditivePolynomial, root_space
from defring.ascurve import (ASCurve, CurveAutomorphism, CurveError, GroupTable, ad_f, as_solve,
                             automorphism_group, basis_series, curve_tuple, group_representation,
                             local_action, local_expansion, p_f)
from defring.ffield import Matrix, frobenius, make_field
from defring.pseries import compose, is_compatible, lift_automorphism, order_function
from defring.semigroup import artin_schreier_semigroup, jump_report


@pytest.fixture(scope="module")
def G31():
    return automorphism_group(ASCurve(3, 1))


@pytest.fixture(scope="module")
def G32():
    return automorphism_group(ASCurve(3, 2))


@pytest.mark.parametrize("p,s", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)])
def test_ad_f_of_monomial_curve(p, s):
    C = ASCurve(p, s, ambient=make_field(p, 2 * s))
    assert ad_f(C) == AdditivePolynomial(C.ambient, {0: 1, 2 * s: 1})


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.integers(0, 3 ** 8 - 1))
def test_ad_f_symmetry_for_random_coefficients(idx):
    K = make_field(3, 8)
    C = ASCurve(3, 2, (K.from_index(idx),), K)
    A = ad_f(C)
    for lam in (1, 2):
        assert A.coeff(2 + lam) == frobenius(A.coeff(2 - lam), lam)
    assert A.coeff(4) == K.one()


def test_curve_argument_checks():
    with pytest.raises(CurveError):
        ASCurve(3, 2, (1, 2))
    with pytest.raises(CurveError):
        ASCurve(3, 0)
    with pytest.raises(CurveError):
        ASCurve(3, 1, ambient=make_field(5, 2))


def test_shift_polynomial_defining_property():
    K = make_field(3, 8)
    rng = random.Random(21)
    C = ASCurve(3, 2, (K.random(rng),), K)
    roots = root_space(ad_f(C), K)
    for y in list(roots.span())[:20]:
        Q = p_f(C, y)
        assert Q.degree() <= C.q
        assert (Q.frobenius() - Q - C.shift_difference(y)).degree() <= 0
    with pytest.raises(CurveError):
        p_f(C, K.gen())


def test_as_solve():
    K = make_field(3, 4)
    rng = random.Random(22)
    for _ in range(20):
        w = K.random(rng)
        rhs = w ** 3 - w
        v = as_solve(rhs)
        assert v ** 3 - v == rhs
        assert v.coeffs[0] == 0


def _points(C, count, rng):
    K = C.ambient
    out = []
    while len(out) < count:
        x = K.random(rng)
        try:
            w = as_solve(C.f(x))
        except CurveError:
            continue
        out.append((x, w))
    return out


def test_automorphisms_map_curve_points_to_curve_points(G31):
    C = G31.curve
    rng = random.Random(23)
    pts = _points(C, 10, rng)
    for e in G31.elements:
        for x, w in pts:
            x2, w2 = x + e.y, w + e.w_shift(x)
            assert w2 ** C.p - w2 == C.f(x2)


def test_group_structure_31(G31):
    assert G31.order == 27
    Z = G31.center()
    assert len(Z) == 3
    assert G31.commutator_subgroup() == sorted(Z)
    assert G31.quotient_is_elementary_abelian(Z, 3)
    assert not G31.is_abelian()
    assert G31.is_associative()
    for g in range(G31.order):
        assert G31.power(g, 3) == G31.identity


def test_group_table_matches_composition(G31):
    for g in range(0, G31.order, 2):
        for h in range(0, G31.order, 3):
            y, H = G31.elements[g].then(G31.elements[h])
            k = G31.mul(g, h)
            assert G31.elements[k].y == y
            assert G31.elements[k].w_shift == H


def test_group_structure_32(G32):
    assert G32.order == 3 ** 5
    Z = G32.center()
    assert len(Z) == 3
    assert G32.commutator_subgroup() == sorted(Z)
    assert G32.is_associative(samples=2000, rng=random.Random(24))


def test_elementary_abelian_table():
    G = GroupTable.elementary_abelian(3, 2)
    assert G.order == 9 and G.is_abelian() and G.is_associative()
    assert len(G.generators()) == 2


def test_representation_is_faithful_homomorphism(G31):
    rho = group_representation(G31)
    K = G31.curve.ambient
    for M in rho:
        assert M.is_lower_unitriangular() and M.rows == 3
    for a in range(G31.order):
        for b in range(G31.order):
            assert rho[G31.mul(a, b)] == rho[a] @ rho[b]
    I = Matrix.identity(K, 3)
    assert [g for g in range(G31.order) if rho[g] == I] == [G31.identity]


def test_representation_homomorphism_sampled_32(G32):
    rng = random.Random(25)
    rho = group_representation(G32)
    assert rho[0].rows == 5
    for _ in range(300):
        a, b = rng.randrange(G32.order), rng.randrange(G32.order)
        assert rho[G32.mul(a, b)] == rho[a] @ rho[b]


@pytest.mark.parametrize("p,s", [(3, 1), (3, 2), (5, 1)])
def test_local_expansion_satisfies_curve_equation(p, s):
    K = make_field(p, 4 * s)
    C = ASCurve(p, s, tuple(K.gen() for _ in range(s - 1)), K)
    X, W = local_expansion(C, 30)
    lhs = W ** p - W
    rhs = X.scale(0)
    for k, c in C.f.terms.items():
        rhs = rhs + (X ** k).scale(c)
    assert lhs.agrees(rhs)
    assert X.valuation() == -p and W.valuation() == -C.m


def test_local_orders_31(G31):
    C = G31.curve
    y = G31.roots.vectors[0]
    assert order_function(local_action(C, G31.elements[G31.index_of(y, 0)])) == 2
    assert order_function(local_action(C, G31.elements[G31.index_of(C.ambient.zero(), 1)])) == 5
    allowed = set(jump_report(artin_schreier_semigroup(3, 1), 3).order_values())
    for e in G31.elements[1:]:
        assert order_function(local_action(C, e, 16)) in allowed


def test_local_orders_32(G32):
    C = G32.curve
    z = G32.elements[G32.index_of(C.ambient.zero(), 2)]
    assert order_function(local_action(C, z)) == 11


def test_local_action_composition_law(G31):
    C = G31.curve
    prec = 20
    sig = {g: local_action(C, G31.elements[g], prec) for g in range(G31.order)}
    rng = random.Random(26)
    for _ in range(12):
        g, h = rng.randrange(27), rng.randrange(27)
        assert compose(sig[g].image, sig[h].image).agrees(sig[G31.mul(g, h)].image)


def test_curve_tuple_is_compatible_and_lifts_to_local_action(G31):
    T = curve_tuple(G31, 30, G31.generators())
    for g in G31.generators():
        assert is_compatible(T, g)
        assert lift_automorphism(T, g).agrees(local_action(G31.curve, G31.elements[g], 20))


def test_explicit_automorphism_check_rejects_wrong_shift(G31):
    e = G31.elements[3]
    with pytest.raises(CurveError):
        CurveAutomorphism(e.curve, e.y, 0, e.w_shift + e.w_shift)


def test_basis_series_pole_orders():
    C = ASCurve(3, 2)
    F = basis_series(C, 20)
    assert [f.valuation() for f in F] == [0, -3, -6, -9, -10]


def test_group_needs_a_splitting_field():
    with pytest.raises(CurveError):
        automorphism_group(ASCurve(3, 1, ambient=make_field(3, 2)))
