import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sq_monomial
from swgamma.errors import ResourceCapError
from swgamma.polycohom import (GradedAlgebra, PolyF2, elementary_symmetric, mk_product, polynomial_ring,
                               product_line_expansion, sq_on_elementary_symmetric, steenrod_action,
                               sw_of_product_of_lines, sw_virtual, theta_action, theta_direct,
                               to_elementary_basis, TotalSWSeries)
from swgamma.polycohom import _add_dual, _dual_degree
from swgamma.steenrod import SteenrodElement, enumerate_milnor_basis, milnor_product, theta


def t(i, n):
    return PolyF2.var(i, n)


def prod_t(n):
    p = PolyF2.one(n)
    for i in range(n):
        p = p * t(i, n)
    return p


def poly(n, *monos):
    return PolyF2(n, [tuple(m) for m in monos])


# --- polynomials ----------------------------------------------------------------------

def test_f2_cancellation_and_degree():
    a = poly(2, (1, 0), (0, 1))
    assert a + a == PolyF2.zero(2)
    assert (a * a) == poly(2, (2, 0), (0, 2))
    assert a.is_homogeneous() and a.degree == 1
    assert not (a + PolyF2.one(2)).is_homogeneous()


# --- Steenrod action --------------------------------------------------------------------

def test_action_examples():
    assert steenrod_action(SteenrodElement.sq(1), t(0, 1)) == poly(1, (2,))
    assert steenrod_action(theta(3), prod_t(3)) == poly(3, (2, 1, 1), (1, 2, 1), (1, 1, 2))
    assert steenrod_action(SteenrodElement.milnor(0, 1), t(0, 1)) == poly(1, (4,))


@st.composite
def monomials(draw, n=3, max_e=5):
    return tuple(draw(st.integers(0, max_e)) for _ in range(n))


@settings(max_examples=60, deadline=None)
@given(monomials(), st.integers(0, 8))
def test_total_squares_match_cartan_formula(m, k):
    lhs = steenrod_action(SteenrodElement.sq(k), PolyF2.monomial(m))
    assert {tuple(x) for x in lhs.monomials()} == sq_monomial(k, m)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), monomials(3, 3))
def test_action_of_product_is_composition(d1, d2, m):
    p = PolyF2.monomial(m)
    for a in enumerate_milnor_basis(d1):
        for b in enumerate_milnor_basis(d2):
            lhs = steenrod_action(milnor_product(a, b), p)
            rhs = steenrod_action(SteenrodElement([a]), steenrod_action(SteenrodElement([b]), p))
            assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(monomials(3, 3), monomials(3, 3))
def test_coaction_is_multiplicative(m1, m2):
    ring = polynomial_ring(3)
    a, b = PolyF2.monomial(m1), PolyF2.monomial(m2)
    lhs = ring.coaction(a * b, 12)
    ca, cb = ring.coaction(a, 12), ring.coaction(b, 12)
    prod = set()
    for ma, ra in ca:
        for mb, rb in cb:
            r = _add_dual(ra, rb)
            if _dual_degree(r) <= 12:
                prod ^= {(ma + mb, r)}
    assert lhs == prod


# --- the key identity ---------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_three_way_identity(n):
    a = steenrod_action(theta(n), prod_t(n))
    assert a == theta_direct(n) == mk_product(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_fast_theta_matches_generic_action(n):
    assert theta_action(n, prod_t(n)) == steenrod_action(theta(n), prod_t(n))


def test_theta_direct_examples():
    assert theta_direct(1) == t(0, 1)
    assert theta_direct(3) == poly(3, (2, 1, 1), (1, 2, 1), (1, 1, 2))
    assert theta_direct(4, [0, 0, 0, 0], 1) == poly(1, (8,))


def test_mk_product_examples():
    assert mk_product(1) == t(0, 1)
    p3 = prod_t(3) * (t(0, 3) + t(1, 3) + t(2, 3))
    assert mk_product(3) == p3
    assert mk_product(5).degree == 16 and mk_product(5) == theta_direct(5)
    with pytest.raises(ResourceCapError):
        mk_product(8)


@pytest.mark.parametrize("n", range(2, 7))
def test_theta_direct_vanishes_on_substitution(n):
    p = theta_direct(n)
    for i, j in itertools.combinations(range(1, n), 2):
        images = [t(k, n) for k in range(n)]
        images[0] = t(i, n) + t(j, n)
        assert not p.substitute(images)


# --- Stiefel-Whitney series ---------------------------------------------------------------

def test_sw_virtual_examples():
    one = sw_virtual([t(0, 1)], [], 3)
    assert one.w(1) == t(0, 1) and not one.w(2)
    two = sw_virtual([t(0, 2) + t(1, 2), PolyF2.zero(2)], [t(0, 2), t(1, 2)], 4)
    assert not two.w(1) and two.w(2) == t(0, 2) * t(1, 2)
    three = sw_of_product_of_lines([t(i, 3) for i in range(3)], 4)
    assert not three.w(1) and not three.w(2) and not three.w(3)
    assert three.w(4) == theta_direct(3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.booleans(), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.lists(st.booleans(), min_size=3, max_size=3), max_size=4))
def test_line_recurrences_match_series_arithmetic(plus, minus):
    # the line-by-line fast path against dense products and the general inverse
    D = 6
    lines = lambda bits: [sum((t(k, 3) for k in range(3) if b[k]), PolyF2.zero(3)) for b in bits]
    one, zero = PolyF2.one(3), PolyF2.zero(3)
    line = lambda ell: TotalSWSeries([one, ell] + [zero] * (D - 1))
    dense = TotalSWSeries([one] + [zero] * D)
    for ell in lines(plus):
        dense = dense * line(ell)
    for ell in lines(minus):
        dense = dense * line(ell).inverse()
    fast = sw_virtual(lines(plus), lines(minus), D)
    assert all(fast.w(i) == dense.w(i) for i in range(D + 1))


def test_sw_virtual_errors():
    with pytest.raises(ValueError):
        sw_virtual([t(0, 1)], [], 0)
    with pytest.raises(ValueError):
        sw_virtual([t(0, 2) * t(1, 2)], [], 3)
    with pytest.raises(ResourceCapError):
        sw_virtual([t(0, 1)], [], 2).w(3)


def test_product_line_expansion():
    plus, minus = product_line_expansion(1)
    assert plus == [t(0, 1)] and minus == [PolyF2.zero(1)]
    even, odd = product_line_expansion(2)
    assert set(even) == {PolyF2.zero(2), t(0, 2) + t(1, 2)} and set(odd) == {t(0, 2), t(1, 2)}
    plus, minus = product_line_expansion(3)
    assert len(plus) == len(minus) == 4


@pytest.mark.parametrize("n", range(1, 7))
def test_vanishing_below_threshold(n):
    top = 1 << (n - 1)
    w = sw_of_product_of_lines([t(i, n) for i in range(n)], top)
    assert all(not w.w(i) for i in range(1, top))
    assert w.w(top) == theta_direct(n)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_vanishing_after_random_substitution(n, rnd):
    # distinct variables chosen inside a larger ring
    m = n + 2
    idx = rnd.sample(range(m), n)
    top = 1 << (n - 1)
    w = sw_of_product_of_lines([t(i, m) for i in idx], top)
    assert all(not w.w(i) for i in range(1, top))
    assert w.w(top) == theta_direct(n, idx, m)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.data())
def test_first_nonzero_index_is_power_of_two(k, data):
    n = 3
    lines = st.lists(st.integers(0, n - 1), unique=True).map(lambda s: PolyF2(n, [1 << (16 * i) for i in s]))
    plus = data.draw(st.lists(lines, min_size=k, max_size=k))
    minus = data.draw(st.lists(lines, min_size=k, max_size=k))
    i = sw_virtual(plus, minus, 16).first_nonzero()
    assert i is None or i & (i - 1) == 0


# --- Wu-formula helper ----------------------------------------------------------------------

def test_sq_on_elementary_symmetric():
    assert sq_on_elementary_symmetric(0, 2, 2) == elementary_symmetric(2, 2)
    s1 = sq_on_elementary_symmetric(1, 2, 2)
    assert s1 == poly(2, (2, 1), (1, 2))
    assert to_elementary_basis(s1) == PolyF2(2, [(1, 1)], (1, 2))
    assert sq_on_elementary_symmetric(2, 2, 2) == elementary_symmetric(2, 2) ** 2


@pytest.mark.parametrize("m", [2, 3, 4])
def test_wu_formula_on_w2(m):
    # Sq^1 e_2 = e_1 e_2 + e_3
    lhs = sq_on_elementary_symmetric(1, 2, m)
    rhs = elementary_symmetric(1, m) * elementary_symmetric(2, m) + (elementary_symmetric(3, m) if m >= 3
                                                                      else PolyF2.zero(m))
    assert lhs == rhs


def test_square_line_generator():
    # y of degree 2 with coaction y^(2^j) (x) xi_j^2 acts as the mod-2 reduction of a line of degree 2
    alg = GradedAlgebra(["y"], (2,), [("square_line", 0)])
    y = alg.gen(0)
    assert alg.steenrod_action(SteenrodElement.sq(2), y) == y * y
    assert not alg.steenrod_action(SteenrodElement.sq(1), y)
